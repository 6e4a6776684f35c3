"""solgeo: Riemannian geometry of Sol^4_0 and a hypersurface analyzer."""

__version__ = "0.1.0"
