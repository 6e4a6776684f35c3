"""Entry point for running solgeo as a module."""

from .interface.cli import main

if __name__ == "__main__":
    main()
