"""surfcurve: shortest closed curves of prescribed topological type on surfaces."""

__version__ = "0.1.0"
