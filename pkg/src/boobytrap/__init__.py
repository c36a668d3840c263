"""Booby trap games on measured networks: exact values, bounds, strategies and checks."""

from .netmodel import Network, Point, Subnetwork, load_network, parse_network

__version__ = "0.1.0"

__all__ = ["Network", "Point", "Subnetwork", "load_network", "parse_network", "__version__"]
