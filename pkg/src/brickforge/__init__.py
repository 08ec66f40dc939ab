"""Matching covered graph toolkit: tight cuts, removable doubletons, near-bipartite bricks."""

__version__ = "0.1.0"
