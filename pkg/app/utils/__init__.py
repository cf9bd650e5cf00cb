"""Utility functions"""
from app.utils.parallel import map_nodes

__all__ = ["map_nodes"]
