"""CLI for PSO-JobShop"""

from .main import cli

__all__ = ['cli']
