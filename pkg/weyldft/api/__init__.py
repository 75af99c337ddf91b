"""
HTTP API

FastAPI router exposing root data, grids, counts, transforms and verification.
"""

from .routes import router

__all__ = ["router"]
