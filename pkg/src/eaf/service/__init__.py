"""HTTP surface: FastAPI app factory and pydantic models."""

from .app import app, create_app

__all__ = ["app", "create_app"]
