"""HTTP facade exposing the pipeline and editing sessions."""

from .app import create_app

__all__ = ["create_app"]
