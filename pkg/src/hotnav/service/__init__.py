from .app import create_app, derive_title

__all__ = ["create_app", "derive_title"]
