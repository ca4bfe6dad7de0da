from .app import app
from .handlers import HANDLERS

__all__ = ["app", "HANDLERS"]
