"""Comandos de la CLI de chsh-meter; `app.register_commands` los añade al grupo raíz."""

from .analyze import analyze
from .simulate import simulate
from .sweep import sweep
from .verify import verify

__all__ = ["analyze", "simulate", "sweep", "verify"]
