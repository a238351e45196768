"""Configuración de chsh-meter."""

__version__ = "0.1.0"
