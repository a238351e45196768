"""Servicios de cálculo de chsh-meter.

Los módulos se importan de forma explícita (`from services.chsh_engine import ...`)
para que los modelos puedan depender de `services.exceptions` sin ciclos.
"""
