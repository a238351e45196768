import logging
from logging.handlers import RotatingFileHandler
import sys


def setup_logging(level: str = "WARNING", log_file: str | None = None) -> logging.Logger:
    """Configura el sistema de logging para la CLI.

    Los diagnósticos van siempre a stderr; stdout queda reservado para los datos.

    Args:
        level: Nivel mínimo de los mensajes ("DEBUG", "INFO", ...).
        log_file: Ruta opcional de un archivo de log con rotación.

    Returns:
        El logger raíz ya configurado.
    """
    # Crear formateador para incluir el nombre del logger
    formatter = logging.Formatter(
        "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
    )

    # Configurar handler para consola (stderr)
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setFormatter(formatter)
    console_handler.setLevel(level)

    # Obtener el logger raíz y limpiar handlers existentes para evitar duplicados
    logger = logging.getLogger()
    if logger.hasHandlers():
        logger.handlers.clear()

    logger.setLevel(level)
    logger.addHandler(console_handler)

    if log_file:
        # Configurar handler para archivo con rotación
        file_handler = RotatingFileHandler(
            log_file,
            maxBytes=1_000_000,  # 1 MB por archivo
            backupCount=5,  # Mantener hasta 5 archivos de respaldo
        )
        file_handler.setFormatter(formatter)
        file_handler.setLevel(level)
        logger.addHandler(file_handler)

    logger.debug("Sistema de logging configurado (nivel %s)", level)
    return logger
