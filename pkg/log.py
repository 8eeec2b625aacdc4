import logging
import sys
from logging.handlers import RotatingFileHandler

LOG_FORMAT = "%(asctime)s -%(funcName)s - %(levelname)s - %(message)s"
LOGGER_NAMES = ("algebra_logger", "cli_logger")


def setup_logger(name, log_file, level=logging.INFO, max_bytes=10 * 1024 * 1024, backup_count=1):
    """
    Nastaví pojmenovaný logger.

    Parametry:
        name (str): jméno loggeru (`algebra_logger` nebo `cli_logger`).
        log_file (str | None): cesta k souboru s rotací; prázdná hodnota znamená stderr.
        level (int): úroveň logování.

    Opakované volání nahradí dříve připojený handler, takže se zprávy nezdvojují.
    """
    if log_file:
        handler = RotatingFileHandler(
            log_file, maxBytes=max_bytes, backupCount=backup_count, encoding="utf-8"
        )
    else:
        handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))

    logger = logging.getLogger(name)
    logger.setLevel(level)
    for old in list(logger.handlers):
        logger.removeHandler(old)
        old.close()
    logger.addHandler(handler)
    logger.propagate = False
    return logger


def setup_loggers(env_config):
    """Připojí handlery oběma loggerům aplikace podle `ENV_CONFIG`."""
    level = logging.getLevelName(str(env_config["log_level"]).upper())
    if not isinstance(level, int):
        level = logging.INFO
    return [setup_logger(name, env_config["log_file"], level) for name in LOGGER_NAMES]
