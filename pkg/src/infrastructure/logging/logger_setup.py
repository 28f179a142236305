# src/infrastructure/logging/logger_setup.py

import logging
import os
import sys
from logging.handlers import RotatingFileHandler


def setup_logger(log_dir: str = "logs", level: str = "INFO", log_to_file: bool = True):
    """
    Sistemin genel loglama konfigürasyonunu yapar.
    Konsol (stderr) ve 'ergodic_lab.log' dosyasına eşzamanlı yazar.
    stdout yalnızca sonuç çıktısı için boş bırakılır.
    """
    logger = logging.getLogger()
    logger.setLevel(getattr(logging, level.upper(), logging.INFO))

    formatter = logging.Formatter(
        '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    )

    # Varsa eski handler'ları temizle (Çift yazmayı engeller)
    if logger.hasHandlers():
        logger.handlers.clear()

    if log_to_file:
        # RotatingFileHandler - 5MB, 5 yedek
        os.makedirs(log_dir, exist_ok=True)
        log_file = os.path.join(log_dir, "ergodic_lab.log")
        file_handler = RotatingFileHandler(
            log_file, maxBytes=5 * 1024 * 1024, backupCount=5, encoding="utf-8"
        )
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(logging.WARNING)
    console_handler.setFormatter(formatter)
    logger.addHandler(console_handler)

    return logger


def handle_exception(exc_type, exc_value, exc_traceback):
    """
    Yakalanmayan hataların sessizce çökmesi yerine CRITICAL seviyede loglanmasını
    sağlayan global hook.
    """
    if issubclass(exc_type, KeyboardInterrupt):
        sys.__excepthook__(exc_type, exc_value, exc_traceback)
        return

    logger = logging.getLogger("UnhandledException")
    logger.critical("Kritik Hata (Unhandled exception)", exc_info=(exc_type, exc_value, exc_traceback))


def setup_global_exception_handler():
    sys.excepthook = handle_exception
