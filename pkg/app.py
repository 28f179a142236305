import sys

from config.settings_loader import load_settings
from src.cli.dispatcher import main as cli_main
from src.infrastructure.logging.logger_setup import setup_global_exception_handler, setup_logger


def main():
    settings = load_settings()
    logger = setup_logger(settings.log_dir, settings.log_level)
    setup_global_exception_handler()
    logger.info("Ergodic lab başlatılıyor...")

    sys.exit(cli_main(sys.argv[1:], settings=settings))


if __name__ == "__main__":
    main()
