# src/cli/dispatcher.py

from __future__ import annotations

import logging
import sys
from pathlib import Path
from typing import Optional, Sequence, TextIO

from config.settings_loader import load_settings
from src.application.container import AppContainer
from src.cli.commands import HANDLERS
from src.cli.commands.base import CommandResult
from src.cli.config_parser import RunConfig, parse_config
from src.infrastructure.config.lab_config import LabSettings
from src.domain.models.errors import (
    ArgumentError,
    CalibrationError,
    ConvergenceError,
    DivergenceError,
    EvaluationError,
    ExperimentError,
    NumericalError,
    RegimeError,
    UnsupportedMethodError,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_USAGE = 2

USAGE_ERRORS = (ArgumentError, UnsupportedMethodError)
RUNTIME_ERRORS = (
    RegimeError,
    CalibrationError,
    ExperimentError,
    ConvergenceError,
    NumericalError,
    EvaluationError,
    DivergenceError,
)


def emit(config: RunConfig, result: CommandResult, container: AppContainer) -> Optional[Path]:
    """Sonucu --out yoluna istenen formatta yazar; yol yoksa hiçbir şey yazmaz."""
    if config.output_path is None:
        return None
    path = Path(config.output_path)
    if config.format == "json":
        payload = {
            "command": config.name,
            "config": config.echo,
            "result": {**result.summary, "rows": result.table_rows()},
        }
        return container.writer.write_report(path, payload)
    metadata = {"command": config.name, "config": config.echo}
    return container.writer.write_table(path, result.columns, result.rows, metadata)


def dispatch(
    config: RunConfig,
    container: Optional[AppContainer] = None,
    stdout: Optional[TextIO] = None,
    stderr: Optional[TextIO] = None,
) -> int:
    """
    Komutu çalıştırır ve çıkış kodunu döndürür.

    0 başarı, 1 rejim / kalibrasyon / deney hataları, 2 kullanım hataları.
    """
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        container = container or AppContainer(threads=config.threads)
        handler = HANDLERS.get((config.command, config.action))
        if handler is None:
            raise ArgumentError(f"Bilinmeyen komut: {config.name}")
        logger.info("Komut başlıyor: %s (seed=%d)", config.name, config.seed)
        result = handler(config, container)
        written = emit(config, result, container)
    except USAGE_ERRORS as exc:
        logger.error("Kullanım hatası (%s): %s", config.name, exc)
        print(f"hata: {exc}", file=stderr)
        return EXIT_USAGE
    except RUNTIME_ERRORS as exc:
        logger.error("Çalışma hatası (%s): %s", config.name, exc)
        print(f"hata: {exc}", file=stderr)
        diagnostics = getattr(exc, "diagnostics", None)
        if diagnostics is not None:
            print(diagnostics.to_string(index=False), file=stderr)
        return EXIT_RUNTIME

    if result.text:
        print(result.text, file=stdout)
    if written is not None:
        logger.info("Sonuç yazıldı: %s", written)
    return EXIT_OK


def main(
    argv: Optional[Sequence[str]] = None,
    settings: Optional[LabSettings] = None,
    container: Optional[AppContainer] = None,
) -> int:
    """argv -> çıkış kodu. Config hataları 2 ile döner."""
    args = list(sys.argv[1:] if argv is None else argv)
    try:
        if settings is None:
            settings = container.settings if container is not None else load_settings()
        config = parse_config(args, settings)
    except ArgumentError as exc:
        print(f"hata: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if container is None:
        container = AppContainer(settings=settings, threads=config.threads)
    return dispatch(config, container)
