# src/infrastructure/reporting/csv_json_result_writer.py

from __future__ import annotations

import io
import json
import logging
import math
import os
import tempfile
from enum import Enum
from pathlib import Path
from typing import Any, Mapping, Optional, Sequence

import numpy as np
import pandas as pd

from src.domain.models.errors import ArgumentError
from src.domain.ports.services.i_result_writer import IResultWriter
from src.infrastructure.config.lab_config import ARTIFACT_VERSION

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.17g"


def to_jsonable(value: Any) -> Any:
    """numpy skalerleri/dizileri ve sonlu olmayan sayıları JSON'a uygun hale getirir."""
    if isinstance(value, Mapping):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return [to_jsonable(v) for v in value.tolist()]
    if isinstance(value, np.generic):
        return to_jsonable(value.item())
    if isinstance(value, float) and not math.isfinite(value):
        return str(value)
    if isinstance(value, Enum):
        return value.value
    return value


def _atomic_write(path: Path, text: str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", suffix=".tmp", dir=str(path.parent))
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.remove(tmp)
        raise
    return path


class CsvJsonResultWriter(IResultWriter):
    """
    CSV tabloları ve JSON rapor zarfları.

    CSV: önce `# key=value` satırları (sürüm + yankılanan yapılandırma), sonra pandas ile
    17 anlamlı basamaklı tablo. Aynı girdi her zaman aynı baytları üretir.
    """

    def write_table(
        self,
        path: Path,
        columns: Sequence[str],
        rows: Sequence[Sequence[Any]],
        metadata: Optional[Mapping[str, Any]] = None,
    ) -> Path:
        for i, row in enumerate(rows):
            if len(row) != len(columns):
                raise ArgumentError(f"Satır {i}: {len(row)} değer, {len(columns)} sütun bekleniyordu.")
        header = {"version": ARTIFACT_VERSION}
        header.update(metadata or {})
        buffer = io.StringIO()
        for key, value in header.items():
            rendered = value if isinstance(value, str) else json.dumps(to_jsonable(value), sort_keys=True)
            buffer.write(f"# {key}={rendered}\n")
        frame = pd.DataFrame([list(r) for r in rows], columns=list(columns))
        frame.to_csv(buffer, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
        written = _atomic_write(Path(path), buffer.getvalue())
        logger.info("Tablo yazıldı: %s (%d satır)", written, len(rows))
        return written

    def write_report(self, path: Path, payload: Mapping[str, Any]) -> Path:
        envelope = {"version": ARTIFACT_VERSION}
        envelope.update(to_jsonable(payload))
        text = json.dumps(envelope, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
        written = _atomic_write(Path(path), text)
        logger.info("Rapor yazıldı: %s", written)
        return written
