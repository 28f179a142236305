# src/domain/ports/services/i_result_writer.py

from __future__ import annotations

from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, Mapping, Optional, Sequence


class IResultWriter(ABC):
    """
    Deney çıktılarını (tablolar ve rapor zarfları) kalıcı hale getiren arayüz.

        - CsvJsonResultWriter → dosya sistemi               (gerçek senaryo)
        - FakeResultWriter    → bellek içi, unit test        (test senaryosu)

    Uygulamalar yazımı atomik yapmalıdır: yarım kalmış dosya hiç görünmemelidir.
    """

    @abstractmethod
    def write_table(
        self,
        path: Path,
        columns: Sequence[str],
        rows: Sequence[Sequence[Any]],
        metadata: Optional[Mapping[str, Any]] = None,
    ) -> Path:
        """
        Satır tablosunu yazar.

        Parametreler:
            columns  : başlık satırı
            rows     : her biri len(columns) uzunluğunda
            metadata : tablonun önüne `# key=value` satırları olarak yazılır

        Dönüş:
            Yazılan dosyanın yolu.
        """
        raise NotImplementedError

    @abstractmethod
    def write_report(self, path: Path, payload: Mapping[str, Any]) -> Path:
        """
        JSON rapor zarfını yazar (komut, parametreler, seed, sürüm, sonuçlar).
        """
        raise NotImplementedError
