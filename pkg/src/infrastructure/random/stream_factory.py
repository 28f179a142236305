# src/infrastructure/random/stream_factory.py

from __future__ import annotations

import numpy as np

from src.domain.models.errors import ArgumentError

# Kanal numaraları: aynı (seed, replika) için birbirinden bağımsız alt akışlar
CHANNEL_NOISE = 0
CHANNEL_INITIAL = 1
CHANNEL_AUX = 2

_MASK64 = (1 << 64) - 1


def normalize_seed(seed: int) -> int:
    """Negatif ya da 64 biti aşan seed değerlerini [0, 2^64) aralığına katlar."""
    return int(seed) & _MASK64


def stream(seed: int, replicate_id: int = 0, channel: int = CHANNEL_NOISE) -> np.random.Generator:
    """
    (seed, replicate_id, channel) üçlüsünün saf fonksiyonu olan Philox akışı.

    Sayaç tabanlı Philox + SeedSequence spawn_key ile paylaşılan durum olmadan
    paralel dağıtım yapılabilir; aynı üçlü her zaman aynı diziyi verir.
    """
    if replicate_id < 0 or channel < 0:
        raise ArgumentError("replicate_id ve channel negatif olamaz.")
    sequence = np.random.SeedSequence(
        entropy=normalize_seed(seed),
        spawn_key=(int(replicate_id), int(channel)),
    )
    return np.random.Generator(np.random.Philox(sequence))


def sub_seed(seed: int, label: int) -> int:
    """Yardımcı deneyler (prob yönleri, pilot yollar) için türetilmiş bir seed."""
    sequence = np.random.SeedSequence(entropy=normalize_seed(seed), spawn_key=(CHANNEL_AUX, int(label)))
    return int(sequence.generate_state(2, dtype=np.uint64)[0])
