from .stream_factory import (
    CHANNEL_AUX,
    CHANNEL_INITIAL,
    CHANNEL_NOISE,
    normalize_seed,
    stream,
    sub_seed,
)

__all__ = [
    "CHANNEL_AUX",
    "CHANNEL_INITIAL",
    "CHANNEL_NOISE",
    "normalize_seed",
    "stream",
    "sub_seed",
]
