from .euler_engine import BatchResult, euler_maruyama, simulate_batch
from .observers import PathObserver, SnapshotObserver, WindowSumObserver
from .simulation_service import SimulationService, StationaryMethod

__all__ = [
    "BatchResult",
    "PathObserver",
    "SimulationService",
    "SnapshotObserver",
    "StationaryMethod",
    "WindowSumObserver",
    "euler_maruyama",
    "simulate_batch",
]
