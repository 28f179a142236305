# src/cli/commands/base.py

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Mapping, Optional, Sequence

import numpy as np

from src.application.container import AppContainer
from src.application.services.simulation.simulation_service import StationaryMethod
from src.cli.config_parser import RunConfig
from src.domain.models.calibration import CalibrationConstants
from src.domain.models.diffusion import DiffusionModel
from src.domain.models.errors import ArgumentError
from src.domain.models.function_class import TestFunction


@dataclass
class CommandResult:
    """
    Bir komutun çıktısı.

    summary JSON zarfının "result" alanına, (columns, rows) CSV tablosuna gider;
    text stdout'a basılır.
    """
    summary: Dict[str, Any]
    columns: List[str] = field(default_factory=list)
    rows: List[List[Any]] = field(default_factory=list)
    text: str = ""

    def table_rows(self) -> List[Dict[str, Any]]:
        return [dict(zip(self.columns, row)) for row in self.rows]


Handler = Callable[[RunConfig, AppContainer], CommandResult]


def fmt(value: float) -> str:
    return f"{value:.10g}"


def scalar_result(name: str, value: float, **extra: Any) -> CommandResult:
    summary = {name: value, **extra}
    rows = [[key, val] for key, val in summary.items()]
    return CommandResult(summary=summary, columns=["quantity", "value"], rows=rows, text=fmt(value))


def mapping_result(summary: Mapping[str, Any], text: str) -> CommandResult:
    rows = [[key, val] for key, val in summary.items() if not isinstance(val, (dict, list, tuple))]
    return CommandResult(summary=dict(summary), columns=["quantity", "value"], rows=rows, text=text)


def constants_from(params: Mapping[str, Any], base: Optional[CalibrationConstants] = None) -> CalibrationConstants:
    """Flag olarak verilen sabitler USER kaynağıyla yazılır; verilmeyenler varsayılan kalır."""
    mapping = {
        "W": "W_frak",
        "D": "D_frak",
        "C": "C_frak",
        "C_burnin": "C_burnin",
        "c_small": "c_small",
        "iota_dd": "iota_dd",
    }
    values = {mapping[k]: params[k] for k in mapping if params.get(k) is not None}
    consts = base or CalibrationConstants()
    return consts.with_user(**values) if values else consts


def resolve_model(config: RunConfig, container: AppContainer) -> DiffusionModel:
    return container.registry.get_model(config.params["model"], config.params.get("model_params"))


def resolve_function(config: RunConfig, container: AppContainer) -> TestFunction:
    return container.registry.get_function(config.params["f"], config.params.get("f_params"))


def resolve_init(config: RunConfig, model: DiffusionModel) -> StationaryMethod:
    kind = config.params.get("init", "auto")
    if kind == "auto":
        return StationaryMethod.default_for(model)
    if kind == "exact":
        return StationaryMethod("exact")
    T_burn = config.params.get("T_burn") or StationaryMethod.default_for(model).T_burn or 20.0
    return StationaryMethod("burnin", T_burn)


def start_point(values: Optional[Sequence[float]], dim: int) -> np.ndarray:
    if values is None:
        return np.zeros(dim)
    x0 = np.asarray(values, dtype=float)
    if x0.size != dim:
        raise ArgumentError(f"x0 boyutu {x0.size} != d={dim}")
    return x0
