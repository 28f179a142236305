# src/cli/config_parser.py

from __future__ import annotations

import argparse
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from src.domain.models.errors import ConfigError
from src.infrastructure.config.lab_config import LabSettings

FORMATS = ("csv", "json")
GLOBAL_KEYS = ("seed", "out", "format", "threads")


@dataclass(frozen=True)
class Param:
    """Tek bir CLI / config anahtarının tipi, varsayılanı ve aralığı."""
    kind: str                      # float | int | str | floats | pairs | choice
    default: Any = None
    help: str = ""
    low: Optional[float] = None
    high: Optional[float] = None
    low_open: bool = False
    high_open: bool = False
    choices: Tuple[str, ...] = ()


def F(default=None, low=None, high=None, low_open=False, high_open=False, help="") -> Param:
    return Param("float", default, help, low, high, low_open, high_open)


def I(default=None, low=None, high=None, help="") -> Param:
    return Param("int", default, help, low, high)


def S(default=None, help="") -> Param:
    return Param("str", default, help)


def L(default=None, help="") -> Param:
    return Param("floats", default, help)


def C(default, choices: Sequence[str], help="") -> Param:
    return Param("choice", default, help, choices=tuple(choices))


PAIRS = Param("pairs", None, "key=value (tekrarlanabilir)")

# -------------------- Ortak gruplar -------------------- #

_PAC = {"eps": F(0.1, 0, low_open=True), "delta": F(0.05, 0, 1, True, True)}
_Q = {"q": F(0.0, -1, 1, high_open=True)}
_Q_ULA = {"q": F(0.5, 0, 1, True, True)}
_GROWTH = {
    "eta1": F(0.0, 0),
    "q_prime": F(0.0, 0),
    "eta2": F(0.0, 0),
    "eta3": F(0.0, 0),
}
_CONSTS = {
    "W": F(1.0, 0, low_open=True),
    "D": F(1.0, 0, low_open=True),
    "C": F(1.0, 0, low_open=True),
    "C_burnin": F(1.0, 0, low_open=True),
    "c_small": F(1.0, 0, low_open=True),
    "iota_dd": F(None, 0, low_open=True),
}
_LIP = {
    "d": I(1, 1),
    "L_lip": F(1.0, 0, low_open=True),
    "grad_sup": F(1.0, 0),
}
_MODEL = {"model": S("ou"), "model_params": PAIRS}
_FUNCTION = {"f": S("x"), "f_params": PAIRS}
_INIT = {"init": C("auto", ("auto", "exact", "burnin")), "T_burn": F(None, 0, low_open=True)}
_POTENTIAL = {"potential": S("heavy"), "potential_params": PAIRS}
_LASSO = {
    "model": S("sparse-linear"),
    "model_params": PAIRS,
    "blocks": S("-1:1", "q~:alpha~ çiftleri, virgülle"),
    "T": F(200.0, 0, low_open=True),
    "eps0": F(0.1, 0, low_open=True),
    "tol": F(1e-8, 0, low_open=True),
    "max_sweeps": I(100_000, 1),
    "x0": L(),
}


def _pick(group: Mapping[str, Param], *names: str) -> Dict[str, Param]:
    return {name: group[name] for name in names}


ACTIONS: Dict[Tuple[str, Optional[str]], Dict[str, Param]] = {
    ("simulate", None): {
        **_MODEL,
        "x0": L(),
        "T": F(10.0, 0, low_open=True),
        "step": F(None, 0, low_open=True),
        "replicate": I(0, 0),
        "brownian_resolution": I(1, 1),
    },
    ("potential", "check"): {
        **_POTENTIAL,
        "radii": L(),
        "directions": I(32, 1),
    },
    # -------------------- bounds -------------------- #
    ("bounds", "rate"): {"eta": F(0.0, 0), **_Q, "q_prime": F(0.0, 0)},
    ("bounds", "c"): {**_Q, "iota_dd": F(1.0, 0, low_open=True)},
    ("bounds", "psi-cont"): {
        **_PAC, "eta": F(0.0, 0), **_Q, "q_prime": F(0.0, 0), "L": F(1.0, 0, low_open=True),
        **_pick(_CONSTS, "W", "c_small", "iota_dd"),
    },
    ("bounds", "psi-disc"): {
        **_PAC, "step": F(0.01, 0, low_open=True), **_Q, **_GROWTH, **_pick(_CONSTS, "D"),
        "r": F(None, 1, low_open=True),
    },
    ("bounds", "phi"): {
        "n": I(1000, 1), "step": F(0.01, 0, low_open=True), "p": F(2.0, 2), **_Q, **_GROWTH,
        **_pick(_CONSTS, "D"), "r": F(None, 1, low_open=True),
    },
    ("bounds", "kappa"): {**_Q, "eta": F(0.0, 0, 1)},
    ("bounds", "t0"): {
        "eps0": F(0.1, 0, 1, True, True), "s": I(3, 1), "c0": F(3.0, 0, low_open=True),
        "c": F(1.0, 0, low_open=True), **_Q, "eta": F(0.0, 0, 1), "d": I(1, 1),
        "e_inf": F(1.0, 0, low_open=True),
    },
    ("bounds", "lambda-min"): {
        "T": F(200.0, 0, low_open=True), "N": I(25, 1), "eps0": F(0.1, 0, low_open=True),
        "D_inf": F(1.0, 0), "e_inf": F(1.0, 0),
    },
    ("bounds", "ula-tune"): {
        **_PAC, **_Q_ULA, "eta1": F(2.0, 0), "eta2": F(1.0, 0), "eta3": F(0.0, 0), **_LIP,
        **_pick(_CONSTS, "D", "C_burnin", "iota_dd"),
    },
    ("bounds", "ula-tv"): {
        "n": I(1000, 0), "step": F(0.01, 0, low_open=True), "nu_Vq": F(1.0, 1), **_Q_ULA, **_LIP,
        **_pick(_CONSTS, "C", "iota_dd"),
    },
    ("bounds", "ula-tv-tune"): {
        "eps": F(0.1, 0, low_open=True), **_Q_ULA, **_LIP, "nu_Vq": F(1.0, 1),
        **_pick(_CONSTS, "C", "iota_dd"),
    },
    ("bounds", "mu-const"): {**_Q, "iota": F(0.5, 0, low_open=True), "V_expectation": F(1.0, 1)},
    ("bounds", "cattiaux"): {
        "u": F(3.0, 0, low_open=True), "t": F(100.0, 1), **_Q, "iota_dd": F(1.0, 0, low_open=True),
        "L": F(1.0, 0, low_open=True), **_pick(_CONSTS, "c_small"),
    },
    ("bounds", "burnin"): {
        **_PAC, "eta": F(0.0, 0), **_Q, **_pick(_CONSTS, "C_burnin", "c_small"),
        "iota_dd": F(1.0, 0, low_open=True), "step": F(None, 0, low_open=True),
    },
    ("bounds", "tv-ergodic"): {
        **_MODEL, "t": F(10.0, 0), "x_norm": F(0.0, 0), **_pick(_CONSTS, "C"),
    },
    # -------------------- conc-lab -------------------- #
    ("conc-lab", "tails"): {
        **_MODEL, **_FUNCTION, **_INIT, "t": F(100.0, 0, low_open=True), "replicates": I(2000, 100),
        "thresholds": L(), "n": I(None, 1), "delta_step": F(None, 0, low_open=True),
    },
    ("conc-lab", "calibrate"): {
        **_MODEL, **_FUNCTION, **_INIT, "kind": C("W", ("W", "D")), "t": F(100.0, 0, low_open=True),
        "replicates": I(2000, 100), "u_grid": L((2.0, 2.5, 3.0)), "slack": F(1.0, 0),
        "n": I(None, 1), "delta_step": F(None, 0, low_open=True), "validate": I(0, 0, 1),
    },
    ("conc-lab", "moments"): {
        **_MODEL, **_FUNCTION, **_INIT, "t": F(100.0, 0, low_open=True), "replicates": I(2000, 1),
        "p_list": L((1.0, 2.0, 4.0, 6.0)), **_pick(_CONSTS, "W"),
    },
    ("conc-lab", "coverage"): {
        **_MODEL, **_FUNCTION, "eps": F(0.05, 0, low_open=True), "delta": F(0.05, 0, 1, True, True),
        "runs": I(100, 20), "v": F(None, 0), "t": F(None, 0, low_open=True), "target": F(None),
        **_pick(_CONSTS, "W", "C_burnin", "c_small", "iota_dd"),
    },
    ("conc-lab", "poisson"): {
        **_MODEL, **_FUNCTION, "x": L((1.0,)), "horizon": F(None, 0, low_open=True),
        "replicates": I(20_000, 2), "mean": F(None),
    },
    ("conc-lab", "rms"): {
        **_MODEL, **_FUNCTION, **_INIT, "horizon": F(100.0, 0, low_open=True),
        "deltas": L((0.5, 0.1, 0.02)), "replicates": I(200, 1),
    },
    # -------------------- lasso -------------------- #
    ("lasso", "fit"): {**_LASSO, "lam": F(None, 0), "lambdas": L()},
    ("lasso", "probe-re"): {**_LASSO, "s": I(3, 1), "c0": F(3.0, 0, low_open=True), "n_probe": I(1000, 100)},
    ("lasso", "oracle"): {**_LASSO, "replicates": I(50, 1), "s0": I(None, 1)},
    # -------------------- ula -------------------- #
    ("ula", "run"): {
        **_POTENTIAL, "step": F(0.01, 0, low_open=True), "n_steps": I(10_000, 1), "x0": L(), "replicate": I(0, 0),
    },
    ("ula", "estimate"): {
        **_POTENTIAL, **_FUNCTION, "step": F(0.01, 0, low_open=True), "m": I(1000, 0), "n": I(10_000, 1),
        "x0": L(), "target": F(None),
    },
    ("ula", "pac"): {
        **_POTENTIAL, "f": S("x2"), "f_params": PAIRS, **_PAC, "runs": I(100, 1),
        "n": I(None, 1), "m": I(None, 0), "step": F(None, 0, low_open=True), "target": F(None),
        **_pick(_CONSTS, "D", "C_burnin", "iota_dd"),
    },
}


@dataclass(frozen=True)
class RunConfig:
    """Doğrulanmış ve varsayılanları doldurulmuş çalıştırma yapılandırması."""
    command: str
    action: Optional[str]
    params: Dict[str, Any]
    seed: int
    output_path: Optional[str] = None
    format: str = "csv"
    threads: int = 0
    echo: Dict[str, Any] = field(default_factory=dict, compare=False, repr=False)

    @property
    def name(self) -> str:
        return self.command if self.action is None else f"{self.command} {self.action}"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "command": self.command,
            "action": self.action,
            "seed": self.seed,
            "out": self.output_path,
            "format": self.format,
            "threads": self.threads,
            "params": {k: _jsonable(v) for k, v in sorted(self.params.items())},
        }


def _jsonable(value: Any) -> Any:
    if isinstance(value, tuple):
        return list(value)
    if isinstance(value, dict):
        return dict(sorted(value.items()))
    return value


# -------------------- Dönüştürme ve doğrulama -------------------- #

def _parse_pairs(key: str, raw: Any) -> Dict[str, Any]:
    if isinstance(raw, Mapping):
        return dict(raw)
    items: Iterable[str] = [raw] if isinstance(raw, str) else raw
    parsed: Dict[str, Any] = {}
    for item in items:
        if "=" not in str(item):
            raise ConfigError(key, f"'key=value' bekleniyordu: '{item}'")
        name, value = str(item).split("=", 1)
        try:
            parsed[name.strip()] = float(value)
        except ValueError:
            parsed[name.strip()] = value.strip()
    return parsed


def _to_float(key: str, raw: Any) -> float:
    if isinstance(raw, bool):
        raise ConfigError(key, f"sayı bekleniyordu: {raw!r}")
    try:
        value = float(raw)
    except (TypeError, ValueError) as exc:
        raise ConfigError(key, f"sayı bekleniyordu: {raw!r}") from exc
    if math.isnan(value):
        raise ConfigError(key, "NaN kabul edilmez")
    return value


def _check_range(key: str, value: float, param: Param) -> None:
    if param.low is not None and (value < param.low or (param.low_open and value == param.low)):
        bound = ">" if param.low_open else ">="
        raise ConfigError(key, f"{bound} {param.low:g} olmalı: {value:g}")
    if param.high is not None and (value > param.high or (param.high_open and value == param.high)):
        bound = "<" if param.high_open else "<="
        raise ConfigError(key, f"{bound} {param.high:g} olmalı: {value:g}")


def convert_value(key: str, raw: Any, param: Param) -> Any:
    """Ham değeri (flag dizgesi veya JSON değeri) tipine çevirir ve aralığını denetler."""
    if raw is None:
        return None
    if param.kind == "float":
        value = _to_float(key, raw)
        _check_range(key, value, param)
        return value
    if param.kind == "int":
        number = _to_float(key, raw)
        if not number.is_integer():
            raise ConfigError(key, f"tam sayı bekleniyordu: {raw!r}")
        _check_range(key, number, param)
        return int(number)
    if param.kind == "floats":
        items = raw.split(",") if isinstance(raw, str) else list(raw)
        values = tuple(_to_float(key, item) for item in items if str(item).strip() != "")
        if not values:
            raise ConfigError(key, "boş liste")
        return values
    if param.kind == "pairs":
        return _parse_pairs(key, raw)
    if param.kind == "choice":
        if str(raw) not in param.choices:
            raise ConfigError(key, f"seçenekler {list(param.choices)}: {raw!r}")
        return str(raw)
    if not isinstance(raw, (str, int, float)):
        raise ConfigError(key, f"metin bekleniyordu: {raw!r}")
    return str(raw)


def _validate_params(command: str, action: Optional[str], given: Mapping[str, Any]) -> Dict[str, Any]:
    schema = ACTIONS.get((command, action))
    if schema is None:
        label = command if action is None else f"{command} {action}"
        raise ConfigError("command", f"bilinmeyen komut: '{label}'")
    unknown = sorted(set(given) - set(schema))
    if unknown:
        label = command if action is None else f"{command} {action}"
        raise ConfigError(unknown[0], f"'{label}' için bilinmeyen anahtar")
    params: Dict[str, Any] = {}
    for key, param in schema.items():
        raw = given.get(key, param.default)
        value = convert_value(key, raw, param)
        if param.kind == "pairs" and value is None:
            value = {}
        params[key] = value
    return params


def _build(
    command: str,
    action: Optional[str],
    given: Mapping[str, Any],
    globals_: Mapping[str, Any],
    settings: LabSettings,
) -> RunConfig:
    params = _validate_params(command, action, given)
    seed = convert_value("seed", globals_.get("seed", settings.seed), I(low=0))
    threads = convert_value("threads", globals_.get("threads", settings.threads), I(low=0))
    fmt = convert_value("format", globals_.get("format", "csv"), C("csv", FORMATS))
    out = globals_.get("out")
    config = RunConfig(
        command=command,
        action=action,
        params=params,
        seed=seed,
        output_path=None if out is None else str(out),
        format=fmt,
        threads=threads,
    )
    object.__setattr__(config, "echo", config.to_dict())
    return config


def config_from_dict(data: Mapping[str, Any], settings: Optional[LabSettings] = None) -> RunConfig:
    """to_dict() çıktısını (veya JSON config dosyasını) RunConfig'e çevirir."""
    settings = settings or LabSettings()
    allowed = {"command", "action", "params", *GLOBAL_KEYS}
    unknown = sorted(set(data) - allowed)
    if unknown:
        raise ConfigError(unknown[0], "bilinmeyen üst düzey anahtar")
    if "command" not in data:
        raise ConfigError("command", "eksik")
    params = data.get("params") or {}
    if not isinstance(params, Mapping):
        raise ConfigError("params", "nesne bekleniyordu")
    globals_ = {k: data[k] for k in GLOBAL_KEYS if k in data}
    return _build(str(data["command"]), data.get("action"), params, globals_, settings)


def load_config_file(path: str) -> Dict[str, Any]:
    file_path = Path(path)
    if not file_path.is_file():
        raise ConfigError("config", f"dosya bulunamadı: {path}")
    try:
        data = json.loads(file_path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ConfigError("config", f"geçersiz JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError("config", "üst düzey JSON nesnesi bekleniyordu")
    return data


# -------------------- argparse -------------------- #

class _Parser(argparse.ArgumentParser):
    """Kullanım hatalarını SystemExit yerine ConfigError olarak yükseltir."""

    def error(self, message: str):  # type: ignore[override]
        raise ConfigError("argv", message)


def _flag(key: str) -> str:
    return "--" + key.replace("_", "-")


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", default=argparse.SUPPRESS, help="Temel seed (yoksa ERGODIC_LAB_SEED).")
    parser.add_argument("--out", default=argparse.SUPPRESS, help="Sonuç dosyası yolu.")
    parser.add_argument("--format", default=argparse.SUPPRESS, choices=FORMATS, help="csv veya json.")
    parser.add_argument("--threads", default=argparse.SUPPRESS, help="İş parçacığı üst sınırı (0 = otomatik).")
    parser.add_argument("--config", default=argparse.SUPPRESS, help="JSON config dosyası.")


def _add_params(parser: argparse.ArgumentParser, schema: Mapping[str, Param]) -> None:
    for key, param in schema.items():
        default = "" if param.default is None else f" (varsayılan: {param.default})"
        kwargs: Dict[str, Any] = {"dest": f"p__{key}", "default": argparse.SUPPRESS, "help": param.help + default}
        if param.kind == "pairs":
            kwargs["action"] = "append"
            kwargs["metavar"] = "KEY=VALUE"
        parser.add_argument(_flag(key), **kwargs)


def build_argument_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ergodic-lab", description="Ergodik difüzyonlar için yoğunlaşma ve PAC laboratuvarı.",
                     allow_abbrev=False)
    _add_common(parser)
    commands = parser.add_subparsers(dest="command", parser_class=_Parser)
    grouped: Dict[str, List[Tuple[Optional[str], Dict[str, Param]]]] = {}
    for (command, action), schema in ACTIONS.items():
        grouped.setdefault(command, []).append((action, schema))
    for command, entries in grouped.items():
        sub = commands.add_parser(command, allow_abbrev=False)
        if entries[0][0] is None:
            _add_common(sub)
            _add_params(sub, entries[0][1])
            continue
        actions = sub.add_subparsers(dest="action", parser_class=_Parser)
        for action, schema in entries:
            leaf = actions.add_parser(action, allow_abbrev=False)
            _add_common(leaf)
            _add_params(leaf, schema)
    return parser


def parse_config(argv: Sequence[str], settings: Optional[LabSettings] = None) -> RunConfig:
    """
    argv -> RunConfig. Öncelik: flag > --config dosyası > ortam (settings) > varsayılan.

    Raises:
        ConfigError: bilinmeyen anahtar, tip uyuşmazlığı veya aralık ihlali (anahtarı adlandırır).
    """
    settings = settings or LabSettings()
    namespace = vars(build_argument_parser().parse_args(list(argv)))
    file_data: Dict[str, Any] = {}
    if "config" in namespace:
        file_data = load_config_file(namespace["config"])
        allowed = {"command", "action", "params", *GLOBAL_KEYS}
        unknown = sorted(set(file_data) - allowed)
        if unknown:
            raise ConfigError(unknown[0], "bilinmeyen üst düzey anahtar")

    command = namespace.get("command") or file_data.get("command")
    if command is None:
        raise ConfigError("command", "komut verilmedi")
    action = namespace.get("action")
    if namespace.get("command") is None:
        action = file_data.get("action")
    elif file_data.get("command") not in (None, command) or (
        "action" in file_data and file_data["action"] != action
    ):
        raise ConfigError("command", "config dosyasındaki komut argv ile uyuşmuyor")

    given: Dict[str, Any] = dict(file_data.get("params") or {})
    for key, value in namespace.items():
        if key.startswith("p__"):
            name = key[3:]
            if isinstance(value, list) and isinstance(given.get(name), Mapping):
                merged = dict(given[name])
                merged.update(_parse_pairs(name, value))
                value = merged
            given[name] = value

    globals_ = {k: file_data[k] for k in GLOBAL_KEYS if k in file_data}
    globals_.update({k: namespace[k] for k in GLOBAL_KEYS if k in namespace})
    return _build(command, action, given, globals_, settings)
