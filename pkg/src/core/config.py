# ============================================================================
# SOURCEFILE: config.py
# RELPATH: tpb_bench/src/core/config.py
# PROJECT: TPB Bench
# VERSION: 1.0.0
# LIFECYCLE: Production
# DESCRIPTION: Experiment configuration: flat key=value files, defaults, validation
# ============================================================================

"""
Configuration Manager for TPB Bench.

Experiment grids are described by flat ``key = value`` text files::

    # bi-sphere only, small dimensions
    problems = sphere/sphere, sphere/ellipsoid
    dims = 2, 3
    r1st = 0.85

Lists are comma separated and problems are ``f1/f2`` kind pairs. Values are
layered: built-in defaults, then the file, then command-line overrides.
Unknown keys and malformed values raise ConfigValidationError naming the key.
"""

from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple
import sys
import os

# Add parent directory to path for imports
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from core.exceptions import ConfigLoadError, ConfigValidationError
from core.problems import CURATED_SUITE, KIND_NAMES

ALGORITHM_NAMES = ("tpb", "tpb1", "tpb2")
OPTIMIZER_NAMES = ("trust_region", "nelder_mead", "bobyqa")


def _split(raw: str) -> List[str]:
    return [item.strip() for item in str(raw).split(",") if item.strip()]


def _int_list(raw: str) -> List[int]:
    return [int(item) for item in _split(raw)]


def _float_list(raw: str) -> List[float]:
    return [float(item) for item in _split(raw)]


def _str_list(raw: str) -> List[str]:
    return [item.lower() for item in _split(raw)]


def _pair_list(raw: str) -> List[Tuple[str, str]]:
    pairs = []
    for item in _split(raw):
        parts = [p.strip().lower() for p in item.split("/")]
        if len(parts) != 2 or not all(parts):
            raise ValueError(f"'{item}' is not an f1/f2 pair")
        pairs.append((parts[0], parts[1]))
    return pairs


def _text(raw: str) -> str:
    return str(raw).strip()


@dataclass(frozen=True)
class ExperimentConfig:
    """Resolved experiment grid."""
    problems: Tuple[Tuple[str, str], ...]
    dims: Tuple[int, ...]
    budget_factors: Tuple[int, ...]
    algorithms: Tuple[str, ...]
    K_values: Tuple[int, ...]
    r1st_values: Tuple[float, ...]
    D_values: Tuple[int, ...]
    instances: int
    seeds: int
    out_dir: Path
    optimizer: str = "trust_region"
    resolution: int = 200
    workers: int = 0
    log_dir: str = "logs"

    def as_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["problems"] = [f"{a}/{b}" for a, b in self.problems]
        data["out_dir"] = str(self.out_dir)
        for key, value in data.items():
            if isinstance(value, tuple):
                data[key] = list(value)
        return data


class ConfigManager:
    """
    Layered configuration for experiment grids.

    Keys match the command-line flags with dashes turned into underscores.
    """

    DEFAULT_CONFIG: Dict[str, Any] = {
        "problems": list(CURATED_SUITE),
        "dims": [2, 3, 5, 10, 20],
        "budget_factors": [20, 30, 40],
        "algos": ["tpb", "tpb1", "tpb2"],
        "K": [3],
        "D": [2],
        "r1st": [0.9],
        "instances": 5,
        "seeds": 1,
        "out": "results",
        "optimizer": "trust_region",
        "resolution": 200,
        "workers": 0,
        "log_dir": "logs",
    }

    PARSERS: Dict[str, Callable[[str], Any]] = {
        "problems": _pair_list,
        "dims": _int_list,
        "budget_factors": _int_list,
        "algos": _str_list,
        "K": _int_list,
        "D": _int_list,
        "r1st": _float_list,
        "instances": int,
        "seeds": int,
        "out": _text,
        "optimizer": lambda raw: _text(raw).lower(),
        "resolution": int,
        "workers": int,
        "log_dir": _text,
    }

    def __init__(self, config_file: Optional[str] = None):
        """
        Args:
            config_file: Optional flat key=value file layered over the defaults
        """
        self.config_file = Path(config_file) if config_file else None
        self.config: Dict[str, Any] = self._deep_copy(self.DEFAULT_CONFIG)
        if self.config_file is not None:
            self.load()

    def load(self) -> Dict[str, Any]:
        """
        Read ``config_file`` on top of the current values.

        Raises:
            ConfigLoadError: If the file cannot be read
            ConfigValidationError: On unknown keys, lines without '=' or bad values
        """
        try:
            text = self.config_file.read_text(encoding="utf-8")
        except FileNotFoundError:
            raise ConfigLoadError(str(self.config_file), "File not found")
        except OSError as e:
            raise ConfigLoadError(str(self.config_file), str(e))

        for line_no, line in enumerate(text.splitlines(), start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigValidationError(line, None, f"line {line_no}: expected 'key = value'")
            key, raw = (part.strip() for part in line.split("=", 1))
            self.set_raw(key, raw)
        return self.config

    def parse_value(self, key: str, raw: str) -> Any:
        """Convert the text ``raw`` to the type stored under ``key``."""
        if key not in self.PARSERS:
            raise ConfigValidationError(key, raw, f"Unknown key. Known keys: {', '.join(self.PARSERS)}")
        try:
            return self.PARSERS[key](raw)
        except ValueError as e:
            raise ConfigValidationError(key, raw, f"Malformed value: {e}")

    def set_raw(self, key: str, raw: str) -> None:
        self.config[key] = self.parse_value(key, raw)

    def get(self, key: str, default: Any = None) -> Any:
        return self.config.get(key, default)

    def set(self, key: str, value: Any) -> None:
        if key not in self.PARSERS:
            raise ConfigValidationError(key, value, "Unknown key")
        self.config[key] = value

    def validate(self) -> bool:
        """
        Check every value against its allowed range.

        Raises:
            ConfigValidationError: Naming the first offending key
        """
        for key in ("problems", "dims", "budget_factors", "algos", "K", "D", "r1st"):
            if not self.config[key]:
                raise ConfigValidationError(key, self.config[key], "Must not be empty")
        self._validate_problems()
        self._validate_positive_ints("dims", minimum=2)
        self._validate_positive_ints("budget_factors", minimum=1)
        self._validate_algos()
        self._validate_positive_ints("K", minimum=2)
        self._validate_positive_ints("D", minimum=1)
        self._validate_r1st()
        self._validate_scalar("instances", minimum=1)
        self._validate_scalar("seeds", minimum=1)
        self._validate_scalar("resolution", minimum=100)
        self._validate_scalar("workers", minimum=0)
        self._validate_optimizer()
        if not self.config["out"]:
            raise ConfigValidationError("out", self.config["out"], "Output directory must be set")
        return True

    def _validate_problems(self) -> None:
        for pair in self.config["problems"]:
            for kind in pair:
                if kind not in KIND_NAMES:
                    raise ConfigValidationError(
                        "problems", "/".join(pair), f"Unknown kind '{kind}'. Must be one of: {', '.join(KIND_NAMES)}"
                    )

    def _validate_positive_ints(self, key: str, minimum: int) -> None:
        for value in self.config[key]:
            if not isinstance(value, int) or value < minimum:
                raise ConfigValidationError(key, value, f"Every entry must be an integer >= {minimum}")

    def _validate_scalar(self, key: str, minimum: int) -> None:
        value = self.config[key]
        if not isinstance(value, int) or value < minimum:
            raise ConfigValidationError(key, value, f"Must be an integer >= {minimum}")

    def _validate_algos(self) -> None:
        for value in self.config["algos"]:
            if value not in ALGORITHM_NAMES:
                raise ConfigValidationError("algos", value, f"Must be one of: {', '.join(ALGORITHM_NAMES)}")

    def _validate_r1st(self) -> None:
        for value in self.config["r1st"]:
            if not 0.0 < value < 1.0:
                raise ConfigValidationError("r1st", value, "Must lie strictly between 0 and 1")

    def _validate_optimizer(self) -> None:
        value = self.config["optimizer"]
        if value not in OPTIMIZER_NAMES:
            raise ConfigValidationError("optimizer", value, f"Must be one of: {', '.join(OPTIMIZER_NAMES)}")

    def _deep_copy(self, obj: Any) -> Any:
        if isinstance(obj, dict):
            return {k: self._deep_copy(v) for k, v in obj.items()}
        if isinstance(obj, list):
            return [self._deep_copy(item) for item in obj]
        return obj

    def export_dict(self) -> Dict[str, Any]:
        return self._deep_copy(self.config)

    def to_experiment_config(self) -> ExperimentConfig:
        c = self.config
        return ExperimentConfig(
            problems=tuple(tuple(p) for p in c["problems"]),
            dims=tuple(c["dims"]),
            budget_factors=tuple(c["budget_factors"]),
            algorithms=tuple(c["algos"]),
            K_values=tuple(c["K"]),
            r1st_values=tuple(c["r1st"]),
            D_values=tuple(c["D"]),
            instances=c["instances"],
            seeds=c["seeds"],
            out_dir=Path(c["out"]),
            optimizer=c["optimizer"],
            resolution=c["resolution"],
            workers=c["workers"],
            log_dir=c["log_dir"],
        )


def parse_config(path: Optional[str] = None, overrides: Optional[Dict[str, str]] = None) -> ExperimentConfig:
    """
    Resolve defaults < file < overrides into an ExperimentConfig.

    Args:
        path: Optional config file
        overrides: Raw flag values keyed like the file (e.g. {"r1st": "0.85"})

    Raises:
        ConfigLoadError: If the file cannot be read
        ConfigValidationError: On unknown keys or invalid values
    """
    manager = ConfigManager(path)
    for key, raw in (overrides or {}).items():
        if raw is not None:
            manager.set_raw(key, raw)
    manager.validate()
    return manager.to_experiment_config()
