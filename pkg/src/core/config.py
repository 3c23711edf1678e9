"""Run configuration.

Config files are flat ``key=value`` text, one dotted key per line::

    gen.seed=7
    gen.train=2000
    train.epochs=40
    run.data_dir=data

Files are read with :func:`dotenv.dotenv_values` without interpolation, so the
process environment is never consulted and a run is fully described by its file.
"""

import hashlib
import json
from pathlib import Path
from typing import Literal

from dotenv import dotenv_values
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from .errors import ConfigError
from .logging import get_logger

log = get_logger("config")


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class GenConfig(_Section):
    seed: int = Field(default=7, ge=0, lt=2**64)
    train: int = Field(default=2000, ge=0)
    val: int = Field(default=500, ge=0)
    test_ordinary: int = Field(default=500, ge=0)
    test_2hop_ta: int = Field(default=200, ge=0)
    test_2hop_qh: int = Field(default=200, ge=0)
    balance: bool = True
    blind_tests: bool = False
    spatial_questions: bool = False

    def split_sizes(self) -> dict[str, int]:
        return {
            "train": self.train,
            "val": self.val,
            "test_ordinary": self.test_ordinary,
            "test_2hop_ta": self.test_2hop_ta,
            "test_2hop_qh": self.test_2hop_qh,
        }


class TrainConfig(_Section):
    seed: int = Field(default=7, ge=0)
    epochs: int = Field(default=40, ge=0)
    stage2_epochs: int = Field(default=40, ge=0)
    batch_size: int = Field(default=32, ge=1)
    learning_rate: float = Field(default=2e-3, gt=0)
    optimizer: Literal["sgd", "adam"] = "adam"
    action_dim: int = Field(default=125, ge=1)
    embed_dim: int = Field(default=32, ge=1)
    hidden_dim: int = Field(default=256, ge=1)
    lstm_hidden: int = Field(default=200, ge=1)
    stage1_pairs: int = Field(default=2000, ge=1)
    coord_weight: float = Field(default=1.0, gt=0)
    patience: int = Field(default=10, ge=1)
    identity_fraction: float = Field(default=0.05, ge=0, lt=1)
    aux_weight: float = Field(default=0.0, ge=0)
    eval_subset: int = Field(default=500, ge=1)
    ablation_decoder_trainable: bool = False


class RunConfig(_Section):
    data_dir: Path = Path("data")
    model_dir: Path = Path("models")
    report_dir: Path = Path("reports")
    log_level: str = "INFO"
    question_mode: Literal["oracle-program", "template-parse"] = "template-parse"
    server_transport: Literal["stdio", "http"] = "stdio"
    server_host: str = "127.0.0.1"
    server_port: int = Field(default=8000, ge=1, le=65535)
    server_path: str = "/mcp/"


class HarnessConfig(_Section):
    gen: GenConfig = GenConfig()
    train: TrainConfig = TrainConfig()
    run: RunConfig = RunConfig()

    def fingerprint(self) -> str:
        canon = json.dumps(self.model_dump(mode="json"), sort_keys=True)
        return hashlib.sha256(canon.encode("ascii")).hexdigest()

    def with_train(self, **changes) -> "HarnessConfig":
        return self.model_copy(update={"train": self.train.model_copy(update=changes)})


_SECTIONS = {"gen": GenConfig, "train": TrainConfig, "run": RunConfig}


def parse_config(
    values: dict[str, str | None], source: str = "<config>"
) -> HarnessConfig:
    grouped: dict[str, dict[str, str]] = {name: {} for name in _SECTIONS}
    for key, raw in values.items():
        section, _, field = key.partition(".")
        if section not in _SECTIONS or not field:
            raise ConfigError("unknown-key", f"{source}: unknown key '{key}'")
        if raw is None:
            raise ConfigError("missing-value", f"{source}: key '{key}' has no value")
        grouped[section][field] = raw
    try:
        sections = {name: _SECTIONS[name](**grouped[name]) for name in _SECTIONS}
    except ValidationError as e:
        first = e.errors()[0]
        where = ".".join(str(p) for p in first["loc"])
        raise ConfigError("invalid-value", f"{source}: {where}: {first['msg']}") from e
    return HarnessConfig(**sections)


def load_config(path: Path | str | None) -> HarnessConfig:
    if path is None:
        return HarnessConfig()
    path = Path(path)
    if not path.is_file():
        raise ConfigError("missing-config", f"config file {path} not found")
    values = dotenv_values(path, interpolate=False)
    cfg = parse_config(dict(values), source=str(path))
    log.debug(f"Loaded config {path} fingerprint={cfg.fingerprint()[:12]}")
    return cfg


def render_config(cfg: HarnessConfig) -> str:
    """Inverse of :func:`load_config`: flat text with every key spelled out."""
    lines = []
    for name in _SECTIONS:
        section = getattr(cfg, name).model_dump(mode="json")
        for key, value in section.items():
            if isinstance(value, bool):
                value = "true" if value else "false"
            lines.append(f"{name}.{key}={value}")
    return "\n".join(lines) + "\n"
