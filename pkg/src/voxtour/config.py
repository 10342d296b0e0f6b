"""Service configuration: one JSON file, strict keys, sensible defaults.

The same document configures the gateway and the REPL. Everything is
optional; an absent file means mock backends and the bundled models.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Optional, Union

from .backends import BOT_ROLES, BotBackend, MockBackend, RemoteBackend
from .bots import load_prompt
from .errors import ParseError, ValidationError
from .session import SPOKEN_RATE_WPS


@dataclass
class AppConfig:
    backend: str = "mock"  # mock | remote
    base_url: str = ""
    api_key_env: str = "VOXTOUR_API_KEY"
    bot_models: dict[str, str] = field(default_factory=dict)  # role -> chat model
    timeouts_s: dict[str, float] = field(default_factory=dict)  # role -> seconds
    retries: int = 1
    backoff_s: float = 0.25
    seed: Optional[int] = None
    prompt_dir: Optional[str] = None
    models: dict[str, str] = field(default_factory=dict)  # model name -> tree path
    spoken_rate_wps: float = SPOKEN_RATE_WPS
    tick_hz: float = 20.0  # 0 disables the background clock
    idle_timeout_s: float = 900.0
    host: str = "127.0.0.1"
    port: int = 8077


_KEYS = {f.name for f in AppConfig.__dataclass_fields__.values()}
_DEFAULT_TIMEOUT_S = 30.0
_DEFAULT_BOT_MODEL = "gpt-4o-mini"


def bundled_model_paths() -> dict[str, str]:
    """Short key (file stem) -> path for every scene tree shipped along."""
    out: dict[str, str] = {}
    models_dir = resources.files("voxtour").joinpath("assets/models")
    for entry in sorted(models_dir.iterdir(), key=lambda e: e.name):
        if entry.name.endswith(".json"):
            out[entry.name[: -len(".json")]] = str(entry)
    return out


def load_config(path: Optional[Union[str, Path]] = None) -> AppConfig:
    """Parse a config document; None returns pure defaults."""
    config = AppConfig()
    if path is None:
        return _finish(config)

    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise ValidationError(f"cannot read config file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"config file is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ValidationError("config document must be a JSON object")

    unknown = set(raw) - _KEYS
    if unknown:
        raise ValidationError(f"unknown config keys: {sorted(unknown)}")
    for key, value in raw.items():
        setattr(config, key, value)
    return _finish(config)


def _finish(config: AppConfig) -> AppConfig:
    if config.backend not in ("mock", "remote"):
        raise ValidationError(f"backend must be mock or remote, got {config.backend!r}")
    if config.backend == "remote" and not config.base_url:
        raise ValidationError("remote backend needs a base_url")
    if config.spoken_rate_wps <= 0:
        raise ValidationError("spoken_rate_wps must be positive")
    if config.tick_hz < 0:
        raise ValidationError("tick_hz cannot be negative")
    if config.idle_timeout_s <= 0:
        raise ValidationError("idle_timeout_s must be positive")
    for role in config.bot_models:
        if role not in BOT_ROLES:
            raise ValidationError(f"bot_models has unknown role {role!r}")
    for role in config.timeouts_s:
        if role not in BOT_ROLES:
            raise ValidationError(f"timeouts_s has unknown role {role!r}")
    if not config.models:
        config.models = bundled_model_paths()
    return config


def make_prompts(config: AppConfig) -> dict[str, str]:
    return {role: load_prompt(role, config.prompt_dir) for role in BOT_ROLES}


def make_backends(config: AppConfig) -> dict[str, BotBackend]:
    """One backend per bot role, mock or remote per the config."""
    if config.backend == "mock":
        return {role: MockBackend(role) for role in BOT_ROLES}
    return {
        role: RemoteBackend(
            base_url=config.base_url,
            model=config.bot_models.get(role, _DEFAULT_BOT_MODEL),
            api_key_env=config.api_key_env,
            timeout_s=config.timeouts_s.get(role, _DEFAULT_TIMEOUT_S),
            retries=config.retries,
            backoff_s=config.backoff_s,
        )
        for role in BOT_ROLES
    }
