"""Service configuration: JSON file with environment overrides.

Precedence: built-in defaults < config file < LLR_* environment variables.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path

from .aida import DEFAULT_AIDA_NAMESPACE
from .rdf import Iri

POLICIES = ("open", "token-list", "original-authors")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class Config:
    data_dir: str = "data"
    aida_namespace: str = DEFAULT_AIDA_NAMESPACE.value
    np_namespace: str = "https://w3id.org/livingreviews/np/"
    resolver_endpoint: str = "https://doi.org/"
    resolver_timeout: float = 15.0
    policy: str = "token-list"
    tokens: tuple[str, ...] = ()
    host: str = "127.0.0.1"
    port: int = 8351
    creator: str = "https://w3id.org/livingreviews/agent/curator"

    def __post_init__(self) -> None:
        if self.policy not in POLICIES:
            raise ConfigError(f"unknown policy {self.policy!r}; expected one of {POLICIES}")
        Iri(self.aida_namespace)
        Iri(self.np_namespace)

    @property
    def aida_iri(self) -> Iri:
        return Iri(self.aida_namespace)

    @property
    def np_base(self) -> Iri:
        return Iri(self.np_namespace)

    @property
    def creator_iri(self) -> Iri:
        return Iri(self.creator)


_FILE_KEYS = {
    "data_dir": str,
    "aida_namespace": str,
    "np_namespace": str,
    "resolver_endpoint": str,
    "resolver_timeout": float,
    "policy": str,
    "host": str,
    "port": int,
    "creator": str,
}


def load_config(path: str | Path | None = None, env: dict[str, str] | None = None) -> Config:
    env = os.environ if env is None else env
    values: dict = {}
    if path is not None:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
        for key, cast in _FILE_KEYS.items():
            if key in data:
                values[key] = cast(data[key])
        if "tokens" in data:
            values["tokens"] = tuple(data["tokens"])

    def override(key: str, var: str, cast=str) -> None:
        raw = env.get(var)
        if raw is not None and raw != "":
            values[key] = cast(raw)

    override("data_dir", "LLR_DATA_DIR")
    override("aida_namespace", "LLR_AIDA_NAMESPACE")
    override("np_namespace", "LLR_NP_NAMESPACE")
    override("resolver_endpoint", "LLR_RESOLVER_ENDPOINT")
    override("resolver_timeout", "LLR_RESOLVER_TIMEOUT", float)
    override("policy", "LLR_POLICY")
    override("creator", "LLR_CREATOR")
    if env.get("LLR_TOKENS"):
        values["tokens"] = tuple(t.strip() for t in env["LLR_TOKENS"].split(",") if t.strip())
    if env.get("LLR_LISTEN"):
        host, _, port = env["LLR_LISTEN"].rpartition(":")
        values["host"] = host or "127.0.0.1"
        values["port"] = int(port)
    return Config(**values)
