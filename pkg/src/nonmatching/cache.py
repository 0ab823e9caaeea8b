"""Flat-file result cache and run manifests for the command-line front end.

Results are JSON files in one directory, keyed by a digest of the inputs
that determine them (command, parameters, seed, caps).  Timestamps live only
in manifests, never in result payloads, so reruns are byte-identical.
"""

from __future__ import annotations

import hashlib
import json
import os
import time
from dataclasses import dataclass
from pathlib import Path

ENV_VAR = "NONMATCHING_CACHE_DIR"
CAPS_VERSION = "caps-v1"


def default_cache_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "nonmatching"


def canonical_json(payload) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def digest_of(payload) -> str:
    return hashlib.sha256(canonical_json(payload).encode()).hexdigest()


@dataclass(frozen=True)
class RunManifest:
    command: str
    parameters: dict
    seed: int
    caps: str
    field: str
    timestamp: float
    result_digest: str

    def input_digest(self) -> str:
        return digest_of(
            {
                "command": self.command,
                "parameters": self.parameters,
                "seed": self.seed,
                "caps": self.caps,
                "field": self.field,
            }
        )

    def to_json(self) -> str:
        return json.dumps(
            {
                "command": self.command,
                "parameters": self.parameters,
                "seed": self.seed,
                "caps": self.caps,
                "field": self.field,
                "timestamp": self.timestamp,
                "result_digest": self.result_digest,
                "input_digest": self.input_digest(),
            },
            sort_keys=True,
            indent=2,
        )


class ResultCache:
    def __init__(self, root: Path | None = None):
        self.root = Path(root) if root is not None else default_cache_dir()

    def _path(self, key: str) -> Path:
        return self.root / f"{key}.json"

    def get(self, key: str) -> dict | None:
        p = self._path(key)
        if not p.exists():
            return None
        try:
            return json.loads(p.read_text())
        except (OSError, ValueError):
            return None

    def put(self, key: str, payload: dict) -> None:
        self.root.mkdir(parents=True, exist_ok=True)
        self._path(key).write_text(canonical_json(payload))

    def write_manifest(self, manifest: RunManifest) -> Path:
        self.root.mkdir(parents=True, exist_ok=True)
        p = self.root / f"manifest-{manifest.input_digest()}.json"
        p.write_text(manifest.to_json())
        return p

    def write_artifact(self, name: str, text: str) -> Path:
        self.root.mkdir(parents=True, exist_ok=True)
        p = self.root / name
        p.write_text(text)
        return p


def now() -> float:
    return time.time()
