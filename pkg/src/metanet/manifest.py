"""Run manifests embedded in every JSON artifact.

Reruns with equal manifests (command, argv, seed, input digests, version)
produce bit-identical numeric output; the timestamp is the only
nondeterministic field and is excluded from regression comparisons.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from datetime import datetime, timezone

from . import __version__


def file_digest(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            h.update(chunk)
    return h.hexdigest()


@dataclass(frozen=True)
class RunManifest:
    command: str
    argv: list[str]
    seed: int | None
    input_digests: dict[str, str]
    version: str
    timestamp: str

    @classmethod
    def build(cls, command: str, argv: list[str], seed: int | None,
              inputs: list[str]) -> "RunManifest":
        return cls(command=command, argv=list(argv), seed=seed,
                   input_digests={p: file_digest(p) for p in inputs},
                   version=__version__,
                   timestamp=datetime.now(timezone.utc).isoformat())

    def as_dict(self) -> dict:
        return {"command": self.command, "argv": self.argv, "seed": self.seed,
                "input_digests": self.input_digests, "version": self.version,
                "timestamp": self.timestamp}
