"""Run configuration: a flat key=value file plus command-line overrides.

Example file::

    # sweep the reference sizes
    arch = nibble, wallace, lutarray
    n = 4, 8, 16
    mode = sequential
    lanes = 1
    seed = 2024
    stimulus = random:1000
    out = results/

Lists are comma separated.  ``stimulus`` is ``exhaustive`` or ``random:COUNT``
(``random(COUNT)`` is accepted too).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterable, Mapping

import numpy as np

from .arith import MAX_VECTOR_LEN, ArchKind, InvalidJobError, VectorJob
from .nibble import NibbleMode, NibbleSchedule

SEED_MAX = (1 << 64) - 1
DEFAULT_NS = (4, 8, 16)
DEFAULT_RANDOM_COUNT = 1000
KEYS = ("arch", "n", "mode", "lanes", "seed", "stimulus", "out")

_RANDOM = re.compile(r"random\s*(?::\s*|\(\s*)(\d+)\s*\)?\Z")


class ConfigError(ValueError):
    """Malformed configuration text or value; a usage error."""


@dataclass(frozen=True)
class Stimulus:
    kind: str = "random"  # "exhaustive" or "random"
    count: int = DEFAULT_RANDOM_COUNT

    @classmethod
    def parse(cls, text: str) -> "Stimulus":
        t = text.strip().lower()
        if t == "exhaustive":
            return cls("exhaustive", 0)
        m = _RANDOM.match(t)
        if not m or (t.startswith("random(") and not t.endswith(")")):
            raise ConfigError(f"stimulus must be 'exhaustive' or 'random:COUNT', got {text!r}")
        count = int(m.group(1))
        if count < 1:
            raise ConfigError("random stimulus needs at least one job")
        return cls("random", count)

    @property
    def exhaustive(self) -> bool:
        return self.kind == "exhaustive"

    def __str__(self) -> str:
        return "exhaustive" if self.exhaustive else f"random:{self.count}"


def _parse_mode(text: str) -> NibbleSchedule:
    key = text.strip().lower().replace("-", "").replace("_", "")
    if key in ("sequential", "seq"):
        return NibbleSchedule.SEQUENTIAL
    if key in ("unrolled", "unrollednibbles", "unr"):
        return NibbleSchedule.UNROLLED
    raise ConfigError(f"mode must be 'sequential' or 'unrolled', got {text!r}")


def _parse_int(text: str, what: str) -> int:
    try:
        return int(str(text).strip(), 0)
    except ValueError:
        raise ConfigError(f"{what} must be an integer, got {text!r}") from None


def _split(text: str) -> list[str]:
    return [t.strip() for t in str(text).split(",") if t.strip()]


@dataclass(frozen=True)
class RunConfig:
    archs: tuple[ArchKind, ...] = tuple(ArchKind)
    ns: tuple[int, ...] = DEFAULT_NS
    mode: NibbleSchedule = NibbleSchedule.SEQUENTIAL
    lanes: int = 1
    seed: int = 0
    stimulus: Stimulus = field(default_factory=Stimulus)
    out: Path = Path(".")

    def __post_init__(self):
        object.__setattr__(self, "archs", tuple(ArchKind(a) for a in self.archs))
        object.__setattr__(self, "ns", tuple(int(n) for n in self.ns))
        object.__setattr__(self, "mode", NibbleSchedule(self.mode))
        object.__setattr__(self, "out", Path(self.out))
        if not self.archs:
            raise ConfigError("at least one architecture is required")
        if not self.ns:
            raise ConfigError("at least one vector length is required")
        for n in self.ns:
            if not 1 <= n <= MAX_VECTOR_LEN:
                raise ConfigError(f"vector length must be in 1..{MAX_VECTOR_LEN}, got {n}")
        if self.lanes < 1:
            raise ConfigError(f"lanes must be >= 1, got {self.lanes}")
        if not 0 <= self.seed <= SEED_MAX:
            raise ConfigError(f"seed must be a 64-bit unsigned value, got {self.seed}")

    @property
    def nibble_mode(self) -> NibbleMode:
        return NibbleMode(self.mode, self.lanes)

    def with_values(self, values: Mapping[str, str]) -> "RunConfig":
        """Apply textual ``key -> value`` overrides (file entries or CLI flags)."""
        changes: dict = {}
        for key, raw in values.items():
            if raw is None:
                continue
            key = key.strip().lower()
            if key not in KEYS:
                raise ConfigError(f"unknown config key {key!r}; expected one of {', '.join(KEYS)}")
            if key == "arch":
                try:
                    archs = [ArchKind.parse(t) for t in _split(raw)]
                except InvalidJobError as exc:
                    raise ConfigError(str(exc)) from None
                changes["archs"] = tuple(dict.fromkeys(archs))
            elif key == "n":
                changes["ns"] = tuple(dict.fromkeys(_parse_int(t, "n") for t in _split(raw)))
            elif key == "mode":
                changes["mode"] = _parse_mode(raw)
            elif key == "lanes":
                changes["lanes"] = _parse_int(raw, "lanes")
            elif key == "seed":
                changes["seed"] = _parse_int(raw, "seed")
            elif key == "stimulus":
                changes["stimulus"] = Stimulus.parse(raw)
            else:
                changes["out"] = Path(str(raw).strip())
        return replace(self, **changes)


def parse_config_text(text: str) -> dict[str, str]:
    """``key = value`` lines; ``#`` starts a comment; later keys win."""
    values: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key=value, got {raw.strip()!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        if not key:
            raise ConfigError(f"line {lineno}: empty key")
        values[key.lower()] = value
    return values


def format_config(cfg: RunConfig) -> str:
    return "\n".join([
        f"arch = {', '.join(a.value for a in cfg.archs)}",
        f"n = {', '.join(map(str, cfg.ns))}",
        f"mode = {cfg.mode.value}",
        f"lanes = {cfg.lanes}",
        f"seed = {cfg.seed}",
        f"stimulus = {cfg.stimulus}",
        f"out = {cfg.out}",
    ]) + "\n"


def load_config(path: str | Path | None = None, overrides: Mapping[str, str] | None = None, base: RunConfig | None = None) -> RunConfig:
    """Defaults, then the file at ``path`` (if any), then ``overrides``.

    Raises :class:`ConfigError` for bad content and ``OSError`` when the file
    cannot be read.
    """
    cfg = base or RunConfig()
    if path is not None:
        cfg = cfg.with_values(parse_config_text(Path(path).read_text()))
    return cfg.with_values(overrides or {})


# -- stimulus ---------------------------------------------------------------

def job_rng(seed: int, n: int, stream: int = 0) -> np.random.Generator:
    """Generator for one (seed, N) cell; independent of which architecture asks."""
    return np.random.default_rng([seed, n, stream])


def random_jobs(seed: int, n: int, count: int, stream: int = 0) -> list[VectorJob]:
    rng = job_rng(seed, n, stream)
    a = rng.integers(0, 256, size=(count, n))
    b = rng.integers(0, 256, size=count)
    return [VectorJob(row.tolist(), int(bv)) for row, bv in zip(a, b)]


def exhaustive_jobs(n: int) -> list[VectorJob]:
    """Every (a, b) pair at least once; A operands of one B packed ``n`` per job.

    When ``n`` does not divide 256 the last job of each B wraps around to a = 0.
    """
    per_b = -(-256 // n)
    a_all = np.arange(per_b * n) % 256
    return [VectorJob(a_all[j * n:(j + 1) * n].tolist(), b) for b in range(256) for j in range(per_b)]


def make_jobs(cfg: RunConfig, n: int) -> list[VectorJob]:
    if cfg.stimulus.exhaustive:
        return exhaustive_jobs(n)
    return random_jobs(cfg.seed, n, cfg.stimulus.count)


def job_arrays(jobs: Iterable[VectorJob]) -> tuple[np.ndarray, np.ndarray]:
    """``(A, B)`` int64 arrays of shape (jobs, n) and (jobs,)."""
    jobs = list(jobs)
    return (np.array([j.a_ops for j in jobs], dtype=np.int64).reshape(len(jobs), -1),
            np.array([j.b for j in jobs], dtype=np.int64))
