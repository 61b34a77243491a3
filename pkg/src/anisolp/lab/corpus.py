"""Seeded corpus of random divergence-free fields and its result cache."""

from __future__ import annotations

from dataclasses import asdict, dataclass
import logging
import os
from pathlib import Path
import tempfile
from typing import Any, Callable, Iterator, TypeVar

from diskcache import Cache

from anisolp.errors import GridError
from anisolp.protocol.digests import digest_payload
from anisolp.solver.initial import init_random_divfree
from anisolp.spectral.field import SpectralVectorField
from anisolp.spectral.grid import Grid


logger = logging.getLogger(__name__)

_CACHE_DIR_ENV = "ANISO_CACHE_DIR"
_CACHE_TOGGLE_ENV = "ANISO_CACHE"
DEFAULT_SLOPES = (-1.0, -5.0 / 3.0, -3.0)

T = TypeVar("T")


@dataclass(frozen=True)
class CorpusSpec:
    """Field i uses slope ``slopes[i % len(slopes)]`` and seed ``base_seed + i``.

    Draws depend only on the shell, so the same spec on a finer grid gives
    the same lattice content at higher resolution.
    """

    n: int = 200
    size: int = 32
    slopes: tuple[float, ...] = DEFAULT_SLOPES
    base_seed: int = 0
    k_lo: float = 1.0
    k_hi: float = 8.0
    amplitude: float = 1.0

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"CorpusSpec.n must be >= 1. Got: {self.n}")
        if not self.slopes:
            raise ValueError("CorpusSpec.slopes must be non-empty")
        object.__setattr__(self, "slopes", tuple(float(s) for s in self.slopes))
        if 3 * int(self.k_hi) >= self.size:
            raise GridError(f"shell radius {self.k_hi} is not retained on a {self.size}^3 grid")

    @property
    def grid(self) -> Grid:
        return Grid.cube(self.size)

    def field(self, index: int) -> SpectralVectorField:
        if not 0 <= index < self.n:
            raise IndexError(f"corpus index {index} out of range [0, {self.n})")
        return init_random_divfree(
            self.grid,
            spectrum_slope=self.slopes[index % len(self.slopes)],
            seed=self.base_seed + index,
            amplitude=self.amplitude,
            k_lo=self.k_lo,
            k_hi=self.k_hi,
        )

    def fields(self) -> Iterator[SpectralVectorField]:
        for index in range(self.n):
            logger.debug("corpus field %d/%d", index + 1, self.n)
            yield self.field(index)

    def to_dict(self) -> dict[str, Any]:
        data = asdict(self)
        data["slopes"] = list(self.slopes)
        return data


def cache_dir() -> Path:
    env_dir = os.environ.get(_CACHE_DIR_ENV)
    if env_dir:
        return Path(env_dir).expanduser()
    return Path(tempfile.gettempdir()) / "anisolp" / "corpus_cache"


def caching_enabled() -> bool:
    return os.environ.get(_CACHE_TOGGLE_ENV, "1").strip() != "0"


def _open_cache() -> Cache:
    return Cache(str(cache_dir()))


def cached(payload: dict[str, Any], compute: Callable[[], T], *, use_cache: bool = True) -> T:
    """Return the stored result for ``payload`` or compute and store it."""
    if not use_cache or not caching_enabled():
        return compute()
    key = digest_payload(payload)
    try:
        cache = _open_cache()
    except OSError as exc:
        logger.warning("result cache unavailable at %s: %s", cache_dir(), exc)
        return compute()
    try:
        hit = cache.get(key)
        if hit is not None:
            logger.debug("cache hit %s", key)
            return hit
        value = compute()
        cache.set(key, value)
        return value
    finally:
        cache.close()
