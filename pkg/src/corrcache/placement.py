"""Cache placement: memory sharing between two integer packetizations.

A sublibrary granted cache fraction pi_ell yields the (generally fractional)
parameter t = K * pi_ell * M / (C(N, ell) * R_ell).  Each subfile is cut into
a part A packetized over user subsets of size floor(t) and a part B over
subsets of size floor(t) + 1, with rates chosen so the cached fraction per
user is exactly t/K of the subfile.  Integer t degenerates to part A alone.
"""

from dataclasses import dataclass
from itertools import combinations
from typing import NamedTuple

from .model import LibraryConfig, Subfile, binom, sublibrary_subfiles

__all__ = [
    "CacheAllocation",
    "PartSplit",
    "PacketId",
    "CachePlacement",
    "cache_parameters",
    "build_placement",
]

# Fractional t within this distance of an integer is snapped to it; float
# noise would otherwise create a spurious near-zero-rate second part.
T_SNAP = 1e-9


@dataclass(frozen=True)
class CacheAllocation:
    """Per-sublibrary cache fractions pi, with sum(pi) <= 1."""

    pi: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "pi", tuple(float(p) for p in self.pi))
        if any(p < 0.0 or p > 1.0 + 1e-12 for p in self.pi):
            raise ValueError("cache fractions must lie in [0, 1]")
        if sum(self.pi) > 1.0 + 1e-9:
            raise ValueError("cache fractions exceed the cache budget")


class PartSplit(NamedTuple):
    """Packetization of one sublibrary under memory sharing."""

    ell: int
    t: float
    tA: int
    tB: int
    rateA: float          # rate of part A of each subfile
    rateB: float          # rate of part B; zero when t is an integer
    packet_rateA: float   # rateA / C(K, tA)
    packet_rateB: float   # rateB / C(K, tB), zero when part B is absent

    def parts(self) -> list[tuple[str, int, float]]:
        """Active (tag, subset size, packet rate) entries, part A first."""
        out = [("A", self.tA, self.packet_rateA)]
        if self.rateB > 0.0:
            out.append(("B", self.tB, self.packet_rateB))
        return out


class PacketId(NamedTuple):
    """One packet: a subfile part slice held by a fixed user subset."""

    subfile: Subfile
    part: str
    holders: tuple[int, ...]


@dataclass(frozen=True)
class CachePlacement:
    """Full packetization plus the resulting per-user cache contents."""

    splits: tuple[PartSplit, ...]
    caches: tuple[frozenset[PacketId], ...]

    def split_for(self, ell: int) -> PartSplit:
        for s in self.splits:
            if s.ell == ell:
                return s
        raise KeyError(f"sublibrary {ell} has no placement")


def _snap(t: float) -> float:
    nearest = round(t)
    return float(nearest) if abs(t - nearest) < T_SNAP else t


def cache_parameters(
    config: LibraryConfig, alloc: CacheAllocation
) -> list[PartSplit]:
    """Per-sublibrary memory-sharing parameters for an allocation.

    Sublibraries with zero rate are omitted.  t is clamped to [0, K]: capacity
    beyond full caching of a sublibrary is simply wasted.
    """
    if len(alloc.pi) != config.N:
        raise ValueError("allocation must cover every sublibrary")
    K = config.K
    splits = []
    for ell, R_ell in enumerate(config.rates, start=1):
        if R_ell <= 0.0:
            continue
        t = K * alloc.pi[ell - 1] * config.M / (binom(config.N, ell) * R_ell)
        t = _snap(min(max(t, 0.0), float(K)))
        tA = int(t)
        tB = tA + 1
        rateB = (t - tA) * R_ell
        rateA = R_ell - rateB
        splits.append(
            PartSplit(
                ell=ell,
                t=t,
                tA=tA,
                tB=tB,
                rateA=rateA,
                rateB=rateB,
                packet_rateA=rateA / binom(K, tA),
                packet_rateB=rateB / binom(K, tB) if rateB > 0.0 else 0.0,
            )
        )
    return splits


def build_placement(config: LibraryConfig, alloc: CacheAllocation) -> CachePlacement:
    """Materialize every packet and each user's cache contents.

    Every subfile of an active sublibrary is cut identically: one part-A
    packet per size-tA user subset and, for fractional t, one part-B packet
    per size-tB subset.  User k caches exactly the packets whose holder set
    contains k, a fraction t/K of each subfile.
    """
    splits = cache_parameters(config, alloc)
    caches: list[set[PacketId]] = [set() for _ in range(config.K)]
    users = range(1, config.K + 1)
    for split in splits:
        subfiles = sublibrary_subfiles(config.N, split.ell)
        for part, size, _rate in split.parts():
            for holders in combinations(users, size):
                packets = [PacketId(s, part, holders) for s in subfiles]
                for k in holders:
                    caches[k - 1].update(packets)
    return CachePlacement(
        splits=tuple(splits),
        caches=tuple(frozenset(c) for c in caches),
    )
