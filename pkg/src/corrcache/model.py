"""Library model: files composed of shared subfiles, grouped into sublibraries.

A library of N files is built from 2^N - 1 subfiles, one per nonempty subset
S of [N]; file i is the concatenation of every subfile whose index set
contains i.  Sublibrary ell collects the subfiles with |S| = ell, all of a
common rate.  The per-file rate therefore satisfies

    R = sum_ell  C(N-1, ell-1) * R_ell.
"""

import itertools
import math
from dataclasses import dataclass

__all__ = [
    "Subfile",
    "binom",
    "AlphaProfile",
    "LibraryConfig",
    "DemandVector",
    "rates_from_alpha",
    "sublibrary_subfiles",
]

# Subfiles are sorted tuples of 1-based file indices, e.g. (1, 3).
Subfile = tuple[int, ...]

REL_TOL = 1e-12


def binom(n: int, k: int) -> int:
    """Binomial coefficient with the zero convention outside 0 <= k <= n."""
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


@dataclass(frozen=True)
class AlphaProfile:
    """Fraction of each file's rate contributed by every sublibrary.

    alpha[ell-1] is the fraction of a file's rate carried by its sublibrary-ell
    subfiles.  Entries are nonnegative and sum to one.
    """

    alpha: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "alpha", tuple(float(a) for a in self.alpha))
        if not self.alpha:
            raise ValueError("alpha profile must be nonempty")
        if any(a < 0.0 for a in self.alpha):
            raise ValueError("alpha entries must be nonnegative")
        total = sum(self.alpha)
        if abs(total - 1.0) > REL_TOL:
            raise ValueError(f"alpha entries must sum to 1, got {total}")

    def __len__(self) -> int:
        return len(self.alpha)


@dataclass(frozen=True)
class LibraryConfig:
    """Immutable problem instance: library composition, users, channel, cache.

    rates[ell-1] is the rate of one subfile of sublibrary ell (zero when the
    sublibrary is unused).  inv_gain_sq[k-1] = 1/h_k^2 for user k; users are
    ordered weakest first, so the sequence is non-increasing.  M is the cache
    capacity of every user, in the same units as R.
    """

    N: int
    K: int
    R: float
    rates: tuple[float, ...]
    inv_gain_sq: tuple[float, ...]
    M: float

    def __post_init__(self):
        object.__setattr__(self, "rates", tuple(float(r) for r in self.rates))
        object.__setattr__(
            self, "inv_gain_sq", tuple(float(g) for g in self.inv_gain_sq)
        )
        if self.N < 1 or self.K < 1:
            raise ValueError("N and K must be positive")
        if len(self.rates) != self.N:
            raise ValueError("rates must have one entry per sublibrary")
        if any(r < 0.0 for r in self.rates):
            raise ValueError("subfile rates must be nonnegative")
        if self.M < 0.0:
            raise ValueError("cache capacity must be nonnegative")
        if len(self.inv_gain_sq) != self.K:
            raise ValueError("inv_gain_sq must have one entry per user")
        if any(g <= 0.0 for g in self.inv_gain_sq):
            raise ValueError("inverse channel gains must be positive")
        for a, b in itertools.pairwise(self.inv_gain_sq):
            if b > a * (1.0 + REL_TOL):
                raise ValueError("users must be ordered weakest first")
        # File rate must be consistent with the sublibrary decomposition.
        total = sum(
            binom(self.N - 1, ell - 1) * r
            for ell, r in enumerate(self.rates, start=1)
        )
        if abs(total - self.R) > REL_TOL * max(1.0, abs(self.R)):
            raise ValueError(
                f"sublibrary rates reconstruct R={total}, expected {self.R}"
            )

    @classmethod
    def from_alpha(
        cls,
        N: int,
        K: int,
        R: float,
        M: float,
        alpha,
        inv_gain_sq,
    ) -> "LibraryConfig":
        rates = rates_from_alpha(alpha, R, N)
        return cls(N=N, K=K, R=R, rates=rates, inv_gain_sq=tuple(inv_gain_sq), M=M)

    def active_sublibraries(self) -> tuple[int, ...]:
        """1-based indices of sublibraries with a positive subfile rate."""
        return tuple(ell for ell, r in enumerate(self.rates, start=1) if r > 0.0)


@dataclass(frozen=True)
class DemandVector:
    """One demanded file index per user, user 1 (weakest) first."""

    demands: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "demands", tuple(int(d) for d in self.demands))
        if not self.demands:
            raise ValueError("demand vector must be nonempty")
        if any(d < 1 for d in self.demands):
            raise ValueError("file indices are 1-based")

    @property
    def distinct(self) -> frozenset[int]:
        return frozenset(self.demands)

    def __len__(self) -> int:
        return len(self.demands)


def rates_from_alpha(alpha, R: float, N: int) -> tuple[float, ...]:
    """Convert a per-file rate split into per-subfile sublibrary rates.

    Each file owns C(N-1, ell-1) subfiles of sublibrary ell, so a fraction
    alpha_ell of the file rate spreads as R_ell = alpha_ell * R / C(N-1, ell-1)
    per subfile.
    """
    profile = alpha if isinstance(alpha, AlphaProfile) else AlphaProfile(tuple(alpha))
    if len(profile) != N:
        raise ValueError(f"alpha must have {N} entries, got {len(profile)}")
    if R < 0.0:
        raise ValueError("file rate must be nonnegative")
    return tuple(
        profile.alpha[ell - 1] * R / binom(N - 1, ell - 1) for ell in range(1, N + 1)
    )


def sublibrary_subfiles(N: int, ell: int) -> list[Subfile]:
    """All subfile index sets of sublibrary ell, in lexicographic order."""
    if not 1 <= ell <= N:
        raise ValueError(f"sublibrary index must be in [1, {N}]")
    return [tuple(c) for c in itertools.combinations(range(1, N + 1), ell)]
