"""Transmit power over the degraded broadcast channel: solver and bounds.

Superposition coding with successive cancellation supports per-level rates
rho_k <= (1/2) log2(1 + h_k^2 P_k / (1 + h_k^2 sum_{j>k} P_j)).  Solving with
equality from the strongest user down gives the minimum total power

    P = sum_k (2^{2 rho_k} - 1) / h_k^2 * prod_{j<k} 2^{2 rho_j}.

An alternative product with an extra 1/h_j^2 factor per term is kept behind
an as_printed flag for side-by-side reporting; it does not solve the rate
constraints and is never the default.
"""

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import sparse

from .delivery import demand_group_leaders
from .model import DemandVector, LibraryConfig, binom
from .placement import CacheAllocation, cache_parameters

__all__ = [
    "PowerReport",
    "ClosedFormBound",
    "min_power",
    "closed_form_power",
    "lower_bound",
    "lower_bound_rates",
    "closed_form_upper",
    "enumerate_demands",
    "peak_power",
    "optimize_allocation",
]

# Full demand enumeration is refused above this size unless the caller
# explicitly opts into sampling via max_demands.
ENUMERATION_GUARD = 10**6


@dataclass(frozen=True)
class PowerReport:
    """Minimum-power solution for one rate profile."""

    total: float
    per_level: tuple[float, ...]
    rho: tuple[float, ...]
    worst_demand: DemandVector | None = None
    variant: str = "corrected"


@dataclass(frozen=True)
class ClosedFormBound:
    """Closed-form upper bound next to the constructive scheme's peak power."""

    value: float
    rho: tuple[float, ...]
    degenerate: tuple[int, ...]
    constructive: float
    difference: float


def _validate_rates_gains(rho, inv_gain_sq) -> tuple[tuple[float, ...], tuple[float, ...]]:
    r = tuple(float(x) for x in rho)
    g = tuple(float(x) for x in inv_gain_sq)
    if len(r) != len(g):
        raise ValueError("need one channel gain per rate entry")
    if any(x < 0.0 for x in r):
        raise ValueError("rates must be nonnegative")
    if any(x <= 0.0 for x in g):
        raise ValueError("inverse channel gains must be positive")
    return r, g


def min_power(rho, inv_gain_sq, worst_demand: DemandVector | None = None) -> PowerReport:
    """Minimum total power supporting a per-level rate profile.

    Solves the rate constraints with equality from the last (strongest)
    level upward: level k needs (2^{2 rho_k} - 1) times its inverse gain
    plus the interference power accumulated so far.
    """
    r, g = _validate_rates_gains(rho, inv_gain_sq)
    per_level = [0.0] * len(r)
    interference = 0.0
    for k in range(len(r), 0, -1):
        e = 2.0 ** (2.0 * r[k - 1])
        p = (e - 1.0) * (g[k - 1] + interference)
        per_level[k - 1] = p
        interference += p
    return PowerReport(
        total=interference,
        per_level=tuple(per_level),
        rho=r,
        worst_demand=worst_demand,
    )


def closed_form_power(rho, inv_gain_sq, as_printed: bool = False) -> float:
    """Direct product form of the minimum power.

    With as_printed=True each earlier level also contributes its inverse
    gain inside the running product; kept for reporting only.
    """
    r, g = _validate_rates_gains(rho, inv_gain_sq)
    total = 0.0
    prefix = 1.0
    for k in range(len(r)):
        e = 2.0 ** (2.0 * r[k])
        total += (e - 1.0) * g[k] * prefix
        prefix *= e * g[k] if as_printed else e
    return total


def lower_bound_rates(config: LibraryConfig) -> tuple[float, ...]:
    """Per-level rate floor: residual uncacheable content seen by level k.

    Level k must carry at least sum_{l=0}^{N-k} C(N-k, l) R_{l+1} - M, the
    joint rate of the subfiles a genie-aided user k still needs, floored at
    zero.  Only min(N, K) levels are active.
    """
    m = min(config.N, config.K)
    out = []
    for k in range(1, m + 1):
        s = sum(
            binom(config.N - k, l) * config.rates[l] for l in range(config.N - k + 1)
        )
        out.append(max(s - config.M, 0.0))
    return tuple(out)


def lower_bound(config: LibraryConfig, as_printed: bool = False) -> float:
    """Converse bound on the peak transmit power for any caching scheme."""
    rho = lower_bound_rates(config)
    g = config.inv_gain_sq[: len(rho)]
    if as_printed:
        return closed_form_power(rho, g, as_printed=True)
    return min_power(rho, g).total


@lru_cache(maxsize=64)
def _level_counts(K: int, leader_mask: int, t: int) -> tuple[int, ...]:
    """Per-level message counts of one group for subset size t.

    Level k sends one XOR per size-t subset of [k+1..K] such that the subset
    plus k touches a leader: all C(K-k, t) of them when k leads, otherwise
    all minus the subsets avoiding every stronger leader.
    """
    counts = [0] * K
    stronger_leaders = 0
    for k in range(K, 0, -1):
        total = binom(K - k, t)
        if leader_mask >> (k - 1) & 1:
            counts[k - 1] = total
            stronger_leaders += 1
        else:
            counts[k - 1] = total - binom(K - k - stronger_leaders, t)
    return tuple(counts)


@dataclass(frozen=True)
class _DemandStructure:
    """Demand enumeration compressed to group-profile multiplicities."""

    demands: tuple[tuple[int, ...], ...]
    columns: tuple[tuple[int, int], ...]  # (sublibrary, leader mask)
    matrix: object  # csr_matrix, demands x columns


def enumerate_demands(
    N: int, K: int, max_demands: int | None = None, seed: int = 0
) -> tuple[tuple[int, ...], ...]:
    """All demand vectors, or a seeded sample when the space is too large."""
    total = N**K
    if max_demands is not None and max_demands < total:
        rng = np.random.default_rng(seed)
        draws = rng.integers(1, N + 1, size=(max_demands, K))
        return tuple(tuple(int(x) for x in row) for row in draws)
    if total > ENUMERATION_GUARD:
        raise ValueError(
            f"{total} demand vectors exceed the enumeration guard; "
            "pass max_demands to sample"
        )
    return tuple(itertools.product(range(1, N + 1), repeat=K))


@lru_cache(maxsize=32)
def _demand_structure(
    N: int,
    K: int,
    active: tuple[int, ...],
    max_demands: int | None,
    seed: int,
) -> _DemandStructure:
    # The group decomposition depends on the config only through N, K and
    # which sublibraries are active, so sweeps over rate splits reuse it.
    probe = LibraryConfig(
        N=N,
        K=K,
        R=float(sum(binom(N - 1, ell - 1) for ell in active)),
        rates=tuple(1.0 if ell in active else 0.0 for ell in range(1, N + 1)),
        inv_gain_sq=(1.0,) * K,
        M=0.0,
    )
    demands = enumerate_demands(N, K, max_demands, seed)
    col_index: dict[tuple[int, int], int] = {}
    rows: list[int] = []
    cols: list[int] = []
    data: list[float] = []
    for i, d in enumerate(demands):
        tally: dict[tuple[int, int], int] = {}
        for key in demand_group_leaders(probe, d):
            tally[key] = tally.get(key, 0) + 1
        for key, mult in tally.items():
            ci = col_index.setdefault(key, len(col_index))
            rows.append(i)
            cols.append(ci)
            data.append(float(mult))
    matrix = sparse.csr_matrix(
        (data, (rows, cols)), shape=(len(demands), len(col_index))
    )
    columns = tuple(sorted(col_index, key=col_index.get))
    return _DemandStructure(demands=demands, columns=columns, matrix=matrix)


def _rho_matrix(structure: _DemandStructure, config: LibraryConfig, splits) -> np.ndarray:
    K = config.K
    by_ell = {s.ell: s for s in splits}
    coef = np.zeros((len(structure.columns), K))
    for ci, (ell, mask) in enumerate(structure.columns):
        split = by_ell.get(ell)
        if split is None:
            continue
        for _part, size, rate in split.parts():
            coef[ci] += rate * np.asarray(_level_counts(K, mask, size))
    if coef.size == 0:
        return np.zeros((len(structure.demands), K))
    return structure.matrix.dot(coef)


def _total_powers(rho: np.ndarray, inv_gain_sq, as_printed: bool) -> np.ndarray:
    g = np.asarray(inv_gain_sq)
    e = np.exp2(2.0 * rho)
    step = e * g if as_printed else e
    prefix = np.ones_like(e)
    if e.shape[1] > 1:
        prefix[:, 1:] = np.cumprod(step[:, :-1], axis=1)
    return ((e - 1.0) * g * prefix).sum(axis=1)


def peak_power(
    config: LibraryConfig,
    alloc: CacheAllocation,
    max_demands: int | None = None,
    seed: int = 0,
    as_printed: bool = False,
) -> PowerReport:
    """Worst-case minimum power of the constructive scheme over all demands.

    Enumerates every demand vector (or a seeded sample beyond the guard),
    evaluates the delivery rate profile and its minimum power, and returns
    the maximum with the first demand attaining it.
    """
    structure = _demand_structure(
        config.N, config.K, config.active_sublibraries(), max_demands, seed
    )
    splits = cache_parameters(config, alloc)
    rho = _rho_matrix(structure, config, splits)
    totals = _total_powers(rho, config.inv_gain_sq, as_printed)
    idx = int(np.argmax(totals))
    worst = DemandVector(structure.demands[idx])
    rho_worst = tuple(float(x) for x in rho[idx])
    if as_printed:
        return PowerReport(
            total=float(totals[idx]),
            per_level=(),
            rho=rho_worst,
            worst_demand=worst,
            variant="as-printed",
        )
    report = min_power(rho_worst, config.inv_gain_sq, worst_demand=worst)
    return report


def closed_form_upper(
    config: LibraryConfig,
    alloc: CacheAllocation,
    constructive: PowerReport | None = None,
    max_demands: int | None = None,
) -> ClosedFormBound:
    """Demand-agnostic closed-form power upper bound for an allocation.

    Per level k the bound charges, for every sublibrary and every overlap
    count r, C(N-K, ell-r) * C(min(N,K)-1, r-1) copies of the memory-sharing
    level share

        gamma = rateA * C(K-k, tA)/C(K, tA) + rateB * C(K-k, tB)/C(K, tB),

    counted only for k <= ceil(min(N,K)/r + 1).  Integer t collapses gamma to
    its single-part limit; such sublibraries are flagged as degenerate since
    the raw interpolation coefficient is singular there.  The constructive
    peak power for the same allocation is reported alongside, as the scheme
    itself is the authoritative bound.
    """
    m = min(config.N, config.K)
    splits = cache_parameters(config, alloc)
    degenerate = tuple(s.ell for s in splits if s.rateB == 0.0)
    rho = _closed_form_rho(config, splits)
    value = closed_form_power(rho, config.inv_gain_sq[:m])
    if constructive is None:
        constructive = peak_power(config, alloc, max_demands=max_demands)
    return ClosedFormBound(
        value=value,
        rho=rho,
        degenerate=degenerate,
        constructive=constructive.total,
        difference=value - constructive.total,
    )


def _closed_form_rho(config: LibraryConfig, splits) -> tuple[float, ...]:
    m = min(config.N, config.K)
    N, K = config.N, config.K
    rho = []
    for k in range(1, m + 1):
        acc = 0.0
        for s in splits:
            # parts() yields packet rates, i.e. part rate over C(K, size), so
            # each term below is already rate * C(K-k, size) / C(K, size).
            gamma = 0.0
            for _part, size, rate in s.parts():
                gamma += rate * binom(K - k, size)
            for r in range(max(s.ell - N + K, 1), min(s.ell, K) + 1):
                if k > (m + 2 * r - 1) // r:
                    continue
                weight = binom(N - K, s.ell - r) * binom(m - 1, r - 1)
                if weight:
                    acc += weight * gamma
        rho.append(acc)
    return tuple(rho)


def _simplex_lattice(dims: int, resolution: int):
    """Lattice points of the unit simplex face sum(x) = 1, lexicographic."""
    for dividers in itertools.combinations(range(resolution + dims - 1), dims - 1):
        parts = []
        prev = -1
        for pos in dividers:
            parts.append(pos - prev - 1)
            prev = pos
        parts.append(resolution + dims - 1 - prev - 1)
        yield tuple(p / resolution for p in parts)


def _project_capped_simplex(x: np.ndarray) -> np.ndarray:
    """Euclidean projection onto {y >= 0, sum(y) <= 1}."""
    y = np.clip(x, 0.0, None)
    if y.sum() <= 1.0:
        return y
    u = np.sort(x)[::-1]
    css = np.cumsum(u) - 1.0
    idx = np.arange(1, len(x) + 1)
    cond = u - css / idx > 0
    j = int(idx[cond][-1])
    theta = css[j - 1] / j
    return np.clip(x - theta, 0.0, None)


def optimize_allocation(
    config: LibraryConfig,
    method: str = "local",
    resolution: int = 20,
    max_demands: int | None = None,
    seed: int = 0,
    as_printed: bool = False,
) -> tuple[CacheAllocation, PowerReport]:
    """Search the cache-split simplex for the lowest worst-case power.

    "grid" sweeps the uniform simplex lattice over the active sublibraries at
    the given resolution; "local" additionally refines the best lattice point
    with a deterministic compass search (projected onto the simplex, halving
    steps).  Inactive sublibraries are pinned to zero.
    """
    if method not in ("grid", "local"):
        raise ValueError(f"unknown optimizer method {method!r}")
    if resolution < 1:
        raise ValueError("resolution must be positive")
    active = config.active_sublibraries()
    structure = _demand_structure(config.N, config.K, active, max_demands, seed)

    def expand(point) -> CacheAllocation:
        pi = [0.0] * config.N
        for ell, v in zip(active, point):
            pi[ell - 1] = float(v)
        return CacheAllocation(tuple(pi))

    cache: dict[tuple, float] = {}

    def evaluate(point) -> float:
        key = tuple(round(float(v), 12) for v in point)
        hit = cache.get(key)
        if hit is not None:
            return hit
        splits = cache_parameters(config, expand(key))
        rho = _rho_matrix(structure, config, splits)
        val = float(_total_powers(rho, config.inv_gain_sq, as_printed).max())
        cache[key] = val
        return val

    if not active:
        alloc = expand(())
        return alloc, peak_power(config, alloc, max_demands, seed, as_printed)

    best_point = None
    best_value = None
    for point in _simplex_lattice(len(active), resolution):
        v = evaluate(point)
        if best_value is None or v < best_value:
            best_point, best_value = point, v

    if method == "local":
        x = np.asarray(best_point)
        step = 1.0 / (2.0 * resolution)
        while step >= 1e-5:
            moved = False
            for i in range(len(active)):
                for sign in (1.0, -1.0):
                    cand = x.copy()
                    cand[i] += sign * step
                    cand = _project_capped_simplex(cand)
                    v = evaluate(cand)
                    if v < best_value - 1e-15:
                        x, best_value = cand, v
                        moved = True
            if not moved:
                step /= 2.0
        best_point = tuple(float(v) for v in x)

    alloc = expand(best_point)
    report = peak_power(config, alloc, max_demands, seed, as_printed)
    return alloc, report
