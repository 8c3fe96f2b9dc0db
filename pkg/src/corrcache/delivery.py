"""Delivery: demand grouping and leader-based XOR message generation.

For a demand vector d the server handles each sublibrary ell and each overlap
count r separately: the requested subfiles with exactly r demanded indices are
partitioned into groups in which every user is assigned at most one subfile,
and each group is served like a single-demand coded-caching round.  Messages
for group assignment (S_1..S_K) with cache parameter t are the XORs

    xor_{j in U+{k}}  packet(S_j, part, (U+{k}) - {j})

over all subsets U of the stronger users [k+1..K] with |U| = t such that
U+{k} touches a leader (the weakest user of each distinct assigned subfile).
The XOR for U+{k} is broadcast at superposition level k, so every user j >= k
can decode it.
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import NamedTuple

from .model import DemandVector, LibraryConfig, Subfile, binom, sublibrary_subfiles
from .placement import CachePlacement, PacketId

__all__ = [
    "GroupDemand",
    "XorMessage",
    "MessageLedger",
    "requested_subfiles",
    "group",
    "single_demand",
    "build_user_messages",
    "rate_profile",
    "demand_rate_profile",
]


@dataclass(frozen=True)
class GroupDemand:
    """Per-user subfile assignment of one group; None marks an idle user."""

    assignment: tuple[Subfile | None, ...]


class XorMessage(NamedTuple):
    """One broadcast XOR: operand packets, generating user subset, level."""

    level: int
    members: tuple[int, ...]
    operands: frozenset[PacketId]
    rate: float


@dataclass(frozen=True)
class MessageLedger:
    """All messages of one delivery round, bucketed by superposition level."""

    levels: tuple[tuple[XorMessage, ...], ...]

    @property
    def rho(self) -> tuple[float, ...]:
        return tuple(sum(m.rate for m in lvl) for lvl in self.levels)

    def all_messages(self) -> list[XorMessage]:
        return [m for lvl in self.levels for m in lvl]


def _as_demands(demands) -> tuple[int, ...]:
    if isinstance(demands, DemandVector):
        return demands.demands
    return tuple(int(d) for d in demands)


def requested_subfiles(N: int, distinct, ell: int, r: int) -> list[Subfile]:
    """Sublibrary-ell subfiles sharing exactly r indices with the demand set."""
    dset = frozenset(distinct)
    if r < 0 or r > ell:
        return []
    return [s for s in sublibrary_subfiles(N, ell) if len(dset.intersection(s)) == r]


def _group_pool(pool: list[Subfile], dset: frozenset[int], r: int) -> list[dict]:
    """Group a request pool at the demand-value level.

    Returns one {demand value -> subfile} map per group.  Greedy rounds: each
    round starts from the full demand set F and repeatedly consumes a subfile
    whose demanded indices all lie in F (ties broken lexicographically).  When
    fewer than r unserved demands remain, a straddling subfile covering all of
    them is consumed and its leftover demanded indices carry over to open the
    next round.  Every (subfile, demanded index) incidence is served exactly
    once, so a user is assigned each requested subfile in exactly one group.
    """
    pool = sorted(pool)
    groups: list[dict] = []
    carry_subfile: Subfile | None = None
    carry_values: frozenset[int] = frozenset()
    while pool or carry_values:
        remaining = set(dset)
        amap: dict[int, Subfile] = {}
        while remaining:
            if len(remaining) >= r:
                if carry_values:
                    for v in carry_values:
                        amap[v] = carry_subfile
                    remaining -= carry_values
                    carry_subfile, carry_values = None, frozenset()
                    continue
                pick = next(
                    (s for s in pool if dset.intersection(s) <= remaining), None
                )
                if pick is None:
                    break
                pool.remove(pick)
                for v in dset.intersection(pick):
                    amap[v] = pick
                remaining -= set(pick)
            else:
                pick = next((s for s in pool if remaining <= set(s)), None)
                if pick is None:
                    break
                pool.remove(pick)
                for v in remaining:
                    amap[v] = pick
                carry_subfile = pick
                carry_values = frozenset(dset.intersection(pick)) - remaining
                remaining.clear()
        if amap:
            groups.append(amap)
    return groups


@lru_cache(maxsize=4096)
def _group_maps(
    N: int, distinct: tuple[int, ...], ell: int, r: int
) -> tuple[dict, ...]:
    """Cached value-level grouping of the full overlap-r request set."""
    dset = frozenset(distinct)
    pool = requested_subfiles(N, distinct, ell, r)
    return tuple(_group_pool(pool, dset, r))


def group(subfiles, demands, ell: int, r: int) -> list[GroupDemand]:
    """Partition requested subfiles into single-demand groups.

    Every subfile appears in at least one group; within a group each user is
    assigned at most one subfile, always one containing its demand.
    """
    d = _as_demands(demands)
    dset = frozenset(d)
    pool = [tuple(s) for s in subfiles]
    for s in pool:
        if len(s) != ell:
            raise ValueError(f"subfile {s} is not in sublibrary {ell}")
        if len(dset.intersection(s)) != r:
            raise ValueError(f"subfile {s} does not have demand overlap {r}")
    maps = _group_pool(pool, dset, r)
    return [GroupDemand(assignment=tuple(amap.get(dk) for dk in d)) for amap in maps]


def single_demand(
    part: str,
    assignment,
    t: int,
    K: int,
    packet_rate: float = 1.0,
) -> tuple[tuple[XorMessage, ...], ...]:
    """Messages of one group for one packetization parameter t.

    Leaders are the users introducing each distinct assigned subfile (idle
    users never lead).  For every user k and every size-t subset U of the
    stronger users such that U+{k} contains a leader, one XOR over the
    assigned members of U+{k} is emitted at level k.  Idle members contribute
    no operand but still enlarge the holder sets.  Returns a per-level tuple.
    """
    assign = (
        assignment.assignment
        if isinstance(assignment, GroupDemand)
        else tuple(assignment)
    )
    if len(assign) != K:
        raise ValueError("assignment must cover every user")
    if not 0 <= t <= K:
        raise ValueError("t must lie in [0, K]")
    leaders: set[int] = set()
    seen: set[Subfile] = set()
    for k, s in enumerate(assign, start=1):
        if s is not None and s not in seen:
            leaders.add(k)
            seen.add(s)
    per_level: list[list[XorMessage]] = [[] for _ in range(K)]
    for k in range(1, K + 1):
        for u in combinations(range(k + 1, K + 1), t):
            members = (k,) + u
            if leaders.isdisjoint(members):
                continue
            operands = frozenset(
                PacketId(
                    assign[j - 1],
                    part,
                    tuple(i for i in members if i != j),
                )
                for j in members
                if assign[j - 1] is not None
            )
            if not operands:
                continue
            per_level[k - 1].append(
                XorMessage(
                    level=k, members=members, operands=operands, rate=packet_rate
                )
            )
    return tuple(tuple(lvl) for lvl in per_level)


def build_user_messages(
    demands, placement: CachePlacement, config: LibraryConfig
) -> MessageLedger:
    """Full delivery round: all XOR messages for one demand vector."""
    d = _as_demands(demands)
    if len(d) != config.K:
        raise ValueError("demand vector must have one entry per user")
    if any(not 1 <= dk <= config.N for dk in d):
        raise ValueError("demanded file index out of range")
    dset = tuple(sorted(set(d)))
    per_level: list[list[XorMessage]] = [[] for _ in range(config.K)]
    for split in placement.splits:
        for r in range(1, min(split.ell, len(dset)) + 1):
            for amap in _group_maps(config.N, dset, split.ell, r):
                assign = tuple(amap.get(dk) for dk in d)
                for part, size, rate in split.parts():
                    levels = single_demand(part, assign, size, config.K, rate)
                    for k in range(config.K):
                        per_level[k].extend(levels[k])
    return MessageLedger(levels=tuple(tuple(lvl) for lvl in per_level))


def rate_profile(ledger: MessageLedger) -> tuple[float, ...]:
    """Total broadcast rate carried at each superposition level."""
    return ledger.rho


def demand_group_leaders(config: LibraryConfig, demands) -> list[tuple[int, int]]:
    """(sublibrary, leader bitmask) of every group serving one demand vector.

    Bit k-1 of the mask marks user k as a leader.  Together with the part
    sizes this fully determines the per-level message counts, which is what
    the worst-case power search needs.
    """
    d = _as_demands(demands)
    dset = tuple(sorted(set(d)))
    out = []
    for ell in config.active_sublibraries():
        for r in range(1, min(ell, len(dset)) + 1):
            for amap in _group_maps(config.N, dset, ell, r):
                flags = _leader_flags(amap, d)
                mask = 0
                for i, f in enumerate(flags):
                    if f:
                        mask |= 1 << i
                out.append((ell, mask))
    return out


def demand_rate_profile(config: LibraryConfig, splits, demands) -> tuple[float, ...]:
    """Rate profile of one demand vector without materializing messages.

    Counts the emitted XORs per level directly: a group with leader set L
    sends C(K-k, t) messages at level k when k is a leader, and
    C(K-k, t) - C(K-k-|L intersect [k+1..K]|, t) otherwise.  Matches the rate
    profile of the explicit ledger.
    """
    d = _as_demands(demands)
    K = config.K
    dset = tuple(sorted(set(d)))
    rho = [0.0] * K
    for split in splits:
        for r in range(1, min(split.ell, len(dset)) + 1):
            for amap in _group_maps(config.N, dset, split.ell, r):
                leaders = _leader_flags(amap, d)
                for _part, size, rate in split.parts():
                    stronger_leaders = 0
                    for k in range(K, 0, -1):
                        total = binom(K - k, size)
                        if leaders[k - 1]:
                            count = total
                        else:
                            count = total - binom(K - k - stronger_leaders, size)
                        if count:
                            rho[k - 1] += count * rate
                        if leaders[k - 1]:
                            stronger_leaders += 1
    return tuple(rho)


def _leader_flags(amap: dict, demands: tuple[int, ...]) -> list[bool]:
    flags = [False] * len(demands)
    seen: set[Subfile] = set()
    for k, dk in enumerate(demands):
        s = amap.get(dk)
        if s is not None and s not in seen:
            flags[k] = True
            seen.add(s)
    return flags
