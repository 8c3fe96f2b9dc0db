"""Decodability verification by linear algebra over GF(2).

Every packet is one coordinate; a cached packet is a unit vector and a
broadcast XOR is the indicator vector of its operands.  User k succeeds when
every packet of every subfile containing its demand lies in the span of its
cache and the messages of levels 1..k.  XORs never mix sublibraries or
packetization parts, so checks run per (sublibrary, part) block.
"""

import itertools
from dataclasses import dataclass

from .delivery import build_user_messages
from .model import LibraryConfig, sublibrary_subfiles
from .placement import CacheAllocation, PacketId, build_placement
from .power import enumerate_demands

__all__ = [
    "decodable",
    "VerificationFailure",
    "VerificationReport",
    "verify_all",
]


def _insert_row(basis: dict[int, int], row: int) -> None:
    # Echelon basis keyed by pivot bit; rows reduce against it on insert.
    while row:
        pivot = row.bit_length() - 1
        other = basis.get(pivot)
        if other is None:
            basis[pivot] = row
            return
        row ^= other


def _in_span(basis: dict[int, int], vec: int) -> bool:
    while vec:
        pivot = vec.bit_length() - 1
        other = basis.get(pivot)
        if other is None:
            return False
        vec ^= other
    return True


def _missing_packets(needed, cached, message_operands) -> list:
    """Needed packets outside the GF(2) span of cache and messages."""
    columns: dict[PacketId, int] = {}

    def col(p: PacketId) -> int:
        idx = columns.get(p)
        if idx is None:
            idx = len(columns)
            columns[p] = idx
        return idx

    rows = []
    for operands in message_operands:
        vec = 0
        for p in operands:
            vec |= 1 << col(p)
        rows.append(vec)
    targets = [(p, 1 << col(p)) for p in needed]
    basis: dict[int, int] = {}
    for p in cached:
        if p in columns:
            _insert_row(basis, 1 << columns[p])
    for vec in rows:
        _insert_row(basis, vec)
    return [p for p, vec in targets if not _in_span(basis, vec)]


def decodable(needed, cached, messages) -> bool:
    """True when every needed packet is recoverable from cache plus XORs.

    needed and cached are iterables of PacketId; messages are XorMessage
    objects (or anything with .operands).  Uses Gaussian elimination, so
    combinations of several messages count, not just peeling.
    """
    operand_sets = [m.operands for m in messages]
    return not _missing_packets(list(needed), set(cached), operand_sets)


@dataclass(frozen=True)
class VerificationFailure:
    demand: tuple[int, ...]
    user: int
    ell: int
    part: str
    packet: PacketId

    def describe(self) -> str:
        sub = "".join(str(i) for i in self.packet.subfile)
        held = "".join(str(i) for i in self.packet.holders) or "-"
        d = "-".join(str(i) for i in self.demand)
        return (
            f"demand={d} user={self.user} sublibrary={self.ell} "
            f"part={self.part} missing=W[{sub}]@{held}"
        )


@dataclass(frozen=True)
class VerificationReport:
    checked: int
    users: int
    failures: tuple[VerificationFailure, ...]

    @property
    def ok(self) -> bool:
        return not self.failures

    def format_lines(self) -> list[str]:
        head = (
            f"checked {self.checked} demand vectors x {self.users} users: "
            f"{len(self.failures)} failures"
        )
        return [head] + [f.describe() for f in self.failures]


def verify_all(
    config: LibraryConfig,
    alloc: CacheAllocation,
    max_demands: int | None = None,
    seed: int = 0,
) -> VerificationReport:
    """Exhaustively check decodability for every user of every demand vector.

    Builds the actual placement and message ledger per demand and runs the
    GF(2) check per (user, sublibrary, part).  Demands beyond the enumeration
    guard require sampling via max_demands.
    """
    placement = build_placement(config, alloc)
    demands = enumerate_demands(config.N, config.K, max_demands, seed)
    users = range(1, config.K + 1)

    # Static per-block data: the block's holder subsets and, per user, its
    # cached packets and the subfiles it may need.
    blocks = []
    for split in placement.splits:
        subfiles = sublibrary_subfiles(config.N, split.ell)
        by_file = {
            i: [s for s in subfiles if i in s] for i in range(1, config.N + 1)
        }
        for part, size, _rate in split.parts():
            holder_sets = list(itertools.combinations(users, size))
            needed_by_file = {
                i: [
                    PacketId(s, part, h)
                    for s in by_file[i]
                    for h in holder_sets
                ]
                for i in range(1, config.N + 1)
            }
            cached_by_user = [
                frozenset(
                    p
                    for p in placement.caches[k - 1]
                    if p.part == part and len(p.subfile) == split.ell
                )
                for k in users
            ]
            blocks.append((split.ell, part, needed_by_file, cached_by_user))

    failures: list[VerificationFailure] = []
    for d in demands:
        ledger = build_user_messages(d, placement, config)
        # Operand lists per block, in level order, with level boundaries.
        per_block: dict[tuple[int, str], list[tuple[int, frozenset]]] = {}
        for msg in ledger.all_messages():
            probe = next(iter(msg.operands))
            key = (len(probe.subfile), probe.part)
            per_block.setdefault(key, []).append((msg.level, msg.operands))
        for ell, part, needed_by_file, cached_by_user in blocks:
            msgs = per_block.get((ell, part), ())
            for k in users:
                received = [ops for lvl, ops in msgs if lvl <= k]
                missing = _missing_packets(
                    needed_by_file[d[k - 1]], cached_by_user[k - 1], received
                )
                failures.extend(
                    VerificationFailure(tuple(d), k, ell, part, p) for p in missing
                )
    return VerificationReport(
        checked=len(demands), users=config.K, failures=tuple(failures)
    )
