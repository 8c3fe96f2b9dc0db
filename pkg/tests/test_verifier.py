import numpy as np

from corrcache import (
    CacheAllocation,
    LibraryConfig,
    PacketId,
    VerificationFailure,
    XorMessage,
    decodable,
    verify_all,
)
from corrcache.verifier import _missing_packets


def msg(*packets):
    return XorMessage(level=1, members=(), operands=frozenset(packets), rate=0.0)


def brute_force_missing(needed, cached, operand_sets):
    # reachable = every XOR combination of message rows and cached unit rows
    universe = sorted({p for s in operand_sets for p in s} | set(needed))
    idx = {p: i for i, p in enumerate(universe)}
    rows = [sum(1 << idx[p] for p in s) for s in operand_sets]
    rows += [1 << idx[p] for p in cached if p in idx]
    span = {0}
    for r in rows:
        span |= {s ^ r for s in span}
    return [p for p in needed if (1 << idx[p]) not in span]


def test_decodable_plain_cases():
    a, b, c = "a", "b", "c"
    assert decodable([a], [], [msg(a)])
    assert decodable([a], [b], [msg(a, b)])
    assert not decodable([a], [], [msg(a, b)])  # b unknown, XOR is opaque
    assert not decodable([a], [], [])
    assert decodable([], [], [])
    assert decodable([a], [a], [])


def test_decodable_needs_elimination_not_peeling():
    # no message is singly peelable, but (a+b) + (b+c) + (c) recovers a
    a, b, c = "a", "b", "c"
    messages = [msg(a, b), msg(b, c), msg(c)]
    assert decodable([a], [], messages)


def test_decodable_combination_of_three():
    a, b, c, d = "a", "b", "c", "d"
    messages = [msg(a, b, c), msg(b, d), msg(c, d)]
    # a = (a+b+c) + (b+d) + (c+d)
    assert decodable([a], [], messages)
    assert not decodable([b], [], messages)


def test_missing_packets_matches_brute_force():
    rng = np.random.default_rng(5)
    packets = [f"p{i}" for i in range(7)]
    for _ in range(200):
        n_msgs = int(rng.integers(1, 7))
        operand_sets = []
        for _ in range(n_msgs):
            size = int(rng.integers(1, 4))
            operand_sets.append(
                frozenset(rng.choice(packets, size=size, replace=False))
            )
        cached = set(rng.choice(packets, size=int(rng.integers(0, 4)), replace=False))
        needed = list(rng.choice(packets, size=int(rng.integers(1, 4)), replace=False))
        got = _missing_packets(needed, cached, operand_sets)
        want = brute_force_missing(needed, cached, operand_sets)
        assert sorted(got) == sorted(want)


def test_verify_all_three_user(three_user_config, three_user_alloc):
    report = verify_all(three_user_config, three_user_alloc)
    assert report.ok
    assert report.checked == 27
    assert report.users == 3
    assert report.format_lines() == ["checked 27 demand vectors x 3 users: 0 failures"]


def test_verify_all_fractional_parts():
    cfg = LibraryConfig.from_alpha(
        3, 3, 1.0, 0.4, (0.4, 0.3, 0.3), (2.0, 1.5, 1.0)
    )
    report = verify_all(cfg, CacheAllocation((0.2, 0.5, 0.3)))
    assert report.ok


def test_verify_all_sampled():
    cfg = LibraryConfig.from_alpha(
        3, 3, 1.0, 0.4, (0.4, 0.3, 0.3), (2.0, 1.5, 1.0)
    )
    report = verify_all(cfg, CacheAllocation((0.3, 0.4, 0.3)), max_demands=5)
    assert report.checked == 5
    assert report.ok


def test_failure_description_format():
    f = VerificationFailure(
        demand=(1, 2, 3),
        user=2,
        ell=2,
        part="A",
        packet=PacketId((1, 2), "A", (1,)),
    )
    assert f.describe() == (
        "demand=1-2-3 user=2 sublibrary=2 part=A missing=W[12]@1"
    )
