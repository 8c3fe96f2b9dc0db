import itertools

from corrcache import (
    CacheAllocation,
    DemandVector,
    LibraryConfig,
    PacketId,
    binom,
    build_placement,
    build_user_messages,
    cache_parameters,
    demand_rate_profile,
    group,
    requested_subfiles,
    single_demand,
)

REL = 1e-12


def P(subfile, holder):
    # t=1 packets: one holder per packet, only part A exists
    return PacketId(tuple(subfile), "A", (holder,))


def test_requested_subfiles_by_overlap():
    assert requested_subfiles(3, {1, 2}, 2, 2) == [(1, 2)]
    assert requested_subfiles(3, {1, 2}, 2, 1) == [(1, 3), (2, 3)]
    assert requested_subfiles(3, {1, 2}, 2, 0) == []
    assert requested_subfiles(3, {1, 2, 3}, 2, 2) == [(1, 2), (1, 3), (2, 3)]
    assert requested_subfiles(5, {1}, 3, 0) == [(2, 3, 4), (2, 3, 5), (2, 4, 5), (3, 4, 5)]
    assert requested_subfiles(3, {1}, 2, 3) == []


def test_grouping_three_user_pairs():
    # the pair sublibrary under demands (1,2,3) splits into exactly the two
    # groups ({1,2},{1,2},{1,3}) and ({1,3},{2,3},{2,3})
    subs = [(1, 2), (1, 3), (2, 3)]
    groups = group(subs, DemandVector((1, 2, 3)), 2, 2)
    assert [g.assignment for g in groups] == [
        ((1, 2), (1, 2), (1, 3)),
        ((1, 3), (2, 3), (2, 3)),
    ]


def test_grouping_serves_each_incidence_once():
    # every (subfile, demanded index) pair is assigned in exactly one group
    for N, ell in [(4, 2), (5, 3), (5, 2)]:
        for dset in [(1, 2), (1, 2, 3), (2, 4)]:
            for r in range(1, ell + 1):
                subs = requested_subfiles(N, dset, ell, r)
                if not subs:
                    continue
                demands = tuple(sorted(dset))
                groups = group(subs, demands, ell, r)
                served = [
                    (g.assignment[i], demands[i])
                    for g in groups
                    for i in range(len(demands))
                    if g.assignment[i] is not None
                ]
                expected = [(s, v) for s in subs for v in s if v in dset]
                assert sorted(served) == sorted(expected)


def test_grouping_assigns_requested_subfiles_only():
    subs = requested_subfiles(5, (1, 3), 3, 1)
    for g in group(subs, (1, 3), 3, 1):
        for dk, s in zip((1, 3), g.assignment):
            if s is not None:
                assert dk in s


def test_single_demand_full_group():
    # all users lead, t=1: classic C(K, t+1) XORs in total
    levels = single_demand("A", ((1,), (2,), (3,)), 1, 3)
    assert [len(lvl) for lvl in levels] == [2, 1, 0]
    assert levels[0][0].operands == {P((1,), 2), P((2,), 1)}
    assert levels[0][1].operands == {P((1,), 3), P((3,), 1)}
    assert levels[1][0].operands == {P((2,), 3), P((3,), 2)}


def test_single_demand_shared_subfile():
    # one subfile requested by everyone: only user 1 leads, so the stronger
    # users' rounds collapse and the weakest level carries everything
    s = (1, 2, 3)
    levels = single_demand("A", (s, s, s), 1, 3)
    assert [len(lvl) for lvl in levels] == [2, 0, 0]
    assert levels[0][0].operands == {P(s, 2), P(s, 1)}
    assert levels[0][1].operands == {P(s, 3), P(s, 1)}


def test_single_demand_idle_users_pad_holders():
    # idle users enlarge the holder index sets but add no operand
    levels = single_demand("A", ((1, 4), None, None), 1, 3)
    flat = [m for lvl in levels for m in lvl]
    assert {m.members for m in flat} == {(1, 2), (1, 3)}
    assert flat[0].operands == {P((1, 4), 2)}
    assert flat[1].operands == {P((1, 4), 3)}


def test_single_demand_t_zero():
    # nothing cached: each leader's subfile goes out once, uncoded
    levels = single_demand("A", ((1,), (2,), (1,)), 0, 3)
    assert [len(lvl) for lvl in levels] == [1, 1, 0]
    assert levels[0][0].operands == {PacketId((1,), "A", ())}
    assert levels[1][0].operands == {PacketId((2,), "A", ())}


def golden_level_messages():
    # transcription of the worked K=N=3, d=(1,2,3) delivery round
    level1 = [
        {P((1,), 2), P((2,), 1)},
        {P((1,), 3), P((3,), 1)},
        {P((1, 2), 2), P((1, 2), 1)},
        {P((1, 2), 3), P((1, 3), 1)},
        {P((1, 3), 2), P((2, 3), 1)},
        {P((1, 3), 3), P((2, 3), 1)},
        {P((1, 2, 3), 2), P((1, 2, 3), 1)},
        {P((1, 2, 3), 3), P((1, 2, 3), 1)},
    ]
    level2 = [
        {P((2,), 3), P((3,), 2)},
        {P((1, 3), 2), P((1, 2), 3)},
        {P((2, 3), 2), P((2, 3), 3)},
    ]
    return level1, level2


def test_three_user_golden_messages(three_user_config, three_user_alloc):
    placement = build_placement(three_user_config, three_user_alloc)
    ledger = build_user_messages((1, 2, 3), placement, three_user_config)
    level1, level2 = golden_level_messages()

    got1 = [set(m.operands) for m in ledger.levels[0]]
    got2 = [set(m.operands) for m in ledger.levels[1]]
    assert sorted(map(sorted, got1)) == sorted(map(sorted, level1))
    assert sorted(map(sorted, got2)) == sorted(map(sorted, level2))
    assert ledger.levels[2] == ()

    # packet rate is R_ell / C(K, t); level rates follow the 2/4/2 + 1/2 count
    R1, R2, R3 = three_user_config.rates
    assert abs(ledger.rho[0] - (2 * R1 + 4 * R2 + 2 * R3) / 3.0) <= REL
    assert abs(ledger.rho[1] - (R1 + 2 * R2) / 3.0) <= REL
    assert ledger.rho[2] == 0.0


def test_fast_profile_matches_ledger(three_user_config, three_user_alloc):
    splits = cache_parameters(three_user_config, three_user_alloc)
    placement = build_placement(three_user_config, three_user_alloc)
    for d in itertools.product(range(1, 4), repeat=3):
        fast = demand_rate_profile(three_user_config, splits, DemandVector(d))
        slow = build_user_messages(d, placement, three_user_config).rho
        assert all(abs(a - b) <= REL for a, b in zip(fast, slow))


def test_fast_profile_matches_ledger_fractional_t():
    # two-part packetization, repeated demands, idle users
    cfg = LibraryConfig.from_alpha(
        3, 3, 1.0, 0.4, (0.4, 0.3, 0.3), (2.0, 1.5, 1.0)
    )
    alloc = CacheAllocation((0.2, 0.5, 0.3))
    splits = cache_parameters(cfg, alloc)
    assert any(s.rateB > 0 for s in splits)
    placement = build_placement(cfg, alloc)
    for d in itertools.product(range(1, 4), repeat=3):
        fast = demand_rate_profile(cfg, splits, DemandVector(d))
        slow = build_user_messages(d, placement, cfg).rho
        assert all(abs(a - b) <= 1e-9 for a, b in zip(fast, slow))


def test_uniform_rate_sum_identity():
    # single private sublibrary, integer t, all-distinct demands:
    # sum_k rho_k = (K - t) / (t + 1) * R
    K = N = 5
    R = 1.0
    for t in range(0, K + 1):
        M = t * N * R / K  # t = K M / (N R) inverted
        cfg = LibraryConfig.from_alpha(
            N, K, R, M, (1.0, 0, 0, 0, 0), (1.0,) * K
        )
        splits = cache_parameters(cfg, CacheAllocation((1.0, 0, 0, 0, 0)))
        rho = demand_rate_profile(cfg, splits, DemandVector((1, 2, 3, 4, 5)))
        assert abs(sum(rho) - (K - t) / (t + 1) * R) <= REL


def test_message_count_full_group():
    # K users all leading, integer t: C(K, t+1) messages in total
    for K in (3, 4, 5):
        for t in range(0, K):
            assignment = tuple((k,) for k in range(1, K + 1))
            levels = single_demand("A", assignment, t, K)
            assert sum(len(lvl) for lvl in levels) == binom(K, t + 1)
