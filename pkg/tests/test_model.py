import itertools
import math

import numpy as np
import pytest

from corrcache import (
    AlphaProfile,
    DemandVector,
    LibraryConfig,
    binom,
    rates_from_alpha,
    sublibrary_subfiles,
)

REL = 1e-12


def test_binom_zero_convention():
    assert binom(5, 2) == 10
    assert binom(5, 0) == 1
    assert binom(3, 5) == 0
    assert binom(4, -1) == 0
    assert binom(-2, 1) == 0


def test_alpha_profile_validation():
    AlphaProfile((0.5, 0.5))
    AlphaProfile((1.0,))
    with pytest.raises(ValueError):
        AlphaProfile((0.6, 0.6))
    with pytest.raises(ValueError):
        AlphaProfile((-0.1, 1.1))
    with pytest.raises(ValueError):
        AlphaProfile(())


def test_alpha_profile_tolerates_rounding():
    # grid values built as (1 - v, ..., v) land within an ulp of one
    for v in (0.1, 0.3, 1.0 / 3.0, 0.7):
        AlphaProfile((1.0 - v, 0.0, 0.0, v))


def test_rates_from_alpha_private_only():
    assert rates_from_alpha((1.0, 0, 0, 0, 0), 1.0, 5) == (1.0, 0, 0, 0, 0)


def test_rates_from_alpha_split():
    # C(4,4) = 1 so the top sublibrary keeps its fraction as-is
    assert rates_from_alpha((0.5, 0, 0, 0, 0.5), 1.0, 5) == (0.5, 0, 0, 0, 0.5)
    # C(4,1) = 4 spreads the pair sublibrary over four subfiles per file
    assert rates_from_alpha((0.5, 0.5, 0, 0, 0), 1.0, 5) == (0.5, 0.125, 0, 0, 0)


def test_rates_from_alpha_rejects_bad_input():
    with pytest.raises(ValueError):
        rates_from_alpha((0.5, 0.5), 1.0, 3)  # wrong length
    with pytest.raises(ValueError):
        rates_from_alpha((0.5, 0.4), 1.0, 2)  # sum != 1
    with pytest.raises(ValueError):
        rates_from_alpha((1.0,), -2.0, 1)


def test_rate_reconstruction_identity():
    # sum_ell C(N-1, ell-1) R_ell recovers R for random profiles
    rng = np.random.default_rng(7)
    for _ in range(50):
        N = int(rng.integers(1, 8))
        R = float(rng.uniform(0.1, 5.0))
        alpha = rng.dirichlet(np.ones(N))
        rates = rates_from_alpha(tuple(alpha), R, N)
        back = sum(binom(N - 1, ell - 1) * r for ell, r in enumerate(rates, 1))
        assert abs(back - R) <= REL * R


def test_per_file_rate_identity():
    # every file is the union of the subfiles containing it; rates add to R
    rng = np.random.default_rng(11)
    for N in (2, 3, 5):
        alpha = rng.dirichlet(np.ones(N))
        R = 1.5
        rates = rates_from_alpha(tuple(alpha), R, N)
        for i in range(1, N + 1):
            total = sum(
                rates[ell - 1]
                for ell in range(1, N + 1)
                for S in sublibrary_subfiles(N, ell)
                if i in S
            )
            assert abs(total - R) <= 1e-9 * R


def test_sublibrary_subfiles_small():
    assert sublibrary_subfiles(3, 3) == [(1, 2, 3)]
    assert sublibrary_subfiles(3, 2) == [(1, 2), (1, 3), (2, 3)]
    assert sublibrary_subfiles(3, 1) == [(1,), (2,), (3,)]


def test_sublibrary_subfiles_counts_and_order():
    subs = sublibrary_subfiles(5, 2)
    assert len(subs) == 10
    assert len(set(subs)) == 10
    assert all(len(s) == 2 for s in subs)
    assert subs == sorted(subs)  # lexicographic


def test_sublibrary_subfiles_range_check():
    with pytest.raises(ValueError):
        sublibrary_subfiles(3, 0)
    with pytest.raises(ValueError):
        sublibrary_subfiles(3, 4)


def test_library_config_validation():
    with pytest.raises(ValueError):
        # channel must be degraded: 1/h_k^2 non-increasing
        LibraryConfig(
            N=2, K=2, R=1.0, rates=(1.0, 0.0), inv_gain_sq=(1.0, 2.0), M=0.5
        )
    with pytest.raises(ValueError):
        LibraryConfig(
            N=2, K=2, R=1.0, rates=(-0.5, 1.5), inv_gain_sq=(2.0, 1.0), M=0.5
        )
    with pytest.raises(ValueError):
        # rates must reconstruct R
        LibraryConfig(
            N=2, K=2, R=1.0, rates=(0.3, 0.3), inv_gain_sq=(2.0, 1.0), M=0.5
        )


def test_library_config_from_alpha_roundtrip():
    cfg = LibraryConfig.from_alpha(
        3, 4, 2.0, 0.75, (0.25, 0.5, 0.25), (2.0, 1.5, 1.5, 1.0)
    )
    assert cfg.rates == (0.5, 0.5, 0.5)
    assert cfg.active_sublibraries() == (1, 2, 3)
    sparse = LibraryConfig.from_alpha(
        3, 2, 1.0, 0.5, (0.5, 0.0, 0.5), (1.0, 1.0)
    )
    assert sparse.active_sublibraries() == (1, 3)


def test_demand_vector():
    d = DemandVector((2, 1, 2))
    assert d.distinct == frozenset({1, 2})
    assert len(d) == 3
    with pytest.raises(ValueError):
        DemandVector((0, 1))
    with pytest.raises(ValueError):
        DemandVector(())


def test_all_subfile_count():
    # 2^N - 1 nonempty subsets in total
    for N in range(1, 7):
        total = sum(len(sublibrary_subfiles(N, ell)) for ell in range(1, N + 1))
        assert total == 2**N - 1
        assert total == sum(math.comb(N, ell) for ell in range(1, N + 1))
