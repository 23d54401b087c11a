"""Invariant dimension counts: closed-form prediction, exact kernels,
multi-prime modular confirmation, and the freeness cross-check."""
import random
from fractions import Fraction

import pytest

from so41inv.errors import DomainError
from so41inv.invariants import (
    dimension_table,
    independence_check,
    invariant_dimension,
    predicted_dimension,
    random_prime,
    rank_mod_p,
    t_count,
)
from so41inv.linalg import sparse_rank
from so41inv.sym_ext import ad_action_se


def test_t_count_values():
    assert [t_count(n) for n in range(8)] == [1, 0, 1, 4, 4, 4, 4, 4]
    assert t_count(-1) == 0


def test_predicted_dimensions():
    assert [predicted_dimension(n) for n in range(8)] == [1, 0, 4, 4, 13, 16, 32, 40]


@pytest.mark.parametrize("n", range(6))
def test_exact_dimension_matches_prediction(n):
    rep = invariant_dimension(n, method="exact")
    assert rep.method == "exact"
    assert rep.dimension == predicted_dimension(n)
    assert rep.ok


def test_exact_block_sizes():
    # weight-zero block is what the kernel runs on; sizes are part of the contract
    reps = [invariant_dimension(n, method="exact") for n in range(6)]
    assert [r.block_dim for r in reps] == [1, 2, 13, 40, 118, 292]
    assert [r.ambient_dim for r in reps] == [1, 14, 101, 504, 1966, 6412]


@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("seed", [0, 7])
def test_modp_agrees_with_exact(n, seed):
    exact = invariant_dimension(n, method="exact")
    modp = invariant_dimension(n, method="modp", seed=seed)
    assert modp.method == "modp"
    assert len(modp.primes) == 3
    assert modp.dimension == exact.dimension


def test_degree_six_and_seven():
    six = invariant_dimension(6)
    seven = invariant_dimension(7)
    assert six.method == "modp" and seven.method == "modp"
    assert six.dimension == 32
    assert seven.dimension == 40
    assert six.ok and seven.ok


def test_dimension_table():
    table = dimension_table(5)
    assert [r.dimension for r in table] == [1, 0, 4, 4, 13, 16]
    assert all(r.expected == r.dimension for r in table)


def test_large_degree_requires_opt_in():
    with pytest.raises(DomainError):
        invariant_dimension(8)


def test_random_prime_is_prime_and_in_range():
    rng = random.Random(123)
    seen = set()
    for _ in range(20):
        p = random_prime(rng)
        assert 2 ** 29 < p < 2 ** 30
        assert p % 2 == 1
        for q in (3, 5, 7, 11, 13, 17, 19, 23):
            assert p == q or p % q != 0
        seen.add(p)
    assert len(seen) > 15  # not stuck on one value


def test_rank_mod_p_matches_exact_rank_on_random_matrices():
    rng = random.Random(2026)
    for trial in range(6):
        rows_n = rng.randint(3, 8)
        cols = rng.randint(3, 8)
        rows = []
        for _ in range(rows_n):
            rows.append({j: Fraction(rng.randint(-4, 4))
                         for j in range(cols) if rng.random() < 0.6})
        # plant a dependent row so rank deficiency actually occurs
        if rows[0]:
            rows.append({k: 3 * v for k, v in rows[0].items()})
        exact = sparse_rank(rows)
        int_rows = [{j: int(v) for j, v in r.items()} for r in rows]
        for p in (813847339, 999999937):
            assert rank_mod_p(int_rows, cols, p) == exact, trial


def test_want_basis_returns_certified_invariants():
    from so41inv.lie_core import lie_gen
    from so41inv.matrix_oracle import K_GENS
    from so41inv.sym_ext import key_weight

    rep = invariant_dimension(4, method="exact", want_basis=True)
    assert rep.basis is not None
    assert len(rep.basis) == 13
    for vec in rep.basis:
        assert not vec.is_zero()
        assert all(key_weight(k) == (0, 0) for k in vec.terms)
        for z in K_GENS:
            assert ad_action_se(lie_gen(z), vec).is_zero()


def test_want_basis_requires_exact_method():
    with pytest.raises(ValueError):
        invariant_dimension(3, method="modp", want_basis=True)


def test_unknown_method_rejected():
    with pytest.raises(ValueError):
        invariant_dimension(2, method="float")


def test_independence_up_to_degree_six(st):
    rep = independence_check(cap=6)
    assert rep.total == 70
    assert rep.rank == 70
    assert rep.ok
    assert rep.per_degree == {0: (1, 1), 1: (0, 0), 2: (4, 4), 3: (4, 4),
                              4: (13, 13), 5: (16, 16), 6: (32, 32)}


def test_independence_small_cap():
    rep = independence_check(cap=3)
    assert rep.per_degree == {0: (1, 1), 1: (0, 0), 2: (4, 4), 3: (4, 4)}
    assert rep.rank == rep.total == 9
    assert rep.ok
