"""The 5x5 matrix realization is the ground truth everything else is
checked against, so it gets its own independent float cross-check: the same
matrices rebuilt as numpy complex arrays, brackets expanded numerically by
least squares, compared entry by entry to the exact structure constants."""
import random
from fractions import Fraction

import numpy as np
import pytest

from so41inv.errors import SpanError
from so41inv.matrix_oracle import (
    GAMMA,
    GaussRational,
    Gen,
    K_GENS,
    P_GENS,
    basis_matrices,
    expand_over_basis,
    extract_structure_constants,
    is_so41_member,
    mat_mul,
    mat_scale,
    mat_trace,
    matrix_bracket,
    trace_form_gens,
)


def to_numpy(m) -> np.ndarray:
    return np.array(
        [[complex(Fraction(e.re), 0) + 1j * complex(Fraction(e.im), 0)
          for e in row] for row in m],
        dtype=complex,
    )


def test_all_ten_matrices_are_members():
    mats = basis_matrices()
    assert set(mats) == set(Gen)
    for g, m in mats.items():
        assert is_so41_member(m), g.name
        assert not mat_trace(m), g.name


def test_membership_is_the_gamma_condition():
    # x^T = -gamma x gamma, written out for one generator by hand
    mats = basis_matrices()
    m = mats[Gen.E3]
    lhs = tuple(tuple(m[j][i] for j in range(5)) for i in range(5))
    rhs = mat_scale(GaussRational(-1, 0), mat_mul(GAMMA, mat_mul(m, GAMMA)))
    assert lhs == rhs


def test_brackets_close_in_the_span():
    mats = basis_matrices()
    for a in Gen:
        for b in Gen:
            if a >= b:
                continue
            expand_over_basis(matrix_bracket(mats[a], mats[b]))  # no SpanError


def test_expand_rejects_outside_span():
    mats = basis_matrices()
    # gamma itself is not in so(4,1)
    with pytest.raises(SpanError):
        expand_over_basis(GAMMA)
    # and neither is i * H1 (imaginary coefficient)
    bad = mat_scale(GaussRational(0, 1), mats[Gen.H1])
    with pytest.raises(SpanError):
        expand_over_basis(bad)


def test_structure_constants_cover_all_pairs():
    sc = extract_structure_constants()
    assert len(sc) == 45
    for (a, b), expansion in sc.items():
        assert a < b
        for g, c in expansion.items():
            assert isinstance(g, Gen)
            assert isinstance(c, Fraction)


def test_float_oracle_agrees_with_exact_extraction():
    """Independent numerics: numpy complex brackets + least squares."""
    mats = basis_matrices()
    flat = {g: to_numpy(mats[g]).reshape(-1) for g in Gen}
    basis = np.stack([flat[g] for g in Gen], axis=1)  # 25 x 10
    exact = extract_structure_constants()
    for a in Gen:
        for b in Gen:
            if a >= b:
                continue
            na, nb = to_numpy(mats[a]), to_numpy(mats[b])
            br = (na @ nb - nb @ na).reshape(-1)
            coeffs, residuals, rank, _ = np.linalg.lstsq(basis, br, rcond=None)
            resid = np.linalg.norm(basis @ coeffs - br)
            assert resid < 1e-9
            want = exact[(a, b)]
            for gi, g in enumerate(Gen):
                c = complex(coeffs[gi])
                assert abs(c.imag) < 1e-9
                assert abs(c.real - float(want.get(g, 0))) < 1e-9


def test_gauss_rational_field_ops_match_complex():
    rng = random.Random(411)
    for _ in range(200):
        a = GaussRational(Fraction(rng.randint(-9, 9), rng.randint(1, 9)),
                          Fraction(rng.randint(-9, 9), rng.randint(1, 9)))
        b = GaussRational(Fraction(rng.randint(-9, 9), rng.randint(1, 9)),
                          Fraction(rng.randint(-9, 9), rng.randint(1, 9)))
        ca = complex(float(a.re), float(a.im))
        cb = complex(float(b.re), float(b.im))
        for got, want in (
            (a + b, ca + cb),
            (a - b, ca - cb),
            (a * b, ca * cb),
        ):
            assert abs(complex(float(got.re), float(got.im)) - want) < 1e-9
        if cb != 0:
            q = a / b
            assert abs(complex(float(q.re), float(q.im)) - ca / cb) < 1e-9


def test_trace_form_is_symmetric_and_splits_k_from_p():
    for a in Gen:
        for b in Gen:
            assert trace_form_gens(a, b) == trace_form_gens(b, a)
    for a in K_GENS:
        for b in P_GENS:
            assert trace_form_gens(a, b) == 0


def test_trace_form_on_p_is_nondegenerate():
    gram = [[trace_form_gens(a, b) for b in P_GENS] for a in P_GENS]
    # 4x4 determinant, expansion by minors is fine at this size
    m = np.array([[float(x) for x in row] for row in gram])
    assert abs(np.linalg.det(m)) > 1e-9
