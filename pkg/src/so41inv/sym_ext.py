"""The supercommutative model S(g) tensor Lambda(p).

Keys are pairs (exponent 10-tuple, p-mask). This is where the invariant
catalog lives in closed form, where the S.T basis data is assembled, and
where k-module decompositions (weights plus highest weight counting) run.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .clifford import ext_ad_on_mask, ext_merge, popcount
from .elements import (
    LinearElement,
    ZERO_EXP,
    fmt_exp,
    fmt_mask,
    join_terms,
    pair_sort_key,
)
from .errors import DomainError, NotStableError
from .lie_core import GEN_WEIGHTS, LieElement, bracket_gens, lie_gen, require_in_k
from .linalg import RationalEchelon, sparse_kernel
from .matrix_oracle import Gen, K_GENS, P_GENS

SEKey = tuple  # (exp 10-tuple, mask int)


class SEElement(LinearElement):
    """Element of S(g) tensor Lambda(p)."""

    def _product(self, other):
        out: dict[SEKey, Fraction] = {}
        for (ea, ma), ca in self.terms.items():
            for (eb, mb), cb in other.terms.items():
                merged = ext_merge(ma, mb)
                if merged is None:
                    continue
                sgn, m = merged
                k = (tuple(x + y for x, y in zip(ea, eb)), m)
                nc = out.get(k, Fraction(0)) + ca * cb * sgn
                if nc:
                    out[k] = nc
                else:
                    out.pop(k, None)
        return SEElement(out)

    def _one(self):
        return se_one()

    def degree(self) -> int:
        return max((key_degree(k) for k in self.terms), default=0)

    def __str__(self):
        keys = sorted(self.terms, key=pair_sort_key)
        pairs = []
        for k in keys:
            exp, mask = k
            body = f"({fmt_exp(exp)}) ot ({fmt_mask(mask, '^')})"
            pairs.append((self.terms[k], body))
        return join_terms(pairs)


def key_degree(key: SEKey) -> int:
    exp, mask = key
    return sum(exp) + popcount(mask)


def key_weight(key: SEKey) -> tuple[int, int]:
    exp, mask = key
    w1 = w2 = 0
    for g, e in enumerate(exp):
        if e:
            a, b = GEN_WEIGHTS[Gen(g)]
            w1 += a * e
            w2 += b * e
    for bit in range(4):
        if mask >> bit & 1:
            a, b = GEN_WEIGHTS[P_GENS[bit]]
            w1 += a
            w2 += b
    return (w1, w2)


def se_gen(g: Gen) -> SEElement:
    exp = [0] * 10
    exp[g] = 1
    return SEElement({(tuple(exp), 0): 1})


def se_ext_gen(g: Gen) -> SEElement:
    if g not in P_GENS:
        raise DomainError(f"{g.name} is not a p-generator")
    bit = P_GENS.index(g)
    return SEElement({(ZERO_EXP, 1 << bit): 1})


def se_wedge(*gens: Gen) -> SEElement:
    out = se_one()
    for g in gens:
        out = out * se_ext_gen(g)
    return out


def se_one() -> SEElement:
    return SEElement({(ZERO_EXP, 0): 1})


def ad_on_key(zg: Gen, key: SEKey) -> dict[SEKey, Fraction]:
    """Derivation action of a k-generator on one monomial key."""
    exp, mask = key
    out: dict[SEKey, Fraction] = {}
    for slot in range(10):
        e = exp[slot]
        if not e:
            continue
        for g, c in bracket_gens(zg, Gen(slot)):
            m = list(exp)
            m[slot] -= 1
            m[int(g)] += 1
            k = (tuple(m), mask)
            nc = out.get(k, Fraction(0)) + e * c
            if nc:
                out[k] = nc
            else:
                out.pop(k, None)
    for m, c in ext_ad_on_mask(zg, mask).items():
        k = (exp, m)
        nc = out.get(k, Fraction(0)) + c
        if nc:
            out[k] = nc
        else:
            out.pop(k, None)
    return out


def ad_action_se(z: LieElement, x: SEElement) -> SEElement:
    require_in_k(z)
    out: dict[SEKey, Fraction] = {}
    for zg, zc in z.terms.items():
        for key, c in x.terms.items():
            for k, cc in ad_on_key(zg, key).items():
                nc = out.get(k, Fraction(0)) + zc * c * cc
                if nc:
                    out[k] = nc
                else:
                    out.pop(k, None)
    return SEElement(out)


def se_k_invariant(x: SEElement) -> bool:
    return all(ad_action_se(lie_gen(z), x).is_zero() for z in K_GENS)


# -- the invariant catalog ---------------------------------------------------

def _s(g: Gen) -> SEElement:
    return se_gen(g)


def build_a1() -> SEElement:
    h = _s(Gen.H1) + _s(Gen.H2)
    return h * h + 4 * _s(Gen.E1) * _s(Gen.F1)


def build_a2() -> SEElement:
    h = _s(Gen.H1) - _s(Gen.H2)
    return h * h + 4 * _s(Gen.E2) * _s(Gen.F2)


def build_b() -> SEElement:
    return _s(Gen.E3) * _s(Gen.F3) + _s(Gen.E4) * _s(Gen.F4)


def build_dirac() -> SEElement:
    return (
        _s(Gen.E3) * se_ext_gen(Gen.F3)
        + _s(Gen.E4) * se_ext_gen(Gen.F4)
        + _s(Gen.F3) * se_ext_gen(Gen.E3)
        + _s(Gen.F4) * se_ext_gen(Gen.E4)
    )


def build_c() -> SEElement:
    H1, H2 = _s(Gen.H1), _s(Gen.H2)
    E1, E2, F1, F2 = _s(Gen.E1), _s(Gen.E2), _s(Gen.F1), _s(Gen.F2)
    E3, E4, F3, F4 = _s(Gen.E3), _s(Gen.E4), _s(Gen.F3), _s(Gen.F4)
    return (
        2 * (E1 * E2 * F3 ** 2 - E1 * F2 * F4 ** 2 + F1 * F2 * E3 ** 2 - F1 * E2 * E4 ** 2)
        - 2 * (H1 - H2) * (E1 * F3 * F4 + F1 * E3 * E4)
        - 2 * (H1 + H2) * (F2 * E3 * F4 + E2 * F3 * E4)
        - (H1 - H2) * (H1 + H2) * (E3 * F3 - E4 * F4)
    )


def build_d() -> SEElement:
    H = _s(Gen.H1) + _s(Gen.H2)
    return (
        2 * _s(Gen.E1) * se_wedge(Gen.F3, Gen.F4)
        - H * (se_wedge(Gen.E3, Gen.F3) + se_wedge(Gen.E4, Gen.F4))
        - 2 * _s(Gen.F1) * se_wedge(Gen.E3, Gen.E4)
    )


def build_e() -> SEElement:
    H = _s(Gen.H1) - _s(Gen.H2)
    return (
        2 * _s(Gen.E2) * se_wedge(Gen.E4, Gen.F3)
        + H * (se_wedge(Gen.E3, Gen.F3) - se_wedge(Gen.E4, Gen.F4))
        + 2 * _s(Gen.F2) * se_wedge(Gen.E3, Gen.F4)
    )


def build_f() -> SEElement:
    Hp = _s(Gen.H1) + _s(Gen.H2)
    E1, F1 = _s(Gen.E1), _s(Gen.F1)
    E3, E4, F3, F4 = _s(Gen.E3), _s(Gen.E4), _s(Gen.F3), _s(Gen.F4)
    return (
        2 * (E1 * F3 * se_ext_gen(Gen.F4) - E1 * F4 * se_ext_gen(Gen.F3))
        - Hp * (
            E3 * se_ext_gen(Gen.F3)
            + E4 * se_ext_gen(Gen.F4)
            - F3 * se_ext_gen(Gen.E3)
            - F4 * se_ext_gen(Gen.E4)
        )
        - 2 * (F1 * E3 * se_ext_gen(Gen.E4) - F1 * E4 * se_ext_gen(Gen.E3))
    )


def build_g() -> SEElement:
    Hm = _s(Gen.H1) - _s(Gen.H2)
    E2, F2 = _s(Gen.E2), _s(Gen.F2)
    E3, E4, F3, F4 = _s(Gen.E3), _s(Gen.E4), _s(Gen.F3), _s(Gen.F4)
    return (
        -2 * (E2 * F3 * se_ext_gen(Gen.E4) - E2 * E4 * se_ext_gen(Gen.F3))
        + Hm * (
            E3 * se_ext_gen(Gen.F3)
            - E4 * se_ext_gen(Gen.F4)
            - F3 * se_ext_gen(Gen.E3)
            + F4 * se_ext_gen(Gen.E4)
        )
        + 2 * (F2 * E3 * se_ext_gen(Gen.F4) - F2 * F4 * se_ext_gen(Gen.E3))
    )


def build_h() -> SEElement:
    H1, H2 = _s(Gen.H1), _s(Gen.H2)
    Hp, Hm = H1 + H2, H1 - H2
    E1, E2, F1, F2 = _s(Gen.E1), _s(Gen.E2), _s(Gen.F1), _s(Gen.F2)
    E3, E4, F3, F4 = _s(Gen.E3), _s(Gen.E4), _s(Gen.F3), _s(Gen.F4)
    return (
        2 * (
            E1 * E2 * F3 * se_ext_gen(Gen.F3)
            - E1 * F2 * F4 * se_ext_gen(Gen.F4)
            + F1 * F2 * E3 * se_ext_gen(Gen.E3)
            - F1 * E2 * E4 * se_ext_gen(Gen.E4)
        )
        - Hm * (
            E1 * F3 * se_ext_gen(Gen.F4)
            + E1 * F4 * se_ext_gen(Gen.F3)
            + F1 * E3 * se_ext_gen(Gen.E4)
            + F1 * E4 * se_ext_gen(Gen.E3)
        )
        - Hp * (
            F2 * E3 * se_ext_gen(Gen.F4)
            + F2 * F4 * se_ext_gen(Gen.E3)
            + E2 * F3 * se_ext_gen(Gen.E4)
            + E2 * E4 * se_ext_gen(Gen.F3)
        )
        - Fraction(1, 2) * Hm * Hp * (
            E3 * se_ext_gen(Gen.F3)
            + F3 * se_ext_gen(Gen.E3)
            - E4 * se_ext_gen(Gen.F4)
            - F4 * se_ext_gen(Gen.E4)
        )
    )


def build_i() -> SEElement:
    return se_wedge(Gen.E3, Gen.E4, Gen.F3, Gen.F4)


def build_j() -> SEElement:
    return (
        _s(Gen.E3) * se_wedge(Gen.E4, Gen.F3, Gen.F4)
        - _s(Gen.E4) * se_wedge(Gen.E3, Gen.F3, Gen.F4)
        + _s(Gen.F3) * se_wedge(Gen.E3, Gen.E4, Gen.F4)
        - _s(Gen.F4) * se_wedge(Gen.E3, Gen.E4, Gen.F3)
    )


T_ORDER = ("1", "D", "d", "e", "f", "g", "h", "i", "j",
           "Dd", "De", "Df", "Dg", "fg", "Dh", "dg")


@dataclass
class STCatalog:
    """The named invariants, the sixteen T-elements, and their degrees."""

    named: dict[str, SEElement]
    t_elements: dict[str, SEElement]
    t_degrees: dict[str, int]


_ST_CACHE: STCatalog | None = None


def build_st_catalog() -> STCatalog:
    """Build and certify the catalog; every element must be K-invariant."""
    global _ST_CACHE
    if _ST_CACHE is not None:
        return _ST_CACHE
    named = {
        "a1": build_a1(),
        "a2": build_a2(),
        "b": build_b(),
        "c": build_c(),
        "D": build_dirac(),
        "d": build_d(),
        "e": build_e(),
        "f": build_f(),
        "g": build_g(),
        "h": build_h(),
        "i": build_i(),
        "j": build_j(),
    }
    base = dict(named)
    t: dict[str, SEElement] = {"1": se_one()}
    for name in T_ORDER[1:]:
        if name in base:
            t[name] = base[name]
        else:
            left, right = name[0], name[1]
            t[name] = base[left] * base[right]
    from .errors import InvarianceError
    from .lie_core import lie_gen as _lg

    for name, el in list(named.items()) + list(t.items()):
        for z in K_GENS:
            res = ad_action_se(_lg(z), el)
            if not res.is_zero():
                raise InvarianceError(name, z.name, f"{len(res)} residual terms")
    degrees = {name: el.degree() for name, el in t.items()}
    degrees["1"] = 0
    _ST_CACHE = STCatalog(named=named, t_elements=t, t_degrees=degrees)
    return _ST_CACHE


def s_monomials_up_to(cap: int) -> list[tuple[int, int, int, int]]:
    """Exponent tuples (n1, n2, n3, n4) for a1 a2 b c with degree
    2(n1+n2+n3) + 4 n4 <= cap, in a deterministic order."""
    out = []
    for n4 in range(cap // 4 + 1):
        for n1 in range(cap // 2 + 1):
            for n2 in range(cap // 2 + 1):
                for n3 in range(cap // 2 + 1):
                    if 2 * (n1 + n2 + n3) + 4 * n4 <= cap:
                        out.append((n1, n2, n3, n4))
    out.sort(key=lambda q: (2 * (q[0] + q[1] + q[2]) + 4 * q[3], q))
    return out


def s_monomial_element(cat: STCatalog, q: tuple[int, int, int, int]) -> SEElement:
    n1, n2, n3, n4 = q
    out = se_one()
    for name, n in (("a1", n1), ("a2", n2), ("b", n3), ("c", n4)):
        for _ in range(n):
            out = out * cat.named[name]
    return out


# -- k-module decomposition ----------------------------------------------------

@dataclass(frozen=True)
class KModuleLabel:
    """Label (a, b) of the simple k-module with highest weight a on H1 and b
    on H2; necessarily a >= |b|."""

    a: int
    b: int

    def __post_init__(self):
        if self.a < abs(self.b):
            raise ValueError(f"({self.a},{self.b}) is not a dominant label")

    def dim(self) -> int:
        return (self.a + self.b + 1) * (self.a - self.b + 1)

    def __repr__(self):
        return f"V({self.a},{self.b})"


def _vectorize(els: list[SEElement]) -> tuple[list[dict[int, Fraction]], list[SEKey]]:
    keys = sorted({k for el in els for k in el.terms}, key=pair_sort_key)
    index = {k: n for n, k in enumerate(keys)}
    rows = [{index[k]: c for k, c in el.terms.items()} for el in els]
    return rows, keys


def decompose_k_module(space: list[SEElement]) -> Counter:
    """Decompose the span of `space` into simple k-modules.

    Checks stability under the k-action first (NotStableError otherwise),
    then counts highest weight vectors per dominant weight. Returns a Counter
    {KModuleLabel: multiplicity}.
    """
    span = RationalEchelon()
    basis: list[SEElement] = []
    key_index: dict[SEKey, int] = {}

    def coords(el: SEElement) -> dict[int, Fraction]:
        vec = {}
        for k, c in el.terms.items():
            if k not in key_index:
                key_index[k] = len(key_index)
            vec[key_index[k]] = c
        return vec

    for el in space:
        if el.is_zero():
            continue
        if span.insert(coords(el)):
            basis.append(el)
    if not basis:
        return Counter()
    for z in K_GENS:
        zel = lie_gen(z)
        for el in basis:
            img = ad_action_se(zel, el)
            if img.is_zero():
                continue
            if not span.contains(coords(img)):
                raise NotStableError(f"span not closed under ad({z.name})")
    # split the span basis into weight components; each basis vector may mix
    # weights, so project and re-collect
    by_weight: dict[tuple[int, int], RationalEchelon] = {}
    weight_vecs: dict[tuple[int, int], list[SEElement]] = {}
    for el in basis:
        buckets: dict[tuple[int, int], dict[SEKey, Fraction]] = {}
        for k, c in el.terms.items():
            buckets.setdefault(key_weight(k), {})[k] = c
        for w, terms in buckets.items():
            piece = SEElement(terms)
            ech = by_weight.setdefault(w, RationalEchelon())
            if ech.insert(coords(piece)):
                weight_vecs.setdefault(w, []).append(piece)
    # count highest weight vectors per weight: kernel of stacked ad(E1), ad(E2)
    result: Counter = Counter()
    total_dim = 0
    for w in sorted(weight_vecs, reverse=True):
        vecs = weight_vecs[w]
        img_keys: dict[SEKey, int] = {}
        rows_t: list[dict[int, Fraction]] = []  # columns = vecs
        for vi, v in enumerate(vecs):
            col: dict[int, Fraction] = {}
            for z in (Gen.E1, Gen.E2):
                img = ad_action_se(lie_gen(z), v)
                for k, c in img.terms.items():
                    kk = (z, k)
                    if kk not in img_keys:
                        img_keys[kk] = len(img_keys)
                    col[img_keys[kk]] = c
            rows_t.append(col)
        # kernel of the map (coefficients on vecs) -> images
        nv = len(vecs)
        mat_rows: list[dict[int, Fraction]] = [dict() for _ in range(len(img_keys))]
        for vi, col in enumerate(rows_t):
            for r, c in col.items():
                mat_rows[r][vi] = c
        hw_count = len(sparse_kernel(mat_rows, nv))
        if hw_count:
            label = KModuleLabel(*w)
            result[label] += hw_count
            total_dim += hw_count * label.dim()
    span_dim = span.rank
    if total_dim != span_dim:
        raise NotStableError(
            f"module dimensions do not add up: {total_dim} != {span_dim}"
        )
    return result


@dataclass
class HarmonicReport:
    degree: int
    space_dim: int
    top_dim: int
    lower_dim: int
    ok: bool


def harmonic_decomposition_check(n: int) -> HarmonicReport:
    """Check S^n(p) = V(n,0) + b . S^(n-2)(p) with V(n,0) generated by E3^n."""
    from itertools import combinations_with_replacement

    def p_monomials(deg: int) -> list[SEElement]:
        out = []
        for combo in combinations_with_replacement(P_GENS, deg):
            exp = [0] * 10
            for g in combo:
                exp[g] += 1
            out.append(SEElement({(tuple(exp), 0): 1}))
        return out

    space = p_monomials(n)
    space_dim = comb(n + 3, 3)
    assert len(space) == space_dim

    # orbit of the highest weight vector E3^n under repeated lowering
    exp = [0] * 10
    exp[Gen.E3] = n
    hw = SEElement({(tuple(exp), 0): 1})
    for z in (Gen.E1, Gen.E2):
        if not ad_action_se(lie_gen(z), hw).is_zero():
            return HarmonicReport(n, space_dim, -1, -1, False)
    span = RationalEchelon()
    key_index: dict[SEKey, int] = {}

    def coords(el: SEElement) -> dict[int, Fraction]:
        vec = {}
        for k, c in el.terms.items():
            if k not in key_index:
                key_index[k] = len(key_index)
            vec[key_index[k]] = c
        return vec

    frontier = [hw]
    span.insert(coords(hw))
    while frontier:
        nxt = []
        for v in frontier:
            for z in (Gen.F1, Gen.F2, Gen.E1, Gen.E2):
                img = ad_action_se(lie_gen(z), v)
                if not img.is_zero() and span.insert(coords(img)):
                    nxt.append(img)
        frontier = nxt
    top_dim = span.rank
    # now add b * S^(n-2)(p) and check the sum fills the space
    b = build_b()
    lower = [b * m for m in p_monomials(n - 2)] if n >= 2 else []
    lower_dim = comb(n + 1, 3) if n >= 2 else 0
    for el in lower:
        span.insert(coords(el))
    ok = (
        top_dim == (n + 1) ** 2
        and span.rank == space_dim
        and top_dim + lower_dim == space_dim
    )
    return HarmonicReport(n, space_dim, top_dim, lower_dim, ok)
