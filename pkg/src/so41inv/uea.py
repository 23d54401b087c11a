"""U(g) in PBW normal form, S(g), and the symmetrization map between them.

A PBW monomial is a 10-tuple of exponents in the frozen generator order
H1 < H2 < E1 < E2 < F1 < F2 < E3 < E4 < F3 < F4. Products are straightened
by the textbook rewriting g_a g_b -> g_b g_a + [g_a, g_b] applied at the
first descent, with memoization on whole words.
"""
from __future__ import annotations

from fractions import Fraction

from .elements import LinearElement, ZERO_EXP, exp_sort_key, fmt_exp, join_terms
from .lie_core import LieElement, bracket_gens
from .matrix_oracle import Gen

Exp = tuple  # 10-tuple of nonnegative ints


def exp_degree(exp: Exp) -> int:
    return sum(exp)


def exp_to_word(exp: Exp) -> tuple[int, ...]:
    word = []
    for g, e in enumerate(exp):
        word.extend([g] * e)
    return tuple(word)


def word_to_exp(word) -> Exp:
    exp = [0] * 10
    for g in word:
        exp[g] += 1
    return tuple(exp)


_STRAIGHTEN: dict[tuple, dict] = {}


def straighten_word(word: tuple[int, ...]) -> dict[Exp, Fraction]:
    """Expand the product of generators `word` over PBW monomials.

    The returned dict is shared via the memo table; callers must not mutate.
    """
    cached = _STRAIGHTEN.get(word)
    if cached is not None:
        return cached
    pos = -1
    for i in range(len(word) - 1):
        if word[i] > word[i + 1]:
            pos = i
            break
    if pos < 0:
        res = {word_to_exp(word): Fraction(1)}
        _STRAIGHTEN[word] = res
        return res
    a, b = word[pos], word[pos + 1]
    acc: dict[Exp, Fraction] = {}
    for m, c in straighten_word(word[:pos] + (b, a) + word[pos + 2:]).items():
        acc[m] = acc.get(m, Fraction(0)) + c
    for g, cg in bracket_gens(Gen(a), Gen(b)):
        for m, c in straighten_word(word[:pos] + (int(g),) + word[pos + 2:]).items():
            acc[m] = acc.get(m, Fraction(0)) + c * cg
    res = {m: c for m, c in acc.items() if c}
    _STRAIGHTEN[word] = res
    return res


_PAIR_PRODUCT: dict[tuple[Exp, Exp], dict] = {}


def pbw_pair_product(x: Exp, y: Exp) -> dict[Exp, Fraction]:
    """Product of two PBW monomials, straightened. Shared dict; do not mutate."""
    key = (x, y)
    cached = _PAIR_PRODUCT.get(key)
    if cached is None:
        cached = straighten_word(exp_to_word(x) + exp_to_word(y))
        _PAIR_PRODUCT[key] = cached
    return cached


class UElement(LinearElement):
    """Element of U(g) in PBW normal form: {exponent tuple: coefficient}."""

    def _product(self, other):
        out: dict[Exp, Fraction] = {}
        for mx, cx in self.terms.items():
            for my, cy in other.terms.items():
                f = cx * cy
                for m, c in pbw_pair_product(mx, my).items():
                    nc = out.get(m, Fraction(0)) + f * c
                    if nc:
                        out[m] = nc
                    else:
                        out.pop(m, None)
        return UElement(out)

    def _one(self):
        return u_one()

    def degree(self) -> int:
        return max((exp_degree(m) for m in self.terms), default=0)

    def __str__(self):
        keys = sorted(self.terms, key=exp_sort_key)
        return join_terms([(self.terms[k], fmt_exp(k)) for k in keys])


class SElement(LinearElement):
    """Element of the polynomial algebra S(g), same key shape as UElement."""

    def _product(self, other):
        out: dict[Exp, Fraction] = {}
        for mx, cx in self.terms.items():
            for my, cy in other.terms.items():
                m = tuple(a + b for a, b in zip(mx, my))
                nc = out.get(m, Fraction(0)) + cx * cy
                if nc:
                    out[m] = nc
                else:
                    out.pop(m, None)
        return SElement(out)

    def _one(self):
        return s_one()

    def degree(self) -> int:
        return max((exp_degree(m) for m in self.terms), default=0)

    def __str__(self):
        keys = sorted(self.terms, key=exp_sort_key)
        return join_terms([(self.terms[k], fmt_exp(k)) for k in keys])


def u_gen(g: Gen) -> UElement:
    exp = [0] * 10
    exp[g] = 1
    return UElement({tuple(exp): 1})


def s_gen(g: Gen) -> SElement:
    exp = [0] * 10
    exp[g] = 1
    return SElement({tuple(exp): 1})


def u_one() -> UElement:
    return UElement({ZERO_EXP: 1})


def s_one() -> SElement:
    return SElement({ZERO_EXP: 1})


def lie_to_u(x: LieElement) -> UElement:
    out = UElement()
    for g, c in x.terms.items():
        out = out + u_gen(g).scale(c)
    return out


def _multiset_permutations(word: tuple[int, ...]):
    """All distinct orderings of a multiset, as tuples."""
    counts: dict[int, int] = {}
    for w in word:
        counts[w] = counts.get(w, 0) + 1
    n = len(word)
    acc = [0] * n

    def rec(depth: int):
        if depth == n:
            yield tuple(acc)
            return
        for g in sorted(counts):
            if counts[g]:
                counts[g] -= 1
                acc[depth] = g
                yield from rec(depth + 1)
                counts[g] += 1

    yield from rec(0)


_SYMMETRIZE: dict[Exp, dict] = {}


def symmetrize_monomial(exp: Exp) -> dict[Exp, Fraction]:
    """sigma of a single symmetric monomial, as a PBW term dict (shared)."""
    cached = _SYMMETRIZE.get(exp)
    if cached is not None:
        return cached
    word = exp_to_word(exp)
    perms = list(_multiset_permutations(word))
    share = Fraction(1, len(perms))
    acc: dict[Exp, Fraction] = {}
    for w in perms:
        for m, c in straighten_word(w).items():
            acc[m] = acc.get(m, Fraction(0)) + share * c
    res = {m: c for m, c in acc.items() if c}
    _SYMMETRIZE[exp] = res
    return res


def symmetrize(x: SElement) -> UElement:
    """The symmetrization map sigma: S(g) -> U(g)."""
    out: dict[Exp, Fraction] = {}
    for exp, c in x.terms.items():
        for m, cc in symmetrize_monomial(exp).items():
            nc = out.get(m, Fraction(0)) + c * cc
            if nc:
                out[m] = nc
            else:
                out.pop(m, None)
    return UElement(out)


def ad_action_u(z: LieElement, x: UElement) -> UElement:
    """ad(z) x = z x - x z in U(g), for z in the Lie algebra."""
    zu = lie_to_u(z)
    return zu * x - x * zu


def ad_action_s(z: LieElement, x: SElement) -> SElement:
    """The derivation extending ad(z) to the polynomial algebra."""
    out: dict[Exp, Fraction] = {}
    for exp, c in x.terms.items():
        for slot in range(10):
            e = exp[slot]
            if not e:
                continue
            for zg, zc in z.terms.items():
                for g, bc in bracket_gens(zg, Gen(slot)):
                    m = list(exp)
                    m[slot] -= 1
                    m[int(g)] += 1
                    m = tuple(m)
                    nc = out.get(m, Fraction(0)) + c * e * zc * bc
                    if nc:
                        out[m] = nc
                    else:
                        out.pop(m, None)
    return SElement(out)


def u_k_invariant(x: UElement) -> bool:
    from .lie_core import lie_gen
    from .matrix_oracle import K_GENS

    return all(ad_action_u(lie_gen(z), x).is_zero() for z in K_GENS)
