"""U(g) tensor C(p): the noncommutative home of the invariant catalog.

Everything downstream of the Clifford normalization question lives here. A
TensorAlgebra is parametrized by a PForm; build_catalog() maps the closed
form invariants over via rho = sigma tensor tau and certifies K-invariance;
verify_relations() evaluates the identity suite relating the catalog
elements; adjudicate_convention() builds the algebra under each candidate
normalization of the form and reports which one (if any) satisfies the whole
suite.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .clifford import CliffordAlgebra, PForm, popcount
from .elements import (
    LinearElement,
    ZERO_EXP,
    fmt_exp,
    fmt_mask,
    join_terms,
    pair_sort_key,
)
from .errors import DomainError, InvarianceError
from .lie_core import LieElement, lie_gen, require_in_k
from .matrix_oracle import Gen, K_GENS
from .sym_ext import SEElement, build_st_catalog, s_monomial_element, s_monomials_up_to
from .uea import (
    SElement,
    UElement,
    lie_to_u,
    pbw_pair_product,
    symmetrize,
    symmetrize_monomial,
)

UCKey = tuple  # (exp 10-tuple, mask int)


class UCElement(LinearElement):
    """Element of U(g) tensor C(p), bound to its TensorAlgebra."""

    __slots__ = ("algebra",)

    def __init__(self, terms=None, algebra=None):
        super().__init__(terms)
        if algebra is None:
            raise ValueError("UCElement requires its algebra")
        self.algebra = algebra

    def _wrap(self, terms):
        return UCElement(terms, self.algebra)

    def _compatible(self, other) -> bool:
        return isinstance(other, UCElement) and other.algebra.pform == self.algebra.pform

    def _product(self, other):
        return self.algebra.multiply(self, other)

    def _one(self):
        return self.algebra.one()

    def degree(self) -> int:
        return max((sum(e) + popcount(m) for e, m in self.terms), default=0)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.algebra.scalar(other)
        return self._compatible(other) and self.terms == other.terms

    def __hash__(self):
        return hash((frozenset(self.terms.items()), self.algebra.pform))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.algebra.scalar(other)
        return super().__add__(other)

    def __radd__(self, other):
        if isinstance(other, (int, Fraction)):
            return self + other
        return NotImplemented

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.algebra.scalar(other)
        return super().__sub__(other)

    def __str__(self):
        keys = sorted(self.terms, key=pair_sort_key)
        pairs = []
        for k in keys:
            exp, mask = k
            body = f"({fmt_exp(exp)}) ot ({fmt_mask(mask, '*')})"
            pairs.append((self.terms[k], body))
        return join_terms(pairs)


class TensorAlgebra:
    """U(g) tensor C(p) for a fixed Clifford normalization."""

    def __init__(self, pform: PForm):
        self.pform = pform
        self.cl = CliffordAlgebra(pform)

    # -- constructors ---------------------------------------------------------

    def zero(self) -> UCElement:
        return UCElement({}, self)

    def one(self) -> UCElement:
        return UCElement({(ZERO_EXP, 0): 1}, self)

    def scalar(self, c) -> UCElement:
        return UCElement({(ZERO_EXP, 0): c}, self)

    def element(self, terms: dict) -> UCElement:
        return UCElement(terms, self)

    def from_u(self, x: UElement) -> UCElement:
        return UCElement({(exp, 0): c for exp, c in x.terms.items()}, self)

    def from_c(self, x) -> UCElement:
        return UCElement({(ZERO_EXP, m): c for m, c in x.terms.items()}, self)

    def u_gen(self, g: Gen) -> UCElement:
        exp = [0] * 10
        exp[g] = 1
        return UCElement({(tuple(exp), 0): 1}, self)

    def c_gen(self, g: Gen) -> UCElement:
        return self.from_c(self.cl.gen(g))

    # -- product and action ----------------------------------------------------

    def multiply(self, x: UCElement, y: UCElement) -> UCElement:
        out: dict[UCKey, Fraction] = {}
        cl_table = self.cl.table
        for (eu, mu), cu in x.terms.items():
            for (ev, mv), cv in y.terms.items():
                f = cu * cv
                uprod = pbw_pair_product(eu, ev)
                cprod = cl_table[(mu, mv)]
                for ee, a in uprod.items():
                    fa = f * a
                    for mm, bc in cprod.items():
                        k = (ee, mm)
                        nc = out.get(k, Fraction(0)) + fa * bc
                        if nc:
                            out[k] = nc
                        else:
                            out.pop(k, None)
        return UCElement(out, self)

    def ad_action(self, z: LieElement, x: UCElement) -> UCElement:
        """ad(z) x for z in k: commutator on the U-side plus the Clifford
        derivation on the C-side."""
        require_in_k(z)
        zu = self.from_u(lie_to_u(z))
        out = self.multiply(zu, x) - self.multiply(x, zu)
        for (exp, mask), c in x.terms.items():
            acted = self.cl.k_action(z, self.cl.element({mask: c}))
            for m, cc in acted.terms.items():
                out = out + UCElement({(exp, m): cc}, self)
        return out

    def is_invariant(self, x: UCElement) -> bool:
        return all(self.ad_action(lie_gen(z), x).is_zero() for z in K_GENS)

    # -- rho ---------------------------------------------------------------------

    def rho(self, x: SEElement) -> UCElement:
        """sigma tensor tau, mapping the supercommutative model here."""
        out: dict[UCKey, Fraction] = {}
        tau = self.cl._tau_table
        for (exp, mask), c in x.terms.items():
            for ee, a in symmetrize_monomial(exp).items():
                ca = c * a
                for mm, bc in tau[mask].items():
                    k = (ee, mm)
                    nc = out.get(k, Fraction(0)) + ca * bc
                    if nc:
                        out[k] = nc
                    else:
                        out.pop(k, None)
        return UCElement(out, self)

    def alpha_uc(self, z: LieElement) -> UCElement:
        return self.from_c(self.cl.alpha(z))

    # -- the k-Dirac element ------------------------------------------------------

    def k_dirac(self, reading: str) -> UCElement:
        """The quadratic-alpha pairing element; `reading` picks the third
        summand. 'literal' pairs F1 with alpha(2 E2), duplicating the F2
        summand's argument as the closed form is usually displayed; 'paired'
        uses alpha(2 E1), matching the trace-dual pairing of the other
        summands. Exactly one reading is K-invariant and the catalog keeps
        that one."""
        h1, h2 = lie_gen(Gen.H1), lie_gen(Gen.H2)
        e1, e2 = lie_gen(Gen.E1), lie_gen(Gen.E2)
        f1, f2 = lie_gen(Gen.F1), lie_gen(Gen.F2)
        if reading not in ("literal", "paired"):
            raise ValueError(f"unknown k_dirac reading: {reading}")
        third = 2 * e2 if reading == "literal" else 2 * e1
        pieces = [
            (self.u_gen(Gen.E1), self.alpha_uc(2 * f1)),
            (self.u_gen(Gen.E2), self.alpha_uc(2 * f2)),
            (self.u_gen(Gen.F1), self.alpha_uc(third)),
            (self.u_gen(Gen.F2), self.alpha_uc(2 * e2)),
            (self.u_gen(Gen.H1) - self.u_gen(Gen.H2), self.alpha_uc(h1 - h2)),
            (self.u_gen(Gen.H1) + self.u_gen(Gen.H2), self.alpha_uc(h1 + h2)),
        ]
        out = self.zero()
        for u, a in pieces:
            out = out + u * a
        return out


@dataclass
class Catalog:
    """The invariant catalog mapped into one TensorAlgebra.

    elements holds rho of each closed-form invariant under its usual name,
    plus 'D' (the Dirac element, rho of the degree-one catalog element) and
    'Dk' (the k-Dirac element, under whichever reading is invariant).
    """

    algebra: TensorAlgebra
    elements: dict[str, UCElement]
    dk_reading: str


NAMED_ORDER = ("a1", "a2", "b", "c", "D", "d", "e", "f", "g", "h", "i", "j")


def build_catalog(alg: TensorAlgebra) -> Catalog:
    """Map the closed-form catalog through rho and certify K-invariance.

    The k-Dirac element is built under both readings of its third summand;
    whichever is invariant wins (they never both are). InvarianceError if any
    catalog element fails certification.
    """
    st = build_st_catalog()
    elements: dict[str, UCElement] = {}
    for name in NAMED_ORDER:
        el = alg.rho(st.named[name])
        for z in K_GENS:
            res = alg.ad_action(lie_gen(z), el)
            if not res.is_zero():
                raise InvarianceError(f"rho({name})", z.name, f"{len(res)} residual terms")
        elements[name] = el
    dk_reading = None
    for reading in ("literal", "paired"):
        cand = alg.k_dirac(reading)
        if alg.is_invariant(cand):
            dk_reading = reading
            elements["Dk"] = cand
            break
    if dk_reading is None:
        raise InvarianceError("Dk", "k", "no invariant reading of the third summand")
    return Catalog(algebra=alg, elements=elements, dk_reading=dk_reading)


# -- the identity suite ----------------------------------------------------------

RELATION_NAMES = ("b", "d", "e", "j", "f", "g", "h", "c")

# The identities for h and c are checked in two forms. The 'literal' form
# takes the usual displayed grouping at face value; the 'regrouped' form
# moves the trailing correction of h outside the 1/4 bracket and drops the
# stray +6b / doubled a-terms of c down to -4(a1 + a2). The two forms differ
# by exact invariant combinations (literal h minus regrouped h is
# 9/16 (f - g - D); literal c minus regrouped c is 3/2 b - a1 - a2, up to
# sign), and only one of them can hold.
RELATION_VARIANTS = ("literal", "regrouped")


def relation_residuals(cat: Catalog, variant: str = "literal") -> dict[str, UCElement]:
    """Left minus right side of each identity in the suite."""
    if variant not in RELATION_VARIANTS:
        raise ValueError(f"unknown relation variant: {variant}")
    el = cat.elements
    D, Dk = el["D"], el["Dk"]
    a1, a2, b, c = el["a1"], el["a2"], el["b"], el["c"]
    d, e, f, g, h, i, j = (el[k] for k in ("d", "e", "f", "g", "h", "i", "j"))
    half = Fraction(1, 2)
    quarter = Fraction(1, 4)
    threehalf = Fraction(3, 2)
    res = {}
    res["b"] = b - (-half * (D * D) + Dk)
    res["d"] = d - (Dk - half * (Dk * i + i * Dk))
    res["e"] = e - (-1 * Dk - half * (Dk * i + i * Dk))
    res["j"] = j - half * (i * D - D * i)
    res["f"] = f - half * (d * D - D * d - 3 * j)
    res["g"] = g - half * (e * D - D * e - 3 * j)
    if variant == "literal":
        res["h"] = h - quarter * (
            d * (g + threehalf * D)
            + e * (f - threehalf * D)
            - Fraction(3, 4) * (f - g - D)
        )
        res["c"] = c - quarter * (
            (f - threehalf * D) * (g + threehalf * D)
            + (g + threehalf * D) * (f - threehalf * D)
            - (a2 * d + d * a2)
            + (a1 * e + e * a1)
            - half * (g * D - D * g)
            + half * (f * D - D * f)
            + (4 * b + 5) * (d - e)
            + 6 * b
            - 8 * a1
            - 8 * a2
        )
    else:
        res["h"] = h - (
            quarter * (d * (g + threehalf * D) + e * (f - threehalf * D))
            - Fraction(3, 4) * (f - g - D)
        )
        res["c"] = c - quarter * (
            (f - threehalf * D) * (g + threehalf * D)
            + (g + threehalf * D) * (f - threehalf * D)
            - (a2 * d + d * a2)
            + (a1 * e + e * a1)
            - half * (g * D - D * g)
            + half * (f * D - D * f)
            + (4 * b + 5) * (d - e)
            - 4 * a1
            - 4 * a2
        )
    return res


@dataclass
class RelationCheck:
    name: str
    variant: str
    residual_terms: int
    ok: bool


def verify_relations(cat: Catalog) -> list[RelationCheck]:
    """All identity checks: the eight literal forms plus the regrouped forms
    of h and c (the only two where the variants differ)."""
    out = []
    for variant in RELATION_VARIANTS:
        residuals = relation_residuals(cat, variant)
        for name in RELATION_NAMES:
            if variant == "regrouped" and name not in ("h", "c"):
                continue
            r = residuals[name]
            out.append(
                RelationCheck(name=name, variant=variant,
                              residual_terms=len(r), ok=r.is_zero())
            )
    return out


def effective_checks(checks: list[RelationCheck]) -> list[RelationCheck]:
    """One check per relation: the literal form for the six unambiguous
    identities, the regrouped form for h and c."""
    pick = {}
    for ch in checks:
        want = "regrouped" if ch.name in ("h", "c") else "literal"
        if ch.variant == want:
            pick[ch.name] = ch
    return [pick[name] for name in RELATION_NAMES if name in pick]


# -- convention adjudication --------------------------------------------------------

CONVENTION_LABELS = (
    "gram=trace sign=+1",
    "gram=trace sign=-1",
    "gram=trace/4 sign=+1",
    "gram=trace/4 sign=-1",
)


def convention_pform(label: str) -> PForm:
    scale = Fraction(1, 4) if "trace/4" in label else Fraction(1)
    sign = 1 if "sign=+1" in label else -1
    return PForm.from_trace_form(sign=sign, scale=scale)


@dataclass
class ConventionReport:
    label: str
    built: bool
    failure: str
    checks: list[RelationCheck]

    @property
    def literal_pass(self) -> bool:
        lit = [c for c in self.checks if c.variant == "literal"]
        return self.built and bool(lit) and all(c.ok for c in lit)

    @property
    def effective_pass(self) -> bool:
        """Passes with the regrouped forms standing in for h and c."""
        eff = effective_checks(self.checks)
        return self.built and len(eff) == len(RELATION_NAMES) and all(c.ok for c in eff)


@dataclass
class Adjudication:
    reports: list[ConventionReport]
    accepted: str | None
    catalog: Catalog | None  # catalog under the accepted convention


_ADJUDICATION: Adjudication | None = None


def adjudicate_convention() -> Adjudication:
    """Build the catalog and run the identity suite under each candidate
    Clifford normalization; accept the one where the whole suite passes."""
    global _ADJUDICATION
    if _ADJUDICATION is not None:
        return _ADJUDICATION
    reports = []
    accepted = None
    accepted_catalog = None
    for label in CONVENTION_LABELS:
        alg = TensorAlgebra(convention_pform(label))
        try:
            cat = build_catalog(alg)
        except InvarianceError as exc:
            reports.append(ConventionReport(label, False, str(exc), []))
            continue
        checks = verify_relations(cat)
        report = ConventionReport(label, True, "", checks)
        reports.append(report)
        if report.effective_pass and accepted is None:
            accepted = label
            accepted_catalog = cat
    _ADJUDICATION = Adjudication(reports=reports, accepted=accepted, catalog=accepted_catalog)
    return _ADJUDICATION


def accepted_catalog() -> Catalog:
    adj = adjudicate_convention()
    if adj.catalog is None:
        raise DomainError("no Clifford normalization satisfies the identity suite")
    return adj.catalog


def catalog_for_sign(sign: int) -> Catalog:
    """Catalog with the Clifford sign forced, keeping the adjudicated
    normalization of the form (the two options exposed on the command line
    besides 'auto')."""
    label = f"gram=trace/4 sign={sign:+d}"
    alg = TensorAlgebra(convention_pform(label))
    return build_catalog(alg)


# -- generator theorem -----------------------------------------------------------

@dataclass
class ChainStep:
    name: str
    residual_terms: int
    ok: bool


def generator_chain_check(cat: Catalog) -> list[ChainStep]:
    """Rebuild rho(b), rho(d), ..., rho(c) from the five claimed generators
    rho(a1), rho(a2), rho(i), D, Dk alone, comparing each derived element to
    the catalog. Later steps consume the derived elements, not the catalog
    ones, so a pass certifies the whole generation chain."""
    el = cat.elements
    D, Dk, i = el["D"], el["Dk"], el["i"]
    a1, a2 = el["a1"], el["a2"]
    half = Fraction(1, 2)
    quarter = Fraction(1, 4)
    threehalf = Fraction(3, 2)
    steps = []

    derived: dict[str, UCElement] = {}
    derived["b"] = -half * (D * D) + Dk
    anti = half * (Dk * i + i * Dk)
    derived["d"] = Dk - anti
    derived["e"] = -1 * Dk - anti
    derived["j"] = half * (i * D - D * i)
    derived["f"] = half * (derived["d"] * D - D * derived["d"] - 3 * derived["j"])
    derived["g"] = half * (derived["e"] * D - D * derived["e"] - 3 * derived["j"])
    # h and c use the regrouped identity forms, the ones that hold exactly
    derived["h"] = quarter * (
        derived["d"] * (derived["g"] + threehalf * D)
        + derived["e"] * (derived["f"] - threehalf * D)
    ) - Fraction(3, 4) * (derived["f"] - derived["g"] - D)
    derived["c"] = quarter * (
        (derived["f"] - threehalf * D) * (derived["g"] + threehalf * D)
        + (derived["g"] + threehalf * D) * (derived["f"] - threehalf * D)
        - (a2 * derived["d"] + derived["d"] * a2)
        + (a1 * derived["e"] + derived["e"] * a1)
        - half * (derived["g"] * D - D * derived["g"])
        + half * (derived["f"] * D - D * derived["f"])
        + (4 * derived["b"] + 5) * (derived["d"] - derived["e"])
        - 4 * a1
        - 4 * a2
    )
    for name in ("b", "d", "e", "j", "f", "g", "h", "c"):
        diff = derived[name] - el[name]
        steps.append(ChainStep(name=name, residual_terms=len(diff), ok=diff.is_zero()))
    return steps


@dataclass
class Rank16Report:
    vector_count: int
    rank: int
    expected: int
    ok: bool


def st_product_vectors(cat: Catalog, cap: int = 6) -> list[tuple[int, UCElement]]:
    """All products sigma(s) . rho(t), s over monomials in the four polynomial
    invariants and t over the sixteen module generators, with total degree
    deg s + deg t <= cap. Returns (degree, element) pairs."""
    st = build_st_catalog()
    alg = cat.algebra
    rho_t: dict[str, UCElement] = {
        name: alg.rho(st.t_elements[name]) for name in st.t_elements
    }
    out: list[tuple[int, UCElement]] = []
    for q in s_monomials_up_to(cap):
        s_deg = 2 * (q[0] + q[1] + q[2]) + 4 * q[3]
        s_el = s_monomial_element(st, q)
        # s is a pure S(g) element; symmetrize and lift
        s_u = symmetrize(SElement({exp: c for (exp, mask), c in s_el.terms.items()}))
        s_uc = alg.from_u(s_u)
        for name, t_el in rho_t.items():
            total = s_deg + st.t_degrees[name]
            if total > cap:
                continue
            out.append((total, alg.multiply(s_uc, t_el)))
    return out


def uc_rank(vectors: list[UCElement]) -> int:
    """Rank over Q of a family of tensor elements."""
    from .linalg import RationalEchelon

    ech = RationalEchelon()
    key_index: dict[UCKey, int] = {}
    for v in vectors:
        vec = {}
        for k, c in v.terms.items():
            if k not in key_index:
                key_index[k] = len(key_index)
            vec[key_index[k]] = c
        ech.insert(vec)
    return ech.rank


def truncated_rank16_check(cat: Catalog, cap: int = 6) -> Rank16Report:
    """Truncated freeness evidence: the products sigma(s) . rho(t) for s over
    the polynomial generators and t over the sixteen module generators, with
    deg s + deg t <= cap, must be linearly independent over Q."""
    vectors = [v for _, v in st_product_vectors(cat, cap)]
    rank = uc_rank(vectors)
    count = len(vectors)
    return Rank16Report(vector_count=count, rank=rank, expected=count, ok=rank == count)
