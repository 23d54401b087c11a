"""Expression parser, evaluator, element files, and the command line driver."""
from fractions import Fraction

import pytest

from so41inv.errors import EvalError, ExprTypeError, ParseError
from so41inv.evaluator import evaluate
from so41inv.parser import BinOp, Call, Num, Sym, describe, parse
from so41inv.serialization import dump_element, dumps_element, load_element, loads_element
from so41inv.sym_ext import se_gen
from so41inv import cli


# -- parser ------------------------------------------------------------------------

def test_parse_precedence_product_over_sum():
    node = parse("a1 + b * c")
    assert isinstance(node, BinOp) and node.op == "+"
    assert isinstance(node.right, BinOp) and node.right.op == "*"


def test_parse_wedge_binds_tighter_than_star():
    node = parse("2/3 * E3 ^ F3")
    assert isinstance(node, BinOp) and node.op == "*"
    assert node.left == Num(Fraction(2, 3))
    assert node.right == BinOp("^", Sym("E3"), Sym("F3"))


def test_parse_ot_binds_tighter_than_star():
    node = parse("E1 ot E3 * F1 ot F3")
    assert isinstance(node, BinOp) and node.op == "*"
    assert node.left.op == "ot" and node.right.op == "ot"


def test_parse_call_with_two_args():
    node = parse("ad(E1, D)")
    assert node == Call("ad", (Sym("E1"), Sym("D")))


def test_call_arity_is_enforced():
    with pytest.raises(ParseError):
        parse("ad(E1)")
    with pytest.raises(ParseError):
        parse("sigma(E1, F1)")


def test_parse_fraction_literals():
    assert parse("3/4") == Num(Fraction(3, 4))
    assert parse("7") == Num(Fraction(7))


@pytest.mark.parametrize("src", [
    "a1 + a2 - 2 * b",
    "sigma(E1 * F1) - 1/2 * rho(D)",
    "-E3 ^ F3",
    "-(a1 * a2)",
    "E3 ^ E4 ^ F3",
    "2/3 * tau(E3 ^ F3) + ad(H1, D)",
    "(a1 + a2) * (b - c)",
    "E1 ot 1 + 1 ot E3",
])
def test_describe_round_trips(src):
    node = parse(src)
    text = describe(node)
    assert parse(text) == node


def test_wedge_of_k_generator_is_a_type_error():
    with pytest.raises(ExprTypeError):
        parse("H1 ^ E3")
    with pytest.raises(ExprTypeError):
        parse("E3 ^ (E1 + F4)")


def test_wedge_of_scalar_multiple_is_fine():
    # scalars may scale a wedge factor without changing its flavor
    node = parse("(2 * E3) ^ F3")
    assert isinstance(node, BinOp) and node.op == "^"


def test_parse_error_positions():
    with pytest.raises(ParseError) as exc:
        parse("a1 + $")
    assert exc.value.position == 5
    with pytest.raises(ParseError) as exc:
        parse("a1 + ")
    assert "end of input" in str(exc.value)
    with pytest.raises(ParseError) as exc:
        parse("a1 b")
    assert exc.value.position == 3


def test_unbalanced_parens():
    with pytest.raises(ParseError):
        parse("(a1 + a2")
    with pytest.raises(ParseError):
        parse("a1)")


# -- evaluator ---------------------------------------------------------------------

def test_eval_ad_kills_invariants(cat):
    for name in ("D", "i", "c", "Dk"):
        out = evaluate(f"ad(E1, {name})", ambient="uc", catalog=cat)
        assert out.is_zero(), name


def test_eval_commutator_of_i_with_dirac(cat):
    lhs = evaluate("rho(i) * D - D * rho(i)", ambient="uc", catalog=cat)
    rhs = evaluate("2 * rho(j)", ambient="uc", catalog=cat)
    assert lhs == rhs


def test_eval_symmetrization(cat):
    from so41inv.matrix_oracle import Gen
    from so41inv.uea import u_gen

    out = evaluate("sigma(E1 * F1)", ambient="uc", catalog=cat)
    alg = cat.algebra
    e1f1 = u_gen(Gen.E1) * u_gen(Gen.F1)
    h = u_gen(Gen.H1) + u_gen(Gen.H2)
    assert out == alg.from_u(e1f1 - Fraction(1, 2) * h)


def test_eval_se_identity(st):
    one = evaluate("1", ambient="se")
    assert one == st.t_elements["1"]


def test_eval_se_tensor_grammar_builds_dirac(st):
    built = evaluate(
        "E3 ot F3 + E4 ot F4 + F3 ot E3 + F4 ot E4", ambient="se")
    assert built == st.named["D"]


def test_eval_scalar_lifts():
    out = evaluate("2 + 3", ambient="uc")
    assert out == evaluate("5", ambient="uc")
    assert not evaluate("0", ambient="se").terms


def test_eval_unknown_name():
    with pytest.raises(EvalError):
        evaluate("nosuch", ambient="uc")
    with pytest.raises(EvalError):
        evaluate("Dd", ambient="uc")  # a t-basis label, not a catalog name


def test_eval_se_rejects_rho():
    with pytest.raises(EvalError):
        evaluate("rho(i)", ambient="se")


def test_eval_ot_in_wrong_place():
    with pytest.raises(EvalError):
        evaluate("ad(H1, E1 ot E3 ot F3)", ambient="uc")


def test_eval_ad_first_arg_must_be_lie():
    with pytest.raises(EvalError):
        evaluate("ad(2, D)", ambient="uc")


def test_eval_wedge_type_error_propagates():
    with pytest.raises(ExprTypeError):
        evaluate("H1 ^ E3", ambient="se")


def test_eval_tau_matches_clifford_product_minus_pairing(cat):
    # tau(x ^ y) = xy - <x, y> for p-vectors, so tau(E3 ^ F3) differs from
    # the Clifford product by the gram pairing of E3 with F3
    from so41inv.clifford import P_INDEX
    from so41inv.matrix_oracle import Gen

    tau = evaluate("tau(E3 ^ F3)", ambient="uc", catalog=cat)
    prod = evaluate("(1 ot E3) * (1 ot F3)", ambient="uc", catalog=cat)
    pairing = cat.algebra.pform.phi(P_INDEX[Gen.E3], P_INDEX[Gen.F3])
    assert prod - tau == evaluate(str(pairing), ambient="uc", catalog=cat)


# -- element files -------------------------------------------------------------------

def test_round_trip_every_uc_catalog_element(cat):
    for name, el in cat.elements.items():
        text = dumps_element(el)
        back = loads_element(text)
        assert back == el, name
        assert dumps_element(back) == text, name


def test_round_trip_every_se_catalog_element(st):
    for name, el in st.named.items():
        text = dumps_element(el)
        back = loads_element(text)
        assert back == el, name


def test_dump_is_deterministic(cat):
    a = dumps_element(cat.elements["h"])
    b = dumps_element(cat.elements["h"])
    assert a == b


def test_file_round_trip(tmp_path, cat):
    path = tmp_path / "dk.element"
    dump_element(cat.elements["Dk"], str(path))
    assert load_element(str(path)) == cat.elements["Dk"]


def test_tampered_magic_rejected(cat):
    text = dumps_element(cat.elements["b"])
    bad = text.replace("so41inv-element v1", "so41inv-element v9")
    with pytest.raises(ParseError):
        loads_element(bad)


def test_tampered_order_hash_rejected(cat):
    text = dumps_element(cat.elements["b"])
    lines = text.splitlines()
    idx = next(i for i, ln in enumerate(lines) if ln.startswith("order-hash:"))
    lines[idx] = "order-hash: 0000000000000000"
    with pytest.raises(ParseError):
        loads_element("\n".join(lines) + "\n")


def test_tampered_term_count_rejected(cat):
    text = dumps_element(cat.elements["b"])
    lines = text.splitlines()
    idx = next(i for i, ln in enumerate(lines) if ln.startswith("terms:"))
    lines[idx] = "terms: 99"
    with pytest.raises(ParseError):
        loads_element("\n".join(lines) + "\n")


def test_bad_coefficient_rejected(cat):
    text = dumps_element(cat.elements["b"])
    bad = text.replace(" | ", " |bogus| ", 1)
    with pytest.raises(ParseError):
        loads_element(bad)


def test_se_element_round_trip():
    from so41inv.matrix_oracle import Gen
    el = se_gen(Gen.E3) * se_gen(Gen.F3) + Fraction(5, 3) * se_gen(Gen.H1)
    assert loads_element(dumps_element(el)) == el


# -- command line --------------------------------------------------------------------

def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cli_verify_table(capsys):
    code, out, _ = run_cli(capsys, "verify", "table")
    assert code == 0
    assert "MATRIX" in out and "TABLE" in out
    assert out.strip().splitlines()[-1].startswith("VERIFY table")
    assert out.strip().splitlines()[-1].endswith("PASS")


def test_cli_verify_relations_accepted(capsys):
    code, out, _ = run_cli(capsys, "verify", "relations")
    assert code == 0
    assert "CONVENTION sign=-1 gram=trace/4 dk_reading=paired" in out
    for name in ("b", "d", "e", "j", "f", "g", "h", "c"):
        assert f"RELATION {name} sign=-1 residual_terms=0 PASS" in out


def test_cli_verify_relations_rejected_sign(capsys):
    code, out, _ = run_cli(capsys, "verify", "relations", "--sign", "+1")
    assert code == 1
    assert "RELATION b sign=+1 residual_terms=8 FAIL" in out
    assert "FINDING relation=h literal_residual_terms=44 " \
           "regrouped_residual_terms=28" in out
    assert out.strip().splitlines()[-1].endswith("FAIL")


def test_cli_verify_chain_and_rank16(capsys):
    code, out, _ = run_cli(capsys, "verify", "chain")
    assert code == 0 and "VERIFY chain" in out
    code, out, _ = run_cli(capsys, "verify", "rank16", "--max-degree", "4")
    assert code == 0
    assert "rank=22" in out or "rank" in out


def test_cli_verify_dims_exact_small(capsys):
    code, out, _ = run_cli(capsys, "verify", "dims", "--max-degree", "3",
                           "--method", "exact")
    assert code == 0
    assert "DIM degree=3" in out
    assert "VERIFY dims" in out


def test_cli_verify_dims_emit_basis(capsys, tmp_path):
    out_dir = tmp_path / "basis"
    code, out, _ = run_cli(capsys, "verify", "dims", "--max-degree", "2",
                           "--method", "exact", "--emit-basis", str(out_dir))
    assert code == 0
    files = sorted(p.name for p in out_dir.iterdir())
    assert files == ["deg0_vec0.element", "deg2_vec0.element",
                     "deg2_vec1.element", "deg2_vec2.element",
                     "deg2_vec3.element"]
    for p in out_dir.iterdir():
        el = load_element(str(p))
        assert el.terms


def test_cli_eval(capsys):
    code, out, _ = run_cli(capsys, "eval", "ad(E1, D)")
    assert code == 0
    assert out.strip() == "0"


def test_cli_eval_se(capsys):
    code, out, _ = run_cli(capsys, "eval", "d", "--ambient", "se")
    assert code == 0
    assert out.strip()


def test_cli_eval_parse_error_exit_code(capsys):
    code, _, err = run_cli(capsys, "eval", "a1 +")
    assert code == 2
    assert "error:" in err


def test_cli_dump_load_round_trip(capsys, tmp_path, cat):
    path = tmp_path / "d.element"
    code, out, _ = run_cli(capsys, "dump", "D", "--out", str(path))
    assert code == 0 and "DUMP D" in out
    assert load_element(str(path)) == cat.elements["D"]
    code, out, _ = run_cli(capsys, "load", str(path))
    assert code == 0
    assert "kind=UCElement" in out and "terms=4" in out


def test_cli_dump_se_named(capsys, tmp_path, st):
    path = tmp_path / "h.element"
    code, out, _ = run_cli(capsys, "dump", "h", "--ambient", "se",
                           "--out", str(path))
    assert code == 0
    assert load_element(str(path)) == st.named["h"]


def test_cli_dump_unknown_name(capsys, tmp_path):
    code, _, err = run_cli(capsys, "dump", "nosuch",
                           "--out", str(tmp_path / "x.element"))
    assert code == 2
    assert "unknown element" in err


def test_cli_load_missing_file(capsys, tmp_path):
    code, _, err = run_cli(capsys, "load", str(tmp_path / "missing.element"))
    assert code == 2
    assert "error:" in err


def test_cli_verify_invariance(capsys):
    code, out, _ = run_cli(capsys, "verify", "invariance")
    assert code == 0
    assert out.count("INVARIANT") == 78


def test_cli_verify_all(capsys):
    code, out, _ = run_cli(capsys, "verify", "all", "--max-degree", "4")
    assert code == 0
    last = out.strip().splitlines()[-1]
    assert last.startswith("VERIFY all") and last.endswith("PASS")
