import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qdissect import eta as E
from qdissect import series as S
from qdissect.dsl import (DslError, ParseError, ScriptError, eval_expr, parse_expr,
                          parse_script, run_script, strip_parens, to_text, tokenize)
from qdissect.dsl import ast as A


def test_precedence_and_folding():
    node = parse_expr("4*q*f2^3 - f1^-2/f6")
    assert strip_parens(node) == A.Sub(
        A.Mul(A.Mul(A.IntLit(4), A.QPower(1)), A.EtaSym(2, 3)),
        A.Div(A.EtaSym(1, -2), A.EtaSym(6, 1)),
    )
    assert parse_expr("-f1^2") == A.Neg(A.EtaSym(1, 2))
    assert parse_expr("(f1)^2") == A.Pow(A.Paren(A.EtaSym(1, 1)), 2)


def test_offsets_are_bytes():
    toks = tokenize("f1 # é\nf2")
    assert [t.kind for t in toks] == ["eta", "newline", "eta", "eof"]
    assert toks[2].start == len("f1 # é\n".encode())


@pytest.mark.parametrize("text,offset", [
    ("f1^", 3), ("f1 +", 4), ("(f1", 3), ("f1 f2", 3), ("f0", 0), ("2 $ 3", 2), ("q^x", 2),
])
def test_parse_errors_point_at_the_problem(text, offset):
    with pytest.raises(ParseError) as info:
        parse_expr(text)
    assert info.value.offset == offset
    caret = info.value.format(text).splitlines()[-1]
    assert caret.index("^") - 2 == len(text.encode()[:offset].decode())


def test_expected_set_is_reported():
    with pytest.raises(ParseError) as info:
        parse_expr("f1^")
    assert "integer exponent" in info.value.expected


def test_eval_basics():
    assert eval_expr("f2*f6/f1^2", n=4).tolist() == [1, 2, 4, 8, 14]
    assert eval_expr("1", n=3).tolist() == [1, 0, 0, 0]
    assert eval_expr("q^5", n=3).tolist() == [0, 0, 0, 0]
    assert eval_expr("(1 - q)^-1", ring=S.mod(7), n=3).tolist() == [1, 1, 1, 1]
    with pytest.raises(DslError, match="negative powers of q"):
        eval_expr("q^-1", n=3)
    with pytest.raises(DslError, match="cannot divide"):
        eval_expr("1/(2 + q)", n=3)
    with pytest.raises(DslError, match="undefined name"):
        eval_expr("x + 1", n=3)


def test_script_errors_carry_the_line():
    with pytest.raises(ScriptError) as info:
        run_script("order 10\nlet a = f1\norder 20\nassert a == f1\n")
    assert info.value.line == 4 and "order exceeded" in info.value.message
    with pytest.raises(ScriptError, match="ring mismatch"):
        run_script("ring mod 8\nlet a = f1\nring mod 3\nassert a == f1\n")
    with pytest.raises(ScriptError, match="ring mismatch"):
        run_script("ring mod 8\nassert f1 =mod= 3 f1\n")
    with pytest.raises(ScriptError, match="upto"):
        run_script("order 10\nassert f1 == f1 upto 11\n")
    with pytest.raises(ParseError):
        parse_script("let = 3\n")


def test_script_failure_is_reported_not_raised():
    rep = run_script("order 20\nassert f1^2 == f2\nassert f1^2 =mod= 2 f2\n")
    assert [r.passed for r in rep.results] == [False, True]
    assert rep.results[0].exponent == 1
    assert not rep.passed
    assert rep.to_dict()["status"] == "failed"


def test_reduce_and_extract_statements():
    # odd part of f2/f1^2 from the 2-dissection of 1/f1^2
    rep = run_script(
        "order 61\nlet a = f2/f1^2\nlet b = reduce(a, 8)\nring mod 8\n"
        "let c = extract(b, 1, 2)\norder 30\nassert c == 2*f2^2*f8^2/(f1^4*f4)\n"
        "ring exact\nlet d = extract(a, 1, 2)\nassert d == 2*f2^2*f8^2/(f1^4*f4)\n"
    )
    assert rep.passed and len(rep.results) == 2


# ---------------------------------------------------------------------------
# round trip and evaluation homomorphism

LEAVES = st.one_of(
    st.integers(0, 20).map(A.IntLit),
    st.integers(0, 4).map(A.QPower),
    st.builds(A.EtaSym, st.integers(1, 9), st.integers(-4, 4).filter(bool)),
)


def trees(leaves=LEAVES):
    return st.recursive(
        leaves,
        lambda kids: st.one_of(
            st.builds(A.Neg, kids),
            st.builds(A.Add, kids, kids),
            st.builds(A.Sub, kids, kids),
            st.builds(A.Mul, kids, kids),
            st.builds(A.Pow, kids, st.integers(0, 3)),
        ),
        max_leaves=8,
    )


@settings(max_examples=1000)
@given(trees())
def test_print_parse_round_trip(tree):
    assert strip_parens(parse_expr(to_text(tree))) == strip_parens(tree)


R = S.mod(1009)
N = 24


def value(tree):
    return eval_expr(tree, R, N)


@settings(max_examples=1000)
@given(trees(), trees(), st.sampled_from([A.Add, A.Sub, A.Mul]))
def test_evaluation_is_a_homomorphism(x, y, op):
    expected = {A.Add: S.add, A.Sub: S.sub, A.Mul: S.mul}[op](value(x), value(y))
    assert value(op(x, y)) == expected


@settings(max_examples=200)
@given(st.dictionaries(st.integers(1, 9), st.integers(-5, 5), min_size=1, max_size=3))
def test_eta_text_evaluates_like_the_expansion(exps):
    eq = E.EtaQuotient(exps)
    assert value(str(eq)) == E.expand_eta_quotient(eq, R, N)
