import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from zernike_disc.errors import DegreeOverflowError, ObservableEvaluationError, ObservableSyntaxError
from zernike_disc.observable import BinOp, Const, Func, Neg, Pow, Var, as_observable, parse_observable

CORPUS = [
    "1", "z", "zbar", "r2", "i", "2.5", "-3", "1e-3", "2i", "1+2i",
    "z + zbar", "z - zbar", "z*zbar", "z / 2", "(z+zbar)/1.4142135623730951",
    "(z - zbar)/(1.4142135623730951i)", "z^2", "zbar^3", "r2^4", "(z+1)^2",
    "-z", "--z", "-(z + zbar)", "-z^2", "(-z)^2", "z^-1", "1/(2 - re(z))",
    "re(z)", "im(z)", "conj(z)", "re(z^2)", "im(z*z*z)", "conj(conj(zbar))",
    "re(z)^2 + im(z)^2", "1 - 2*z + 3*zbar^2", "z*(zbar - 1)*(z + i)",
    "((z))", "z - (zbar - r2)", "z - zbar - r2", "z / (zbar / 2)", "z / zbar / 2",
    "2*3*z", "2*(3*z)", "(z+zbar)^2/2 - r2", "0.5*(z^2 + zbar^2)",
    "-1.5e2*z^10", "z^64", "1/(1.0001 - re(z))", "im(z^3) - re(z)^2*im(z)",
    "(1 + 2i)*z - (3 - 0.5i)*zbar",
]


def test_corpus_size():
    assert len(CORPUS) == 50 and len(set(CORPUS)) == 50


@pytest.mark.parametrize("text", CORPUS)
def test_round_trip_fixed_point(text):
    once = parse_observable(text).pretty()
    twice = parse_observable(once).pretty()
    assert once == twice
    z = np.array([0.3 + 0.4j, -0.2 + 0.1j, 0.55j])
    assert np.allclose(parse_observable(once)(z), parse_observable(text)(z), rtol=1e-14, atol=1e-15)


leaves = st.one_of(
    st.sampled_from([Var("z"), Var("zbar"), Var("r2"), Const(1j)]),
    st.floats(-5, 5, allow_nan=False).map(lambda x: Const(complex(x, 0.0))),
)


def _extend(children):
    return st.one_of(
        st.builds(BinOp, st.sampled_from("+-*"), children, children),
        st.builds(Neg, children),
        st.builds(Pow, children, st.integers(0, 4)),
        st.builds(Func, st.sampled_from(["re", "im", "conj"]), children),
    )


trees = st.recursive(leaves, _extend, max_leaves=8)


@given(trees)
def test_printed_trees_reparse_to_the_same_value(tree):
    text = tree.pretty()
    again = parse_observable(text)
    assert again.pretty() == parse_observable(again.pretty()).pretty()
    z = np.array([0.3 + 0.4j, -0.6 + 0.1j])
    with np.errstate(all="ignore"):
        a, b = tree(z), again(z)
    assert np.allclose(a, b, rtol=1e-12, atol=1e-12, equal_nan=True)


def test_hamiltonian_is_exact():
    value = parse_observable("z*zbar")(0.3 + 0.4j)
    assert value == 0.25
    assert parse_observable("z*zbar")(0.3 + 0.4j).imag == 0


def test_examples():
    one = parse_observable("1")
    assert one(0.2j) == 1 and one.is_polynomial and one.degree == 0
    q = parse_observable("(z+zbar)/1.4142135623730951")
    z = np.array([0.3 + 0.4j, -0.5j])
    assert np.allclose(q(z), 2 * z.real / math.sqrt(2), rtol=1e-15)
    assert q.is_polynomial and q.degree == 1
    h = parse_observable("z*zbar")
    assert h.degree == 2 and h.to_polynomial()[(1, 1)] == 1


def test_polynomial_flag_and_degree():
    cases = {
        "z^3*zbar + 1": 4,
        "re(z^2)": 2,
        "im(z)^2 - 3": 2,
        "(z + zbar)/2": 1,
        "2^-1*z": 1,
        "r2^5": 10,
        "conj(z^2*zbar)": 3,
    }
    for text, degree in cases.items():
        expr = parse_observable(text)
        assert expr.is_polynomial and expr.degree == degree, text
    for text in ["1/z", "1/(2 - re(z))", "z^-2", "z/zbar"]:
        expr = parse_observable(text)
        assert not expr.is_polynomial and expr.degree is None


@pytest.mark.parametrize(
    "text,position",
    [("z +", 3), ("z * * z", 4), ("(z + 1", 6), ("foo(z)", 0), ("z $ 1", 2), ("re z", 3), ("z^1.5", 2), ("2 z", 2)],
)
def test_syntax_errors_report_positions(text, position):
    with pytest.raises(ObservableSyntaxError, match=rf"\(at position {position}\)") as info:
        parse_observable(text)
    assert info.value.position == position


def test_power_limit():
    assert parse_observable("z^64").degree == 64
    with pytest.raises(DegreeOverflowError):
        parse_observable("z^65")
    with pytest.raises(DegreeOverflowError):
        parse_observable("zbar^-100")


def test_zero_denominator():
    with pytest.raises(ObservableEvaluationError):
        parse_observable("1/z")(np.array([0.1, 0.0]))
    with pytest.raises(ObservableEvaluationError):
        parse_observable("z^-1")(0.0)


def test_whitespace_insensitive_and_inputs():
    assert parse_observable("  z*  zbar ").pretty() == parse_observable("z*zbar").pretty()
    assert as_observable("z") == Var("z")
    f = lambda z: z
    assert as_observable(f) is f
    with pytest.raises(TypeError):
        parse_observable(3)
