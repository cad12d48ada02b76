import random
from dataclasses import replace

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fano10.claims import precondition_errors
from fano10.wx_geometry import cubic
from fano10.wx_geometry.core import plucker_grams, quad_value

from conftest import F97


@pytest.fixture(scope="module")
def admissible():
    return cubic.random_input(F97, random.Random(11))


def test_certified(admissible):
    g = cubic.twisted_cubic(admissible)
    cert = cubic.certify(admissible, g)
    assert cert.ok and cert.degree == 3 and cert.spans_p3


def test_incidences_by_hand(admissible):
    g = cubic.twisted_cubic(admissible)
    F = cubic._field_of_rows([g.w0]) or F97
    one = F(1)
    assert cubic.proportional(g.gamma(one), cubic.wedge2(admissible.line.e1, admissible.w))
    assert cubic.proportional(g.gamma(g.t0), cubic.wedge2(admissible.line2.e1, admissible.w2))
    assert g.t0 not in (F(0), one)


@settings(max_examples=10)
@given(st.integers(0, 10 ** 6))
def test_decomposable_everywhere(seed):
    inp = cubic.random_input(F97, random.Random(seed))
    g = cubic.twisted_cubic(inp)
    F = cubic._field_of_rows([g.w0]) or F97
    grams = plucker_grams(F)
    for t in range(20):
        assert all(quad_value(G, g.gamma(F(t))) == 0 for G in grams)
    assert all(quad_value(G, g.gamma_inf()) == 0 for G in grams)


@settings(max_examples=10)
@given(st.integers(0, 10 ** 6))
def test_gauge_independence(seed):
    rnd = random.Random(seed)
    inp = cubic.random_input(F97, rnd)
    assert cubic.same_curve(cubic.twisted_cubic(inp), cubic.twisted_cubic(inp, gauge=random.Random(seed + 1)))


def test_different_w_gives_different_curve(admissible):
    rnd = random.Random(5)
    other = cubic.random_input(F97, rnd)
    assert not cubic.same_curve(cubic.twisted_cubic(admissible), cubic.twisted_cubic(other))


@pytest.mark.parametrize("seed,field", [(0, "fp:97"), (5, "fp2:97")])
def test_split_and_inert_bisecants(seed, field):
    inp = cubic.random_input(F97, random.Random(seed))
    g = cubic.twisted_cubic(inp)
    assert str(cubic._field_of_rows([g.w0]) or F97) == field
    assert cubic.certify(inp, g).ok


def test_named_precondition_errors():
    errors = precondition_errors(F97, random.Random(4))
    assert errors == {k: k for k in errors}
    assert set(errors) == {"HyperplaneContainsE1", "NotOnLine", "NotATauConic", "DegenerateBisecant"}


def test_w_on_quadric(admissible):
    # w on Q_d breaks the bisecant normalization
    with pytest.raises(cubic.PreconditionError):
        cubic.twisted_cubic(replace(admissible, w2=admissible.line2.e1))


def test_lines_must_meet(admissible):
    rnd = random.Random(9)
    v3 = tuple(tuple(F97(rnd.randrange(97)) for _ in range(5)) for _ in range(3))
    with pytest.raises(cubic.LinesDoNotMeet):
        cubic.twisted_cubic(replace(admissible, line2=cubic.LineData(v3[0], v3)))
