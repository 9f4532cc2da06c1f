import warnings

import pytest
from hypothesis import given
from hypothesis import strategies as st

from orbicert.presentation import (
    Presentation,
    PresentationError,
    PresentationSyntaxError,
    ProperPowerWarning,
    Relator,
    abelianize,
    cyclically_reduce,
    free_reduce,
    invert,
    parse_presentation,
    parse_word,
)

X, Y = 1, 2


def words(d=3, max_size=12):
    letters = st.integers(1, d).flatmap(lambda k: st.sampled_from([k, -k]))
    return st.lists(letters, max_size=max_size).map(tuple)


def test_parse_single_letter():
    p = parse_presentation("< x | x^3 >")
    assert p.d == 1
    assert p.relators == (Relator((X,), 3),)


def test_parse_triangle():
    p = parse_presentation("< x, y | x^2, y^3, (x*y)^5 >")
    assert p.d == 2 and p.r == 3
    assert [(rel.base, rel.exponent) for rel in p.relators] == [((X,), 2), ((Y,), 3), ((X, Y), 5)]


def test_zero_exponent_rejected():
    with pytest.raises(PresentationError, match=">= 1"):
        parse_presentation("< x | x^0 >")


def test_power_inside_base_needs_explicit_one():
    with pytest.warns(ProperPowerWarning):
        p = parse_presentation("< x | (x^2)^1 >")
    assert p.relators[0] == Relator((X, X), 1)
    with pytest.warns(ProperPowerWarning):
        q = parse_presentation("< x | (x^2)^3 >")
    assert q.relators[0] == Relator((X, X), 3)


def test_product_without_trailing_exponent():
    p = parse_presentation("< x, y | x^2*y^-1 >")
    assert p.relators[0] == Relator((X, X, -Y), 1)


def test_base_is_cyclically_reduced():
    p = parse_presentation("< x, y | (y^-1*x*y)^4 >")
    assert p.relators[0] == Relator((X,), 4)


def test_empty_relator_list():
    p = parse_presentation("<a,b|>")
    assert p.d == 2 and p.r == 0


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("< x | y >", "unknown generator"),
        ("< x, x | x >", "duplicate"),
        ("< x | x*x^-1 >", "empty"),
        ("< x | x^2 ", "expected"),
        ("< x | x % 2 >", "unexpected character"),
        ("< x | x^2, (x*x^0) >", ">= 1"),
    ],
)
def test_errors(text, fragment):
    with pytest.raises(PresentationError, match=fragment):
        parse_presentation(text)


def test_syntax_error_position():
    with pytest.raises(PresentationSyntaxError) as info:
        parse_presentation("< x, y |\n  x^2, y^3 (x*y)^5 >")
    assert (info.value.line, info.value.column) == (2, 12)


def test_free_reduce_examples():
    assert free_reduce((X, -X, Y)) == (Y,)
    assert free_reduce(()) == ()
    assert free_reduce((X, Y, -Y, X)) == (X, X)


def test_cyclically_reduce_examples():
    assert cyclically_reduce((-X, Y, X)) == (Y,)
    assert cyclically_reduce((X, Y)) == (X, Y)
    assert cyclically_reduce((X, -X)) == ()


def test_invert_examples():
    assert invert((X, Y)) == (-Y, -X)
    assert invert(()) == ()
    assert invert((-X,)) == (X,)


def test_abelianize_examples():
    assert abelianize((X, Y, -X, -Y), 2) == (0, 0)
    assert abelianize((X, X, Y), 2) == (2, 1)
    assert abelianize((), 3) == (0, 0, 0)


@given(words())
def test_reductions_idempotent_and_shortening(w):
    f = free_reduce(w)
    c = cyclically_reduce(w)
    assert free_reduce(f) == f
    assert cyclically_reduce(c) == c
    assert len(c) <= len(f) <= len(w)


@given(words())
def test_cyclic_reduction_is_a_conjugate(w):
    f = free_reduce(w)
    c = cyclically_reduce(w)
    k = (len(f) - len(c)) // 2
    prefix = f[:k]
    assert free_reduce(prefix + c + invert(prefix)) == f


@given(words())
def test_abelianize_ignores_free_reduction(w):
    assert abelianize(free_reduce(w), 3) == abelianize(w, 3)


@given(words())
def test_invert_involution(w):
    assert invert(invert(w)) == w
    assert free_reduce(w + invert(w)) == ()


relators = st.tuples(words(max_size=6).map(cyclically_reduce).filter(bool), st.integers(1, 9))


@given(st.lists(relators, max_size=5))
def test_round_trip(rels):
    p = Presentation(("x", "y", "z"), tuple(Relator(b, m) for b, m in rels))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ProperPowerWarning)
        assert parse_presentation(str(p)) == p


def test_parse_word():
    p = parse_presentation("< x, y | x^2 >")
    assert parse_word("x*y^-1*(x*y)^2", p) == (X, -Y, X, Y, X, Y)
    assert parse_word("x*x^-1", p) == ()
    assert parse_word("", p) == ()
    with pytest.raises(PresentationError):
        parse_word("z", p)


def test_duplicate_relators_kept():
    p = parse_presentation("< x | x^2, x^2 >")
    assert p.r == 2
