import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import closure_size, compose, ngon_symmetries, perm_order, search_triangle_witness
from orbicert.coset_enum import (
    EnumerationLimits,
    Enumerator,
    NonTermination,
    Strategy,
    element_order,
    enumerate_cosets,
    generator_permutations,
    standardize,
    trace,
    word_permutation,
)
from orbicert.presentation import Presentation, Relator, invert, parse_presentation

X, Y = 1, 2

SMALL_GROUPS = [
    ("< x | x^3 >", 3),
    ("< x | x >", 1),
    ("< x | x^2, x^3 >", 1),
    ("< x, y | x^2, y^2, (x*y)^3 >", 6),
    ("< x, y | x^2, y^3, (x*y)^3 >", 12),
    ("< x, y | x^2, y^3, (x*y)^4 >", 24),
    ("< x, y | x^2, y^3, (x*y)^5 >", 60),
    ("< a, b | a^4, b^2, (a*b)^2 >", 8),
    ("< a, b | a^3, b^3, a*b*a^-1*b^-1 >", 9),
    ("< a, b | (a*b*a^-1*b^-1)^1, a^4, b^6 >", 24),
    ("< a, b, c | a^2, b^2, c^2, (a*b)^3, (b*c)^3, (a*c)^2 >", 24),
]


def enum(text, strategy=Strategy.HLT, max_cosets=100_000):
    p = parse_presentation(text)
    t, _ = enumerate_cosets(p, EnumerationLimits(max_cosets, strategy))
    return p, t


def test_cyclic_three():
    _, t = enum("< x | x^3 >")
    assert t.size == 3


def test_icosahedral_order_matches_permutation_closure():
    _, t = enum("< x, y | x^2, y^3, (x*y)^5 >")
    witness = search_triangle_witness(2, 3, 5, 5)
    assert witness is not None
    assert closure_size(witness) == 60
    assert t.size == 60


def test_hyperbolic_triangle_hits_cap():
    p = parse_presentation("< x, y | x^2, y^3, (x*y)^7 >")
    with pytest.raises(NonTermination) as info:
        enumerate_cosets(p, EnumerationLimits(100_000))
    assert info.value.cosets == 100_000
    assert not info.value.stats.closed


def test_trace_examples():
    _, t = enum("< x | x^3 >")
    assert trace(t, 0, ()) == 0
    # first-definition numbering: 0 -x-> 1 -x-> 2
    assert trace(t, 0, (X, X)) == 2


@pytest.mark.parametrize("text, n", SMALL_GROUPS)
def test_trace_inverse_law(text, n):
    p, t = enum(text)
    w = (1, -1, 1) if p.d == 1 else (1, 2, -1, 2, 2)
    for c in range(t.size):
        assert trace(t, c, w + invert(w)) == c


def test_element_order_examples():
    _, s3 = enum("< x, y | x^2, y^2, (x*y)^3 >")
    assert element_order(s3, ()) == 1
    assert element_order(s3, (X, Y)) == 3
    # brute force in the symmetry group of the triangle
    x, y = ngon_symmetries(3)
    assert closure_size((x, y)) == 6 and perm_order(compose(x, y)) == 3
    _, z6 = enum("< x | x^6 >")
    assert element_order(z6, (X, X)) == 3


def test_generator_permutations():
    _, t = enum("< x | x^3 >")
    (x,) = generator_permutations(t)
    assert perm_order(x) == 3 and all(x[c] != c for c in range(3))
    _, trivial = enum("< x | x >")
    assert generator_permutations(trivial) == [(0,)]
    _, d3 = enum("< x, y | x^2, y^2, (x*y)^3 >")
    for g in generator_permutations(d3):
        assert len(g) == 6
        assert all(g[c] != c and g[g[c]] == c for c in range(6))


def test_merge_noop_and_absorb():
    p = parse_presentation("< x, y | x^2, y^2 >")
    e = Enumerator(p, EnumerationLimits(100))
    for _ in range(7):
        e.define(len(e.table) - 1, 0)
    # row 7 only holds its back edge to 6; merge it into 2
    e.merge_cosets(5, 5)
    assert e.live == 8
    e.table[7] = [None] * e.ncols
    e.table[6][0] = None
    e.merge_cosets(2, 7)
    assert not e.is_live(7) and e.rep(7) == 2
    assert all(7 not in row for row in e.table)


def test_cascading_coincidence_collapses_to_trivial():
    _, t = enum("< x | x^2, x^3 >")
    assert t.size == 1
    _, f = enum("< x | x^2, x^3 >", Strategy.FELSCH)
    assert f.size == 1


@pytest.mark.parametrize("text, n", SMALL_GROUPS)
@pytest.mark.parametrize("strategy", list(Strategy))
def test_closed_table_invariants(text, n, strategy):
    p, t = enum(text, strategy)
    assert t.size == n
    for rel in p.relators:
        for c in range(t.size):
            assert trace(t, c, rel.word) == c
        k = element_order(t, rel.base)
        assert rel.exponent % k == 0
        perm = word_permutation(t, rel.base)
        seen = set()
        for c in range(t.size):
            if c in seen:
                continue
            length, x = 0, c
            while x not in seen:
                seen.add(x)
                x = perm[x]
                length += 1
            assert length == k
    for j in range(p.d):
        col, inv = t.action, 2 * j
        assert all(col[col[c][inv]][inv + 1] == c for c in range(t.size))


@pytest.mark.parametrize("text, n", SMALL_GROUPS)
def test_strategies_agree_after_standardization(text, n):
    _, a = enum(text, Strategy.HLT)
    _, b = enum(text, Strategy.FELSCH)
    assert standardize(a) == standardize(b)


@pytest.mark.parametrize("text, n", SMALL_GROUPS)
def test_standardize_idempotent_and_deterministic(text, n):
    _, t = enum(text)
    s = standardize(t)
    assert standardize(s) == s
    assert enum(text)[1] == t


def test_small_cap_on_finite_group():
    p = parse_presentation("< x, y | x^2, y^3, (x*y)^5 >")
    with pytest.raises(NonTermination):
        enumerate_cosets(p, EnumerationLimits(10))


def test_limits_validation():
    with pytest.raises(ValueError):
        EnumerationLimits(0)
    assert EnumerationLimits(5, "felsch").strategy is Strategy.FELSCH


@st.composite
def cyclic_products(draw):
    """Presentations of Z_a x Z_b with extra redundant relators; order a*b."""
    a = draw(st.integers(1, 6))
    b = draw(st.integers(1, 6))
    rels = [Relator((X,), a), Relator((Y,), b), Relator((X, Y, -X, -Y), 1)]
    if draw(st.booleans()):
        rels.append(Relator((X,) * a + (Y,) * b, 1))
    order = draw(st.permutations(rels))
    return Presentation(("x", "y"), tuple(order)), a * b


@settings(max_examples=40, deadline=None)
@given(cyclic_products(), st.sampled_from(list(Strategy)))
def test_abelian_products(case, strategy):
    p, n = case
    t, _ = enumerate_cosets(p, EnumerationLimits(10_000, strategy))
    assert t.size == n
