from __future__ import annotations

import itertools
import math
from pathlib import Path

import pytest

DATA = Path(__file__).parent / "data"

# filled by tests/test_acceptance.py, printed at the end of the session
ACCEPTANCE: dict[str, tuple[bool, str]] = {}


@pytest.fixture
def data_dir() -> Path:
    return DATA


# -- independent permutation-group oracles ---------------------------------
# Permutations are tuples of images on 0..n-1, composed left to right.


def compose(a, b):
    return tuple(b[x] for x in a)


def perm_order(p) -> int:
    seen = set()
    order = 1
    for s in range(len(p)):
        if s in seen:
            continue
        length, x = 0, s
        while x not in seen:
            seen.add(x)
            x = p[x]
            length += 1
        order = math.lcm(order, length)
    return order


def closure_size(gens) -> int:
    """Size of the permutation group generated by ``gens`` (breadth-first closure)."""
    identity = tuple(range(len(gens[0])))
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = compose(g, s)
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
        frontier = nxt
    return len(seen)


def ngon_symmetries(n: int):
    """Two reflections of the regular n-gon, acting on its 2n flags ``(k, s)``.

    Their product is the rotation ``k -> k + 1``; the action is regular, so
    the generated group has exactly ``2n`` elements for every ``n >= 2``.
    """
    index = {(k, s): 2 * k + (s < 0) for k in range(n) for s in (1, -1)}
    x = [0] * (2 * n)
    y = [0] * (2 * n)
    for (k, s), i in index.items():
        x[i] = index[((-k) % n, -s)]
        y[i] = index[((1 - k) % n, -s)]
    return tuple(x), tuple(y)


def search_triangle_witness(a: int, b: int, c: int, degree: int):
    """First pair (x, y) in S_degree with orders exactly (a, b) and x*y of order c."""
    perms = list(itertools.permutations(range(degree)))
    xs = [p for p in perms if perm_order(p) == a]
    ys = [p for p in perms if perm_order(p) == b]
    for x in xs:
        for y in ys:
            if perm_order(compose(x, y)) == c:
                return x, y
    return None


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE, key=lambda s: int(s.split()[1])):
        ok, detail = ACCEPTANCE[name]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
