"""Order-hypothesis verification and the certificates that follow from it.

Given ``< x1..xd | u1^m1..ur^mr >`` where every ``u_i`` has order exactly
``m_i`` in the group, the quantity ``chi = 1 - d + sum 1/m_i`` controls
finiteness: a finite group has ``chi > 0`` and ``|G| >= 1/chi``, vanishing
first l2-Betti number forces ``chi >= 0``, and in general
``b1_l2(G) >= 1/|G| - chi``.
"""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import TYPE_CHECKING, Sequence

from .coset_enum import CosetTable, element_order
from .exact_linalg import SparseIntMatrix, order_in_quotient, smith_normal_form
from .presentation import Presentation, Word, abelianize

if TYPE_CHECKING:
    from .orbicomplex import EulerReport

__all__ = [
    "Status",
    "Method",
    "Kind",
    "RouteResult",
    "OrderVerdict",
    "InvalidWitness",
    "WitnessQuotient",
    "parse_witness",
    "Conclusion",
    "Certificate",
    "chi_orb",
    "sum_inverse_exponents",
    "relation_lattice",
    "abelian_invariants",
    "verify_orders",
    "apply_theorems",
    "l2_betti1_lower_bound",
]


class Status(str, enum.Enum):
    VERIFIED = "VERIFIED"
    REFUTED = "REFUTED"
    INCONCLUSIVE = "INCONCLUSIVE"


class Method(str, enum.Enum):
    COSET_TABLE = "COSET_TABLE"
    WITNESS = "WITNESS"
    ABELIANIZATION = "ABELIANIZATION"


class Kind(str, enum.Enum):
    FINITE_BOUND_OK = "FINITE_BOUND_OK"
    INFINITE = "INFINITE"
    NOT_KAZHDAN_T = "NOT_KAZHDAN_T"
    NO_INFINITE_AMENABLE_NORMAL = "NO_INFINITE_AMENABLE_NORMAL"
    BETTI1_LOWER_BOUND = "BETTI1_LOWER_BOUND"
    HYPOTHESIS_UNVERIFIED = "HYPOTHESIS_UNVERIFIED"
    VIOLATION = "VIOLATION"


def sum_inverse_exponents(p: Presentation) -> Fraction:
    return sum((Fraction(1, rel.exponent) for rel in p.relators), Fraction(0))


def chi_orb(p: Presentation) -> Fraction:
    """Orbihedral Euler characteristic ``1 - d + sum 1/m_i`` of the presentation complex."""
    return 1 - p.d + sum_inverse_exponents(p)


def l2_betti1_lower_bound(p: Presentation, size: int | None) -> Fraction:
    """``max(0, 1/|G| - chi)``, reading ``1/|G|`` as 0 when the size is unknown."""
    inv = Fraction(1, size) if size else Fraction(0)
    return max(Fraction(0), inv - chi_orb(p))


# ---------------------------------------------------------------------------
# witnesses


class InvalidWitness(ValueError):
    pass


def _perm_apply(perm: Sequence[int], inv: Sequence[int], w: Word, degree: int) -> list[int]:
    """Image of every point under the word, acting on the right like the coset table."""
    points = list(range(degree))
    for letter in w:
        g = perm[letter - 1] if letter > 0 else inv[-letter - 1]
        points = [g[x] for x in points]
    return points


def _perm_order(images: Sequence[int]) -> int:
    seen = [False] * len(images)
    order = 1
    for start in range(len(images)):
        if seen[start]:
            continue
        length = 0
        x = start
        while not seen[x]:
            seen[x] = True
            x = images[x]
            length += 1
        order = math.lcm(order, length)
    return order


@dataclass(frozen=True)
class WitnessQuotient:
    """Permutation images of the generators; a finite quotient of the group.

    Points are 0-based internally; the text format uses 1-based cycles.
    """

    degree: int
    images: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.degree < 1:
            raise InvalidWitness("degree must be positive")
        for img in self.images:
            if sorted(img) != list(range(self.degree)):
                raise InvalidWitness(f"{img} is not a permutation of {self.degree} points")

    def _inverses(self) -> list[list[int]]:
        invs = []
        for img in self.images:
            inv = [0] * self.degree
            for x, y in enumerate(img):
                inv[y] = x
            invs.append(inv)
        return invs

    def evaluate(self, w: Word) -> tuple[int, ...]:
        return tuple(_perm_apply(self.images, self._inverses(), w, self.degree))

    def word_order(self, w: Word) -> int:
        return _perm_order(self.evaluate(w))

    def check(self, p: Presentation) -> None:
        if len(self.images) != p.d:
            raise InvalidWitness(f"witness has {len(self.images)} images for {p.d} generators")
        identity = tuple(range(self.degree))
        for i, rel in enumerate(p.relators):
            if self.evaluate(rel.word) != identity:
                raise InvalidWitness(f"relator {i} ({p.format_relator(rel)}) is not the identity")

    def format(self, names: Sequence[str]) -> str:
        lines = [f"degree {self.degree}"]
        for name, img in zip(names, self.images):
            lines.append(f"{name}: {_cycle_notation(img)}")
        return "\n".join(lines) + "\n"


def _cycle_notation(img: Sequence[int]) -> str:
    seen = set()
    cycles = []
    for start in range(len(img)):
        if start in seen or img[start] == start:
            continue
        cyc = []
        x = start
        while x not in seen:
            seen.add(x)
            cyc.append(str(x + 1))
            x = img[x]
        cycles.append("(" + " ".join(cyc) + ")")
    return "".join(cycles) or "()"


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_witness(text: str, p: Presentation) -> WitnessQuotient:
    """Parse ``degree N`` followed by ``name: (1 2)(3 4)`` lines, one per generator."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]
    if not lines or not lines[0].startswith("degree"):
        raise InvalidWitness("witness must start with 'degree N'")
    try:
        degree = int(lines[0].split()[1])
    except (IndexError, ValueError):
        raise InvalidWitness(f"bad degree line {lines[0]!r}") from None
    images: dict[str, tuple[int, ...]] = {}
    for ln in lines[1:]:
        name, sep, cycles = ln.partition(":")
        name = name.strip()
        if not sep or name not in p.generator_names:
            raise InvalidWitness(f"bad witness line {ln!r}")
        if name in images:
            raise InvalidWitness(f"generator {name!r} given twice")
        img = list(range(degree))
        rest = _CYCLE_RE.sub("", cycles).strip()
        if rest:
            raise InvalidWitness(f"bad cycle notation {cycles.strip()!r}")
        for cyc in _CYCLE_RE.findall(cycles):
            pts = [int(tok) - 1 for tok in cyc.replace(",", " ").split()]
            if any(not 0 <= x < degree for x in pts) or len(set(pts)) != len(pts):
                raise InvalidWitness(f"bad cycle ({cyc}) for degree {degree}")
            for a, b in zip(pts, pts[1:] + pts[:1]):
                img[a] = b
        images[name] = tuple(img)
    missing = [name for name in p.generator_names if name not in images]
    if missing:
        raise InvalidWitness(f"no image for generators {missing}")
    w = WitnessQuotient(degree, tuple(images[name] for name in p.generator_names))
    w.check(p)
    return w


# ---------------------------------------------------------------------------
# order verification


@dataclass(frozen=True)
class RouteResult:
    method: Method
    status: Status
    actual: int | None


@dataclass(frozen=True)
class OrderVerdict:
    relator: int
    claimed: int
    status: Status
    method: Method | None
    actual: int | None = None
    routes: tuple[RouteResult, ...] = ()


def relation_lattice(p: Presentation) -> SparseIntMatrix:
    """Rows ``m_i * abelianize(u_i)``; ``Z^d`` modulo this lattice is the abelianization."""
    return SparseIntMatrix.from_rows([abelianize(rel.word, p.d) for rel in p.relators], p.d)


def verify_orders(
    p: Presentation,
    table: CosetTable | None = None,
    witness: WitnessQuotient | None = None,
) -> list[OrderVerdict]:
    """Check ``order(u_i) == m_i`` for every relator.

    Every available route runs and is recorded; the first conclusive one in
    the order coset table, witness, abelianization decides.  Only the coset
    table can refute: the other two see a quotient, where the order of
    ``u_i`` divides its true order.
    """
    if witness is not None:
        witness.check(p)
    lattice = relation_lattice(p) if p.relators else None
    verdicts = []
    for i, rel in enumerate(p.relators):
        routes = []
        if table is not None:
            k = element_order(table, rel.base)
            routes.append(RouteResult(Method.COSET_TABLE, Status.VERIFIED if k == rel.exponent else Status.REFUTED, k))
        if witness is not None:
            k = witness.word_order(rel.base)
            routes.append(RouteResult(Method.WITNESS, Status.VERIFIED if k == rel.exponent else Status.INCONCLUSIVE, k))
        k = order_in_quotient(lattice, abelianize(rel.base, p.d))
        routes.append(
            RouteResult(Method.ABELIANIZATION, Status.VERIFIED if k == rel.exponent else Status.INCONCLUSIVE, k)
        )
        decided = next((r for r in routes if r.status is not Status.INCONCLUSIVE), None)
        if decided is None:
            verdicts.append(OrderVerdict(i, rel.exponent, Status.INCONCLUSIVE, None, None, tuple(routes)))
        else:
            verdicts.append(OrderVerdict(i, rel.exponent, decided.status, decided.method, decided.actual, tuple(routes)))
    return verdicts


# ---------------------------------------------------------------------------
# theorem application


@dataclass(frozen=True)
class Conclusion:
    kind: Kind
    value: Fraction | int | str | None = None


@dataclass(frozen=True)
class Certificate:
    presentation: Presentation
    sum_inv_m: Fraction
    chi_orb: Fraction
    order_verdicts: tuple[OrderVerdict, ...]
    group_size: int | None
    conclusions: tuple[Conclusion, ...]
    abelian_invariants: tuple[int, ...] = ()
    euler: "EulerReport | None" = field(default=None)

    @property
    def d(self) -> int:
        return self.presentation.d

    @property
    def r(self) -> int:
        return self.presentation.r

    @property
    def kinds(self) -> set[Kind]:
        return {c.kind for c in self.conclusions}

    def value_of(self, kind: Kind):
        return next((c.value for c in self.conclusions if c.kind is kind), None)

    @property
    def infinite_abelianization(self) -> bool:
        """Independent cross-check: a free abelian part in the abelianization forces infinite order.

        Not one of the theorem conclusions; reported alongside them.
        """
        return any(x == 0 for x in self.abelian_invariants)


def abelian_invariants(p: Presentation) -> tuple[int, ...]:
    """Invariant factors of the abelianization (1s dropped, 0 for each free Z summand)."""
    if not p.relators:
        return (0,) * p.d
    diag = smith_normal_form(relation_lattice(p))
    diag = diag + [0] * (p.d - len(diag))
    return tuple(x for x in diag if x != 1)


def apply_theorems(
    p: Presentation,
    verdicts: Sequence[OrderVerdict],
    size: int | None,
) -> Certificate:
    """Turn verified orders (and a group size when known) into certificates.

    ``size`` is ``None`` when the order of the group is unknown.  Nothing
    beyond the raw numbers is concluded unless every relator's order is
    verified.  At ``chi == 0`` only infiniteness is claimed.
    """
    chi = chi_orb(p)
    out: list[Conclusion] = []
    if any(v.status is not Status.VERIFIED for v in verdicts):
        out.append(Conclusion(Kind.HYPOTHESIS_UNVERIFIED))
    else:
        if size is not None:
            if chi > 0 and size >= 1 / chi:
                out.append(Conclusion(Kind.FINITE_BOUND_OK, math.ceil(1 / chi)))
            else:
                out.append(Conclusion(Kind.VIOLATION, f"finite group of order {size} but chi_orb = {chi}"))
        if chi <= 0:
            out.append(Conclusion(Kind.INFINITE))
            if chi < 0:
                out.append(Conclusion(Kind.NOT_KAZHDAN_T))
                out.append(Conclusion(Kind.NO_INFINITE_AMENABLE_NORMAL))
        if size is not None:
            # b1_l2 of a finite group is 0, so the lower bound 1/|G| - chi must be <= 0
            slack = Fraction(1, size) - chi
            if slack > 0:
                out.append(Conclusion(Kind.VIOLATION, f"1/|G| - chi_orb = {slack} > 0 for a finite group"))
        elif chi < 0:
            out.append(Conclusion(Kind.BETTI1_LOWER_BOUND, l2_betti1_lower_bound(p, None)))
    return Certificate(
        presentation=p,
        sum_inv_m=sum_inverse_exponents(p),
        chi_orb=chi,
        order_verdicts=tuple(verdicts),
        group_size=size,
        conclusions=tuple(out),
        abelian_invariants=abelian_invariants(p),
    )

