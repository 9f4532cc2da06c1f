"""Words, relators and presentations of the form < x1, ..., xd | u1^m1, ..., ur^mr >.

A word is a tuple of nonzero ints: ``k`` stands for generator ``k`` (1-based)
and ``-k`` for its inverse.  Each relator keeps its base word and its
orbifold exponent apart, since the exponent is what the certificates use.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass
from typing import Iterable, Sequence

Word = tuple[int, ...]

__all__ = [
    "Word",
    "Relator",
    "Presentation",
    "PresentationError",
    "PresentationSyntaxError",
    "ProperPowerWarning",
    "free_reduce",
    "cyclically_reduce",
    "invert",
    "abelianize",
    "proper_power_root",
    "parse_presentation",
    "parse_word",
    "format_word",
]


class PresentationError(ValueError):
    """Raised for semantically invalid presentations (bad exponent, unknown name, ...)."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)


class PresentationSyntaxError(PresentationError):
    pass


class ProperPowerWarning(UserWarning):
    pass


def free_reduce(w: Iterable[int]) -> Word:
    out: list[int] = []
    for letter in w:
        if out and out[-1] == -letter:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def cyclically_reduce(w: Iterable[int]) -> Word:
    """Freely reduce ``w`` then strip mutually inverse letters from both ends.

    The result is conjugate to ``w`` in the free group.
    """
    r = free_reduce(w)
    i, j = 0, len(r) - 1
    while i < j and r[i] == -r[j]:
        i += 1
        j -= 1
    return r[i : j + 1]


def invert(w: Sequence[int]) -> Word:
    return tuple(-letter for letter in reversed(w))


def abelianize(w: Iterable[int], d: int) -> tuple[int, ...]:
    counts = [0] * d
    for letter in w:
        if letter > 0:
            counts[letter - 1] += 1
        else:
            counts[-letter - 1] -= 1
    return tuple(counts)


def proper_power_root(w: Word) -> tuple[Word, int]:
    """Return ``(v, k)`` with ``w == v * k`` and ``k`` maximal.

    For a cyclically reduced word this detects whether ``w`` is a proper
    power in the free group: the root of such a word is itself cyclically
    reduced, so the power is a literal repetition.
    """
    n = len(w)
    for period in range(1, n // 2 + 1):
        if n % period == 0 and w[:period] * (n // period) == w:
            return w[:period], n // period
    return w, 1


@dataclass(frozen=True)
class Relator:
    base: Word
    exponent: int = 1

    def __post_init__(self) -> None:
        if self.exponent < 1:
            raise PresentationError(f"exponent must be >= 1, got {self.exponent}")
        if not self.base:
            raise PresentationError("relator base word is empty")

    @property
    def word(self) -> Word:
        """The full relator ``base ** exponent``."""
        return self.base * self.exponent


@dataclass(frozen=True)
class Presentation:
    generator_names: tuple[str, ...]
    relators: tuple[Relator, ...] = ()

    def __post_init__(self) -> None:
        names = self.generator_names
        if not names:
            raise PresentationError("a presentation needs at least one generator")
        if len(set(names)) != len(names):
            raise PresentationError(f"duplicate generator names in {names}")
        d = len(names)
        for i, rel in enumerate(self.relators):
            if any(not 1 <= abs(letter) <= d for letter in rel.base):
                raise PresentationError(f"relator {i} uses a generator index outside 1..{d}")

    @property
    def d(self) -> int:
        return len(self.generator_names)

    @property
    def r(self) -> int:
        return len(self.relators)

    def format_word(self, w: Sequence[int]) -> str:
        return format_word(w, self.generator_names)

    def format_relator(self, rel: Relator) -> str:
        body = self.format_word(rel.base)
        single_letter = len(rel.base) == 1 and rel.base[0] > 0
        if single_letter:
            return body if rel.exponent == 1 else f"{body}^{rel.exponent}"
        if "*" not in body:
            # one run like x^2 or x^-1: the exponent would be read as orbifold exponent
            return f"({body})^{rel.exponent}"
        return body if rel.exponent == 1 else f"({body})^{rel.exponent}"

    def __str__(self) -> str:
        rels = ", ".join(self.format_relator(rel) for rel in self.relators)
        return f"< {', '.join(self.generator_names)} | {rels} >"


def format_word(w: Sequence[int], names: Sequence[str]) -> str:
    if not w:
        return "1"
    parts = []
    i = 0
    while i < len(w):
        letter = w[i]
        j = i
        while j < len(w) and w[j] == letter:
            j += 1
        power = (j - i) * (1 if letter > 0 else -1)
        name = names[abs(letter) - 1]
        parts.append(name if power == 1 else f"{name}^{power}")
        i = j
    return "*".join(parts)


# ---------------------------------------------------------------------------
# parsing

_TOKEN_RE = re.compile(
    r"(?P<ws>\s+)|(?P<ident>[A-Za-z][A-Za-z0-9_]*)|(?P<int>[+-]?\d+)|(?P<sym>[<>|,*^()])"
)


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    line: int
    column: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise PresentationSyntaxError(
                f"unexpected character {text[pos]!r}", line, pos - line_start + 1
            )
        kind = m.lastgroup
        if kind != "ws":
            tokens.append(_Token(kind, m.group(), line, pos - line_start + 1))
        for k, ch in enumerate(m.group()):
            if ch == "\n":
                line += 1
                line_start = pos + k + 1
        pos = m.end()
    tokens.append(_Token("eof", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text: str, names: Sequence[str] | None = None):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.index = {name: k + 1 for k, name in enumerate(names or ())}

    @property
    def tok(self) -> _Token:
        return self.tokens[self.pos]

    def error(self, message: str, tok: _Token | None = None) -> PresentationSyntaxError:
        tok = tok or self.tok
        return PresentationSyntaxError(message, tok.line, tok.column)

    def accept(self, text: str) -> _Token | None:
        if self.tok.kind == "sym" and self.tok.text == text:
            tok = self.tok
            self.pos += 1
            return tok
        return None

    def expect(self, text: str) -> _Token:
        tok = self.accept(text)
        if tok is None:
            found = self.tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")
        return tok

    def integer(self) -> tuple[int, _Token]:
        tok = self.tok
        if tok.kind != "int":
            raise self.error(f"expected an integer, found {tok.text or 'end of input'!r}")
        self.pos += 1
        return int(tok.text), tok

    def ident(self) -> _Token:
        tok = self.tok
        if tok.kind != "ident":
            raise self.error(f"expected a generator name, found {tok.text or 'end of input'!r}")
        self.pos += 1
        return tok

    def presentation(self) -> Presentation:
        self.expect("<")
        names = [self.ident()]
        while self.accept(","):
            names.append(self.ident())
        seen: dict[str, _Token] = {}
        for tok in names:
            if tok.text in seen:
                raise PresentationError(f"duplicate generator {tok.text!r}", tok.line, tok.column)
            seen[tok.text] = tok
        self.index = {tok.text: k + 1 for k, tok in enumerate(names)}
        self.expect("|")
        relators = []
        if not (self.tok.kind == "sym" and self.tok.text == ">"):
            relators.append(self.relator())
            while self.accept(","):
                relators.append(self.relator())
        self.expect(">")
        if self.tok.kind != "eof":
            raise self.error(f"unexpected trailing input {self.tok.text!r}")
        return Presentation(tuple(tok.text for tok in names), tuple(relators))

    def relator(self) -> Relator:
        start = self.tok
        terms = self.factor()
        if self.accept("^"):
            m, tok = self.integer()
            if m < 1:
                raise PresentationError(f"exponent must be >= 1, got {m}", tok.line, tok.column)
            base: list[int] = [letter for word in terms for letter in word[0]]
        elif len(terms) == 1 and terms[0][1] is not None and terms[0][1][0] > 0:
            # a lone `term^m` with positive m: the exponent is the orbifold exponent
            base = list(terms[0][0])
            m = terms[0][1][0]
        else:
            base = [letter for word in terms for letter in _apply_power(word)]
            m = 1
        reduced = cyclically_reduce(base)
        if not reduced:
            raise PresentationError("relator base word is empty after reduction", start.line, start.column)
        root, k = proper_power_root(reduced)
        if k > 1:
            warnings.warn(
                f"relator base at line {start.line}, column {start.column} is a proper power "
                f"(k={k}); the order hypothesis is checked as declared",
                ProperPowerWarning,
                stacklevel=4,
            )
        return Relator(reduced, m)

    def factor(self) -> list[tuple[Word, tuple[int, _Token] | None]]:
        """Parse ``term (* term)*`` keeping each term's trailing exponent separate."""
        terms = [self.term()]
        while self.accept("*"):
            terms.append(self.term())
        return terms

    def term(self) -> tuple[Word, tuple[int, _Token] | None]:
        if self.accept("("):
            inner = self.factor()
            self.expect(")")
            word: Word = tuple(letter for t in inner for letter in _apply_power(t))
        else:
            tok = self.ident()
            if tok.text not in self.index:
                raise PresentationError(f"unknown generator {tok.text!r}", tok.line, tok.column)
            word = (self.index[tok.text],)
        power = None
        if self.accept("^"):
            value, tok = self.integer()
            if value == 0:
                raise PresentationError("exponent must be >= 1, got 0", tok.line, tok.column)
            power = (value, tok)
        return word, power

    def word(self) -> Word:
        terms = self.factor()
        if self.tok.kind != "eof":
            raise self.error(f"unexpected trailing input {self.tok.text!r}")
        return free_reduce(letter for t in terms for letter in _apply_power(t))


def _apply_power(term: tuple[Word, tuple[int, _Token] | None]) -> Word:
    word, power = term
    if power is None:
        return word
    k = power[0]
    return word * k if k > 0 else invert(word) * (-k)


def parse_presentation(text: str) -> Presentation:
    """Parse ``< x, y | x^2, y^3, (x*y)^5 >``.

    A trailing ``^m`` on a whole relator is its orbifold exponent; write
    ``(x^2)^1`` to put a power into the base word itself.  Base words are
    stored cyclically reduced.
    """
    return _Parser(text).presentation()


def parse_word(text: str, p: Presentation) -> Word:
    """Parse a product like ``x*y^-1*(x*y)^3`` over the generators of ``p``; freely reduced."""
    if not text.strip():
        return ()
    return _Parser(text, p.generator_names).word()
