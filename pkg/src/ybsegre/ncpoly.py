"""Words, noncommutative polynomials over Q, and quadratic presentations.

Words are plain tuples of generator indices.  Generator ``k`` is smaller
than generator ``k + 1`` and words are compared degree-lexicographically,
which for tuples is simply the key ``(len(w), w)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import PreconditionError
from .solution import QuadraticSet, classify, orbit_report

Word = tuple[int, ...]


def deglex_key(w: Word) -> tuple[int, Word]:
    return (len(w), w)


def compare_deglex(u: Word, v: Word, nvars: int | None = None) -> int:
    """Return -1, 0 or 1 as ``u`` is smaller than, equal to, or larger than ``v``."""
    if nvars is not None:
        for w in (u, v):
            if any(not 0 <= k < nvars for k in w):
                raise ValueError(f"word {w} is not over {nvars} generators")
    ku, kv = deglex_key(u), deglex_key(v)
    return (ku > kv) - (ku < kv)


def format_word(w: Word, labels: Sequence[str]) -> str:
    return "".join(labels[k] for k in w) if w else "1"


class NcPolynomial:
    """Finite Q-linear combination of words over ``nvars`` generators.

    Zero coefficients are never stored.  Instances are treated as immutable.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Word, object] | Iterable[tuple[Word, object]] = ()):
        self.nvars = nvars
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Word, Fraction] = {}
        for w, c in items:
            w = tuple(w)
            if any(not 0 <= k < nvars for k in w):
                raise ValueError(f"word {w} is not over {nvars} generators")
            acc[w] = acc.get(w, 0) + Fraction(c)
        self.terms = {w: c for w, c in acc.items() if c}

    @classmethod
    def _raw(cls, nvars: int, terms: dict[Word, Fraction]) -> "NcPolynomial":
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj.terms = terms
        return obj

    @classmethod
    def monomial(cls, nvars: int, word: Word, coeff=1) -> "NcPolynomial":
        return cls(nvars, {tuple(word): coeff})

    @classmethod
    def binomial(cls, nvars: int, lead: Word, tail: Word, coeff=1) -> "NcPolynomial":
        """``lead - coeff * tail`` with ``lead`` required to be the larger word."""
        if deglex_key(tuple(lead)) <= deglex_key(tuple(tail)):
            raise ValueError(f"binomial lead {lead} must exceed tail {tail}")
        return cls(nvars, [(lead, 1), (tail, -Fraction(coeff))])

    @classmethod
    def zero(cls, nvars: int) -> "NcPolynomial":
        return cls._raw(nvars, {})

    # -- basic queries --

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, NcPolynomial):
            return self.nvars == other.nvars and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self.terms.items())))

    def words(self) -> list[Word]:
        """Words in decreasing deg-lex order."""
        return sorted(self.terms, key=deglex_key, reverse=True)

    def leading_monomial(self) -> Word:
        if not self.terms:
            raise ValueError("the zero polynomial has no leading monomial")
        return max(self.terms, key=deglex_key)

    def leading_coefficient(self) -> Fraction:
        return self.terms[self.leading_monomial()]

    def degrees(self) -> set[int]:
        return {len(w) for w in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    @property
    def degree(self) -> int:
        return max(self.degrees(), default=-1)

    def monic(self) -> "NcPolynomial":
        c = self.leading_coefficient()
        return NcPolynomial._raw(self.nvars, {w: a / c for w, a in self.terms.items()})

    # -- arithmetic --

    def _check(self, other: "NcPolynomial"):
        if self.nvars != other.nvars:
            raise ValueError(f"alphabet mismatch: {self.nvars} vs {other.nvars} generators")

    def __add__(self, other: "NcPolynomial") -> "NcPolynomial":
        self._check(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w, 0) + c
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        return NcPolynomial._raw(self.nvars, out)

    def __neg__(self) -> "NcPolynomial":
        return NcPolynomial._raw(self.nvars, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "NcPolynomial") -> "NcPolynomial":
        return self + (-other)

    def __mul__(self, other) -> "NcPolynomial":
        if isinstance(other, NcPolynomial):
            self._check(other)
            out: dict[Word, Fraction] = {}
            for u, a in self.terms.items():
                for v, b in other.terms.items():
                    w = u + v
                    s = out.get(w, 0) + a * b
                    if s:
                        out[w] = s
                    else:
                        out.pop(w, None)
            return NcPolynomial._raw(self.nvars, out)
        c = Fraction(other)
        if not c:
            return NcPolynomial.zero(self.nvars)
        return NcPolynomial._raw(self.nvars, {w: a * c for w, a in self.terms.items()})

    def __rmul__(self, other) -> "NcPolynomial":
        return self * other

    def sandwich(self, left: Word, right: Word) -> "NcPolynomial":
        """``left * self * right`` for words ``left`` and ``right``."""
        left, right = tuple(left), tuple(right)
        return NcPolynomial._raw(self.nvars, {left + w + right: c for w, c in self.terms.items()})

    # -- display --

    def format(self, labels: Sequence[str] | None = None) -> str:
        if labels is None:
            labels = [f"x{k + 1}" for k in range(self.nvars)]
        if not self.terms:
            return "0"
        parts = []
        for k, w in enumerate(self.words()):
            c = self.terms[w]
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            body = format_word(w, labels)
            if mag != 1:
                body = f"{mag}*{body}" if w else str(mag)
            if k == 0:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(f"{sign} {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"NcPolynomial({self.format()})"

    def to_json(self) -> list:
        return [[str(self.terms[w]), list(w)] for w in self.words()]

    @classmethod
    def from_json(cls, nvars: int, data) -> "NcPolynomial":
        return cls(nvars, [(tuple(w), Fraction(c)) for c, w in data])


def multiply(f: NcPolynomial, g: NcPolynomial) -> NcPolynomial:
    return f * g


def leading_monomial(f: NcPolynomial) -> Word:
    return f.leading_monomial()


@dataclass(frozen=True)
class QuadraticPresentation:
    """Generators plus monic homogeneous quadratic relations."""

    generator_count: int
    generator_labels: tuple[str, ...]
    relations: tuple[NcPolynomial, ...]

    def __post_init__(self):
        if len(self.generator_labels) != self.generator_count:
            raise ValueError("one label per generator required")
        seen = set()
        for f in self.relations:
            if f.nvars != self.generator_count:
                raise ValueError("relation over the wrong alphabet")
            if not f or f.degrees() != {2}:
                raise ValueError(f"relation {f.format(self.generator_labels)} is not homogeneous quadratic")
            if f.leading_coefficient() != 1:
                raise ValueError(f"relation {f.format(self.generator_labels)} is not monic")
            if f in seen:
                raise ValueError(f"duplicate relation {f.format(self.generator_labels)}")
            seen.add(f)

    @classmethod
    def build(cls, labels: Sequence[str], relations: Iterable[NcPolynomial]) -> "QuadraticPresentation":
        return cls(len(labels), tuple(labels), tuple(relations))

    def leading_words(self) -> list[Word]:
        return [f.leading_monomial() for f in self.relations]

    def format_relations(self) -> list[str]:
        return [f.format(self.generator_labels) for f in self.relations]

    def to_json(self) -> dict:
        return {
            "generators": list(self.generator_labels),
            "relations": [f.to_json() for f in self.relations],
        }

    @classmethod
    def from_json(cls, data: dict) -> "QuadraticPresentation":
        labels = data["generators"]
        return cls.build(labels, [NcPolynomial.from_json(len(labels), r) for r in data["relations"]])


def yb_presentation(qs: QuadraticSet) -> QuadraticPresentation:
    """Yang-Baxter algebra presentation: one binomial per nontrivial r-orbit.

    Each relation is written ``u - r(u)`` with ``u`` the deg-lex larger word.
    Relations are listed by decreasing leading word.
    """
    flags = classify(qs)
    if not (flags.is_involutive and flags.is_nondegenerate):
        raise PreconditionError("the Yang-Baxter presentation needs an involutive nondegenerate quadratic set")
    rels = []
    for u, v in orbit_report(qs).nontrivial_orbits:
        if deglex_key(u) < deglex_key(v):
            u, v = v, u
        rels.append(NcPolynomial.binomial(qs.size, u, v))
    rels.sort(key=lambda f: deglex_key(f.leading_monomial()), reverse=True)
    return QuadraticPresentation.build(qs.labels, rels)
