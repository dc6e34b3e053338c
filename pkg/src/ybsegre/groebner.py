"""Degree-truncated noncommutative Groebner bases for homogeneous ideals.

The basis is kept as a rewriting system ``LM(g) -> LM(g) - g``.  Ambiguities
are resolved degree by degree: at degree ``d`` the input relations of that
degree and every overlap ``a.LM(g1) = LM(g2).b`` of total length ``d`` are
reduced, and nonzero remainders are adjoined.  Because everything is
homogeneous and processed in increasing degree, a new element's leading word
never contains an older one, so only proper overlaps need attention.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

from .errors import PreconditionError, TruncationError
from .ncpoly import NcPolynomial, QuadraticPresentation, Word, deglex_key, yb_presentation
from .oracle import quotient_dim_oracle
from .solution import QuadraticSet, classify, require_solution

Terms = dict[Word, Fraction]


def _heap_key(w: Word):
    # min-heap key whose smallest element is the deg-lex largest word
    return (-len(w), tuple(-k for k in w))


class _Rewriter:
    """Leading-word rewriting rules with normal-form reduction."""

    def __init__(self):
        self.rules: dict[Word, Terms] = {}
        self.lengths: list[int] = []

    def add(self, lead: Word, tail: Terms):
        self.rules[lead] = tail
        if len(lead) not in self.lengths:
            self.lengths.append(len(lead))
            self.lengths.sort()

    def find(self, w: Word):
        rules = self.rules
        for L in self.lengths:
            if L > len(w):
                break
            for pos in range(len(w) - L + 1):
                sub = w[pos : pos + L]
                if sub in rules:
                    return pos, sub
        return None

    def is_normal(self, w: Word) -> bool:
        return self.find(w) is None

    def reduce(self, terms: Terms) -> Terms:
        pending = {w: c for w, c in terms.items() if c}
        heap = [_heap_key(w) + (w,) for w in pending]
        heapq.heapify(heap)
        out: Terms = {}
        while heap:
            w = heapq.heappop(heap)[-1]
            c = pending.pop(w, None)
            if c is None:
                continue
            hit = self.find(w)
            if hit is None:
                out[w] = c
                continue
            pos, lead = hit
            a, b = w[:pos], w[pos + len(lead) :]
            for t, e in self.rules[lead].items():
                v = a + t + b
                s = pending.get(v, 0) + c * e
                if s:
                    if v not in pending:
                        heapq.heappush(heap, _heap_key(v) + (v,))
                    pending[v] = s
                else:
                    pending.pop(v, None)
        return out


def _to_terms(f: NcPolynomial) -> Terms:
    return dict(f.terms)


def _split(f_terms: Terms) -> tuple[Word, Terms]:
    """Make monic and split into (lead, tail) with ``lead == tail`` modulo f."""
    lead = max(f_terms, key=deglex_key)
    c = f_terms[lead]
    tail = {w: -a / c for w, a in f_terms.items() if w != lead}
    return lead, tail


@dataclass(frozen=True)
class NormalMonomialSet:
    degree: int
    words: tuple[Word, ...]

    def __len__(self) -> int:
        return len(self.words)


@dataclass
class TruncatedGB:
    """Reduced Groebner basis elements of degree at most ``truncation_degree``."""

    ambient: int
    basis: tuple[NcPolynomial, ...]
    truncation_degree: int
    complete_through: int
    labels: tuple[str, ...] = ()
    _rewriter: _Rewriter = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if not self.labels:
            self.labels = tuple(f"x{k + 1}" for k in range(self.ambient))
        if self._rewriter is None:
            rw = _Rewriter()
            for g in self.basis:
                rw.add(*_split(_to_terms(g)))
            self._rewriter = rw

    def leading_words(self) -> list[Word]:
        return [g.leading_monomial() for g in self.basis]

    def new_elements(self, presentation: QuadraticPresentation) -> list[NcPolynomial]:
        given = set(presentation.relations)
        return [g for g in self.basis if g not in given]

    def normal_form(self, f: NcPolynomial) -> NcPolynomial:
        return normal_form(f, self)

    def normal_monomials(self, m: int) -> NormalMonomialSet:
        return normal_monomials(self, m)

    def hilbert_function(self, up_to: int) -> list[int]:
        return hilbert_function(self, up_to)

    def to_json(self) -> dict:
        return {
            "generators": list(self.labels),
            "relations": [g.to_json() for g in self.basis],
            "truncation_degree": self.truncation_degree,
            "complete_through": self.complete_through,
        }


def groebner_basis(
    nvars: int,
    polys: Iterable[NcPolynomial],
    D: int,
    labels: Sequence[str] = (),
) -> TruncatedGB:
    """Reduced Groebner basis of the ideal generated by ``polys``, truncated at degree ``D``.

    Input polynomials must be homogeneous of positive degree.
    """
    by_degree: dict[int, list[Terms]] = {}
    for f in polys:
        if f.nvars != nvars:
            raise ValueError("polynomial over the wrong alphabet")
        if not f:
            continue
        if not f.is_homogeneous():
            raise ValueError(f"inhomogeneous relation {f.format(labels or None)}")
        if f.degree < 1:
            raise ValueError("relations must have positive degree")
        by_degree.setdefault(f.degree, []).append(_to_terms(f))

    rw = _Rewriter()
    order: list[Word] = []  # leading words in adjunction order
    for d in range(1, D + 1):
        candidates: list[Terms] = list(by_degree.get(d, []))
        overlaps = []
        for l1, l2 in itertools.product(order, repeat=2):
            k = len(l1) + len(l2) - d
            if 1 <= k < min(len(l1), len(l2)) and l1[-k:] == l2[:k]:
                overlaps.append((l1 + l2[k:], l1, l2))
        overlaps.sort(key=lambda t: (deglex_key(t[0]), deglex_key(t[1]), deglex_key(t[2])))
        for w, l1, l2 in overlaps:
            a = w[: len(w) - len(l2)]
            c = w[len(l1) :]
            s: Terms = {}
            for t, e in rw.rules[l2].items():
                s[a + t] = s.get(a + t, 0) + e
            for t, e in rw.rules[l1].items():
                s[t + c] = s.get(t + c, 0) - e
            candidates.append({v: e for v, e in s.items() if e})
        added = []
        for cand in candidates:
            h = rw.reduce(cand)
            if h:
                lead, tail = _split(h)
                rw.add(lead, tail)
                order.append(lead)
                added.append(lead)
        # inter-reduce tails of this degree, smallest leading word first
        for lead in sorted(added, key=deglex_key):
            rw.rules[lead] = rw.reduce(rw.rules[lead])

    basis = []
    for lead in sorted(rw.rules, key=deglex_key, reverse=True):
        terms = {lead: Fraction(1)}
        for t, e in rw.rules[lead].items():
            terms[t] = -e
        basis.append(NcPolynomial._raw(nvars, terms))
    return TruncatedGB(nvars, tuple(basis), D, D, tuple(labels), rw)


def truncated_groebner(p: QuadraticPresentation, D: int) -> TruncatedGB:
    if D < 2:
        raise ValueError("degree bound must be at least 2")
    return groebner_basis(p.generator_count, p.relations, D, p.generator_labels)


def normal_form(f: NcPolynomial, gb: TruncatedGB) -> NcPolynomial:
    if f.nvars != gb.ambient:
        raise ValueError("polynomial over the wrong alphabet")
    if f.degree > gb.complete_through:
        raise TruncationError(
            f"degree {f.degree} exceeds certified truncation {gb.complete_through}"
        )
    return NcPolynomial._raw(f.nvars, gb._rewriter.reduce(f.terms))


def normal_monomials(gb: TruncatedGB, m: int) -> NormalMonomialSet:
    if m > gb.complete_through:
        raise TruncationError(f"degree {m} exceeds certified truncation {gb.complete_through}")
    return NormalMonomialSet(m, tuple(_normal_words(gb._rewriter, gb.ambient, m)))


def _normal_words(rw: _Rewriter, nvars: int, m: int) -> list[Word]:
    layer: list[Word] = [()]
    for k in range(1, m + 1):
        nxt = []
        for w in layer:
            for x in range(nvars):
                v = w + (x,)
                # only suffixes can contain a new leading word
                if not any(L <= k and v[k - L :] in rw.rules for L in rw.lengths):
                    nxt.append(v)
        layer = nxt
    return layer  # generated in lexicographic order already


def hilbert_function(gb: TruncatedGB, up_to: int) -> list[int]:
    if up_to > gb.complete_through:
        raise TruncationError(f"degree {up_to} exceeds certified truncation {gb.complete_through}")
    return [len(_normal_words(gb._rewriter, gb.ambient, m)) for m in range(up_to + 1)]


def count_avoiding_words(nvars: int, forbidden: Iterable[Word], m: int) -> int:
    """Number of length-``m`` words with no forbidden subword, by transfer matrix.

    States are the last ``L - 1`` letters where ``L`` is the longest forbidden
    word; this is independent of the rewriting machinery.
    """
    forbidden = {tuple(w) for w in forbidden}
    if () in forbidden:
        return 0
    L = max((len(w) for w in forbidden), default=1)
    k = max(L - 1, 0)

    def ok(w: Word) -> bool:
        return not any(w[i:j] in forbidden for i in range(len(w)) for j in range(i + 1, len(w) + 1))

    if m <= k:
        return sum(1 for w in itertools.product(range(nvars), repeat=m) if ok(w))
    states = [w for w in itertools.product(range(nvars), repeat=k) if ok(w)]
    index = {s: i for i, s in enumerate(states)}
    trans: list[list[int]] = [[] for _ in states]
    for s in states:
        for x in range(nvars):
            v = s + (x,)
            if not any(v[i:] in forbidden for i in range(len(v))):
                trans[index[s]].append(index[v[1:]] if k else 0)
    vec = [1] * len(states)
    for _ in range(m - k):
        nxt = [0] * len(states)
        for i, c in enumerate(vec):
            if c:
                for j in trans[i]:
                    nxt[j] += c
        vec = nxt
    return sum(vec)


# -- quadratic certification -------------------------------------------------


@dataclass(frozen=True)
class GroebnerCertificate:
    is_groebner: bool
    witness_word: Word | None
    witness_remainder: NcPolynomial | None
    normal_count_3: int
    oracle_dim_3: int | None

    def as_dict(self, labels: Sequence[str]) -> dict:
        return {
            "is_groebner": self.is_groebner,
            "witness_overlap": None if self.witness_word is None else list(self.witness_word),
            "witness_overlap_text": None
            if self.witness_word is None
            else "".join(labels[k] for k in self.witness_word),
            "witness_remainder": None
            if self.witness_remainder is None
            else self.witness_remainder.format(labels),
            "normal_count_3": self.normal_count_3,
            "oracle_dim_3": self.oracle_dim_3,
        }


def is_groebner_quadratic(p: QuadraticPresentation, with_oracle: bool = True) -> GroebnerCertificate:
    """Decide whether monic quadratic relations with distinct leading words form a Groebner basis.

    Distinct length-2 leading words cannot contain one another, so the only
    ambiguities are overlaps ``xyz`` of length 3 (Bergman's diamond lemma);
    resolving all of them certifies the Groebner property in every degree.
    """
    leads = p.leading_words()
    if len(set(leads)) != len(leads):
        raise PreconditionError("leading words of the relations are not distinct")
    rw = _Rewriter()
    for f in p.relations:
        rw.add(*_split(_to_terms(f)))
    witness = None
    for l1, l2 in sorted(itertools.product(leads, repeat=2), key=lambda t: (t[0] + t[1][1:], t)):
        if l1[1] != l2[0]:
            continue
        a, c = l1[:1], l2[1:]
        s: Terms = {}
        for t, e in rw.rules[l2].items():
            s[a + t] = s.get(a + t, 0) + e
        for t, e in rw.rules[l1].items():
            s[t + c] = s.get(t + c, 0) - e
        rem = rw.reduce({v: e for v, e in s.items() if e})
        if rem:
            witness = (l1 + c, NcPolynomial._raw(p.generator_count, rem))
            break
    n3 = count_avoiding_words(p.generator_count, leads, 3)
    oracle3 = quotient_dim_oracle(p, 3) if with_oracle else None
    return GroebnerCertificate(
        is_groebner=witness is None,
        witness_word=None if witness is None else witness[0],
        witness_remainder=None if witness is None else witness[1],
        normal_count_3=n3,
        oracle_dim_3=oracle3,
    )


def _is_ordered(w: Word) -> bool:
    return all(a <= b for a, b in zip(w, w[1:]))


def binomial_skew_conditions(p: QuadraticPresentation, D: int = 3) -> dict[str, bool]:
    """Check the defining conditions of a binomial skew polynomial ring.

    ``d`` is decided by the overlap test, ``d_prime`` independently by
    comparing normal words of the truncated basis with ordered monomials
    through degree ``D``.
    """
    n = p.generator_count
    rels = p.relations
    count_ok = len(rels) == comb(n, 2)
    binomial = all(len(f) == 2 for f in rels)
    cond_a = count_ok and binomial and all(
        f.leading_coefficient() == 1 and all(c != 0 for c in f.terms.values()) for f in rels
    )
    leads = p.leading_words()
    cond_b = binomial and sorted(leads) == sorted((j, i) for j in range(n) for i in range(j))
    if cond_b:
        for f in rels:
            (j, _i), (ip, jp) = f.words()
            cond_b = cond_b and j > ip and ip < jp
    seconds = {f.words()[1] for f in rels if len(f) == 2}
    cond_c = all((i, j) in seconds for i in range(n) for j in range(i + 1, n))
    cond_d = len(set(leads)) == len(leads) and is_groebner_quadratic(p, with_oracle=False).is_groebner
    gb = truncated_groebner(p, D)
    cond_dp = all(
        set(gb.normal_monomials(k).words) == {w for w in itertools.product(range(n), repeat=k) if _is_ordered(w)}
        for k in range(D + 1)
    )
    return {"a": cond_a, "b": cond_b, "c": cond_c, "d": cond_d, "d_prime": cond_dp}


@dataclass(frozen=True)
class PBWReport:
    is_square_free: bool
    gb_certified: bool
    certificate: GroebnerCertificate
    conditions: dict[str, bool]

    @property
    def counterexample_alert(self) -> bool:
        """A Groebner basis from a non-square-free solution would contradict the theory."""
        return self.gb_certified and not self.is_square_free

    @property
    def enumeration_not_pbw(self) -> bool:
        """Square-free, but the current enumeration is not a PBW enumeration."""
        return self.is_square_free and not self.gb_certified

    def as_dict(self, labels: Sequence[str]) -> dict:
        return {
            "is_square_free": self.is_square_free,
            "gb_certified": self.gb_certified,
            "certificate": self.certificate.as_dict(labels),
            "conditions": dict(self.conditions),
            "counterexample_alert": self.counterexample_alert,
            "enumeration_not_pbw": self.enumeration_not_pbw,
        }


def pbw_check(qs: QuadraticSet) -> PBWReport:
    flags = require_solution(qs)
    p = yb_presentation(qs)
    cert = is_groebner_quadratic(p)
    return PBWReport(flags.is_square_free, cert.is_groebner, cert, binomial_skew_conditions(p))


def yb_hilbert_expected(n: int, d: int) -> int:
    return comb(n + d - 1, d)
