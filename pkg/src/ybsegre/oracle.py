"""Brute-force graded dimensions by exact linear algebra.

Nothing here uses leading words or rewriting; it is the independent check
against which the Groebner engine is compared.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import gcd
from typing import Hashable, Iterable, Mapping

from .errors import OracleSizeError

MAX_ORACLE_WORDS = 8000


def _integral(row: Mapping[Hashable, Fraction]) -> dict:
    den = 1
    for c in row.values():
        den = den * Fraction(c).denominator // gcd(den, Fraction(c).denominator)
    out = {k: int(Fraction(c) * den) for k, c in row.items() if c}
    return _primitive(out)


def _primitive(row: dict) -> dict:
    g = 0
    for c in row.values():
        g = gcd(g, c)
        if g == 1:
            return row
    if g > 1:
        return {k: c // g for k, c in row.items()}
    return row


def exact_rank(rows: Iterable[Mapping[Hashable, object]]) -> int:
    """Rank over Q of sparse rows, by fraction-free integer elimination.

    Each incoming row is reduced against the stored pivots with
    ``row <- p[c] * row - row[c] * p`` and divided by its content, so entries
    stay integral and small.
    """
    pivots: dict[Hashable, dict] = {}
    order: dict[Hashable, int] = {}

    def colkey(k):
        if k not in order:
            order[k] = len(order)
        return order[k]

    rank = 0
    for raw in rows:
        row = _integral(raw)
        while row:
            c = max(row, key=colkey)
            p = pivots.get(c)
            if p is None:
                pivots[c] = row
                rank += 1
                break
            a, b = p[c], row[c]
            new = {k: a * v for k, v in row.items()}
            for k, v in p.items():
                s = new.get(k, 0) - b * v
                if s:
                    new[k] = s
                else:
                    new.pop(k, None)
            row = _primitive(new)
    return rank


def quotient_dim_oracle(p, m: int, max_words: int = MAX_ORACLE_WORDS) -> int:
    """``dim (k<X>/(relations))_m`` as ``n^m - rank`` of all ``a*f*b`` of degree ``m``."""
    n = p.generator_count
    if n**m > max_words:
        raise OracleSizeError(f"{n}^{m} words exceeds the oracle bound {max_words}")
    rows = []
    for f in p.relations:
        degs = f.degrees()
        if len(degs) != 1:
            raise ValueError("oracle needs homogeneous relations")
        (d,) = degs
        if d > m:
            continue
        for left_len in range(m - d + 1):
            for a in itertools.product(range(n), repeat=left_len):
                for b in itertools.product(range(n), repeat=m - d - left_len):
                    rows.append({a + w + b: c for w, c in f.terms.items()})
    return n**m - exact_rank(rows)
