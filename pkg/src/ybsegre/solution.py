"""Finite quadratic sets and set-theoretic solutions of the Yang-Baxter equation.

A quadratic set on ``{0, ..., n-1}`` is stored as its full r-table:
``r[i][j] = (p, q)`` means ``r(x_i, x_j) = (x_p, x_q)``.  Left and right
actions are derived from the table on demand.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import cached_property
from math import comb
from typing import Iterator, Sequence

from .errors import PreconditionError, SolutionFormatError

Pair = tuple[int, int]


@dataclass(frozen=True)
class QuadraticSet:
    size: int
    r: tuple[tuple[Pair, ...], ...]
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"x{k + 1}" for k in range(self.size)))
        if len(self.labels) != self.size:
            raise SolutionFormatError(f"expected {self.size} labels, got {len(self.labels)}")

    def __call__(self, i: int, j: int) -> Pair:
        return self.r[i][j]

    def pairs(self) -> Iterator[Pair]:
        return itertools.product(range(self.size), repeat=2)

    @cached_property
    def actions(self) -> "ActionTables":
        n = self.size
        left = [[0] * n for _ in range(n)]
        right = [[0] * n for _ in range(n)]
        for i, j in self.pairs():
            p, q = self.r[i][j]
            left[i][j] = p
            right[j][i] = q
        return ActionTables(tuple(map(tuple, left)), tuple(map(tuple, right)))

    def relabel(self, labels: Sequence[str]) -> "QuadraticSet":
        return QuadraticSet(self.size, self.r, tuple(labels))

    def permuted(self, perm: Sequence[int]) -> "QuadraticSet":
        """Return the isomorphic quadratic set where old index ``k`` becomes ``perm[k]``."""
        n = self.size
        table = [[(0, 0)] * n for _ in range(n)]
        for i, j in self.pairs():
            p, q = self.r[i][j]
            table[perm[i]][perm[j]] = (perm[p], perm[q])
        labels = [""] * n
        for k in range(n):
            labels[perm[k]] = self.labels[k]
        return QuadraticSet(n, _freeze(table), tuple(labels))


@dataclass(frozen=True)
class ActionTables:
    """``left[i][j]`` is the index of ``x_i`` acting on ``x_j`` from the left;
    ``right[j][i]`` is the index of ``x_i`` acted on by ``x_j`` from the right."""

    left: tuple[tuple[int, ...], ...]
    right: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class SolutionClassification:
    is_bijective: bool
    is_braided: bool
    is_involutive: bool
    is_nondegenerate: bool
    is_square_free: bool

    @property
    def is_solution(self) -> bool:
        return self.is_braided and self.is_involutive and self.is_nondegenerate

    def as_dict(self) -> dict:
        return {
            "is_bijective": self.is_bijective,
            "is_braided": self.is_braided,
            "is_involutive": self.is_involutive,
            "is_nondegenerate": self.is_nondegenerate,
            "is_square_free": self.is_square_free,
            "is_solution": self.is_solution,
        }


@dataclass(frozen=True)
class OrbitReport:
    fixed_points: tuple[Pair, ...]
    nontrivial_orbits: tuple[tuple[Pair, Pair], ...]

    @property
    def fixed_count(self) -> int:
        return len(self.fixed_points)

    @property
    def nontrivial_count(self) -> int:
        return len(self.nontrivial_orbits)

    @property
    def total(self) -> int:
        return self.fixed_count + self.nontrivial_count

    def as_dict(self) -> dict:
        return {
            "fixed_points": [list(p) for p in self.fixed_points],
            "nontrivial_orbits": [[list(u), list(v)] for u, v in self.nontrivial_orbits],
            "fixed_count": self.fixed_count,
            "nontrivial_count": self.nontrivial_count,
            "total_orbits": self.total,
        }


def _freeze(table) -> tuple[tuple[Pair, ...], ...]:
    return tuple(tuple((int(p), int(q)) for p, q in row) for row in table)


# -- documents ---------------------------------------------------------------


def load_solution(document) -> QuadraticSet:
    """Build a QuadraticSet from a JSON string, bytes, or an already parsed dict.

    Only the shape and index ranges are validated here; the axioms are left
    to :func:`classify`.
    """
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise SolutionFormatError(f"invalid JSON: {exc}") from exc
    if not isinstance(document, dict):
        raise SolutionFormatError("solution document must be a JSON object")
    try:
        size = document["size"]
        rows = document["r"]
    except KeyError as exc:
        raise SolutionFormatError(f"missing field {exc.args[0]!r}") from None
    if not isinstance(size, int) or isinstance(size, bool) or size < 1:
        raise SolutionFormatError("size must be a positive integer")
    if not isinstance(rows, list) or len(rows) != size:
        raise SolutionFormatError(f"r must have {size} rows")
    table = []
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != size:
            raise SolutionFormatError(f"row {i} of r must have {size} entries")
        out = []
        for j, entry in enumerate(row):
            if not isinstance(entry, (list, tuple)) or len(entry) != 2:
                raise SolutionFormatError(f"r[{i}][{j}] must be a pair")
            for k in entry:
                if not isinstance(k, int) or isinstance(k, bool):
                    raise SolutionFormatError(f"r[{i}][{j}] entries must be integers")
                if not 0 <= k < size:
                    raise SolutionFormatError(f"index out of range at r[{i}][{j}]: {k}")
            out.append((entry[0], entry[1]))
        table.append(out)
    labels = document.get("labels") or ()
    if labels and (len(labels) != size or not all(isinstance(s, str) for s in labels)):
        raise SolutionFormatError(f"labels must be a list of {size} strings")
    return QuadraticSet(size, _freeze(table), tuple(labels))


def solution_document(qs: QuadraticSet) -> dict:
    return {
        "size": qs.size,
        "labels": list(qs.labels),
        "r": [[list(qs.r[i][j]) for j in range(qs.size)] for i in range(qs.size)],
    }


def from_mapping(size: int, moves: dict[Pair, Pair], labels: Sequence[str] = ()) -> QuadraticSet:
    """Quadratic set that is the identity except on the given pairs.

    Convenient for writing solutions as lists of swapped monomials.
    """
    table = [[(i, j) for j in range(size)] for i in range(size)]
    for (i, j), target in moves.items():
        table[i][j] = target
    return QuadraticSet(size, _freeze(table), tuple(labels))


def flip(n: int) -> QuadraticSet:
    return QuadraticSet(n, _freeze([[(j, i) for j in range(n)] for i in range(n)]))


# -- axioms ------------------------------------------------------------------


def _is_perm(values) -> bool:
    return sorted(values) == list(range(len(values)))


def _braid_holds(qs: QuadraticSet) -> bool:
    r = qs.r
    for a, b, c in itertools.product(range(qs.size), repeat=3):
        # r12 r23 r12
        p, q = r[a][b]
        q, s = r[q][c]
        lhs0, lhs1 = r[p][q]
        lhs = (lhs0, lhs1, s)
        # r23 r12 r23
        q2, s2 = r[b][c]
        p2, q2 = r[a][q2]
        q2, s2 = r[q2][s2]
        if lhs != (p2, q2, s2):
            return False
    return True


def classify(qs: QuadraticSet) -> SolutionClassification:
    n = qs.size
    r = qs.r
    images = [r[i][j] for i, j in qs.pairs()]
    bijective = len(set(images)) == n * n
    involutive = all(r[p][q] == (i, j) for (i, j), (p, q) in zip(qs.pairs(), images))
    acts = qs.actions
    nondeg = all(_is_perm(acts.left[x]) for x in range(n)) and all(
        _is_perm(acts.right[y]) for y in range(n)
    )
    return SolutionClassification(
        is_bijective=bijective,
        is_braided=_braid_holds(qs),
        is_involutive=involutive,
        is_nondegenerate=nondeg,
        is_square_free=all(r[i][i] == (i, i) for i in range(n)),
    )


def require_solution(qs: QuadraticSet, what: str = "input") -> SolutionClassification:
    flags = classify(qs)
    if not flags.is_solution:
        failed = [k for k in ("is_braided", "is_involutive", "is_nondegenerate") if not getattr(flags, k)]
        raise PreconditionError(f"{what} is not a solution (fails {', '.join(failed)})")
    return flags


def orbit_report(qs: QuadraticSet) -> OrbitReport:
    fixed = []
    orbits = []
    for u in qs.pairs():
        v = qs(*u)
        if qs(*v) != u:
            raise PreconditionError(f"r is not involutive at {u}")
        if v == u:
            fixed.append(u)
        elif u < v:
            orbits.append((u, v))
    return OrbitReport(tuple(fixed), tuple(orbits))


def expected_orbit_counts(n: int) -> tuple[int, int, int]:
    """Fixed points, nontrivial orbits and total orbits of a solution of order n."""
    return n, comb(n, 2), comb(n + 1, 2)


# -- products ----------------------------------------------------------------


def cartesian_product(a: QuadraticSet, b: QuadraticSet) -> QuadraticSet:
    """Componentwise product solution on pairs (i, s) flattened to ``i * |b| + s``."""
    require_solution(a, "first factor")
    require_solution(b, "second factor")
    return _product_table(a, b, tuple(f"({x},{y})" for x in a.labels for y in b.labels))


def z_solution(a: QuadraticSet, b: QuadraticSet) -> QuadraticSet:
    """The product solution relabelled ``z{i}{a}`` (1-based)."""
    require_solution(a, "first factor")
    require_solution(b, "second factor")
    labels = tuple(f"z{i + 1}{s + 1}" for i in range(a.size) for s in range(b.size))
    return _product_table(a, b, labels)


def _product_table(a: QuadraticSet, b: QuadraticSet, labels) -> QuadraticSet:
    m, n = a.size, b.size
    N = m * n
    table = [[(0, 0)] * N for _ in range(N)]
    for j, i in itertools.product(range(m), repeat=2):
        p1, q1 = a.r[j][i]
        for s, t in itertools.product(range(n), repeat=2):
            p2, q2 = b.r[s][t]
            table[j * n + s][i * n + t] = (p1 * n + p2, q1 * n + q2)
    return QuadraticSet(N, _freeze(table), labels)


# -- enumeration -------------------------------------------------------------

MAX_ENUMERATION_SIZE = 4


def enumerate_solutions(n: int) -> list[QuadraticSet]:
    """All labelled solutions of order n (no isomorphism reduction).

    The search runs over tuples of left-action permutations.  For an
    involutive nondegenerate map the right action is forced,
    ``x^y = L_{L_x(y)}^{-1}(x)``, so r is involutive by construction; the
    braid relation is pruned early through its left-action form
    ``L_x L_{L_x^{-1}(y)} = L_y L_{L_y^{-1}(x)}``.  Every candidate that
    survives is re-checked with :func:`classify`.
    """
    if not isinstance(n, int) or not 1 <= n <= MAX_ENUMERATION_SIZE:
        raise ValueError(f"enumerate_solutions supports 1 <= n <= {MAX_ENUMERATION_SIZE}, got {n!r}")
    perms = list(itertools.permutations(range(n)))
    inverse = {p: tuple(sorted(range(n), key=p.__getitem__)) for p in perms}
    found = []
    chosen: list[tuple[int, ...]] = []

    def consistent(k: int) -> bool:
        # check every (x, y) whose four permutations are already assigned
        for x in range(k + 1):
            for y in range(k + 1):
                if x != k and y != k:
                    continue
                u = inverse[chosen[x]][y]
                v = inverse[chosen[y]][x]
                if u > k or v > k:
                    continue
                lx, ly, lu, lv = chosen[x], chosen[y], chosen[u], chosen[v]
                if any(lx[lu[z]] != ly[lv[z]] for z in range(n)):
                    return False
        return True

    def search(k: int):
        if k == n:
            qs = _from_left_actions(chosen)
            flags = classify(qs)
            if flags.is_solution:
                found.append(qs)
            return
        for p in perms:
            chosen.append(p)
            if consistent(k):
                search(k + 1)
            chosen.pop()

    search(0)
    return found


def _from_left_actions(left: Sequence[Sequence[int]]) -> QuadraticSet:
    n = len(left)
    inv = [[0] * n for _ in range(n)]
    for x in range(n):
        for y in range(n):
            inv[x][left[x][y]] = y
    table = [[(left[x][y], inv[left[x][y]][x]) for y in range(n)] for x in range(n)]
    return QuadraticSet(n, _freeze(table))
