"""Segre products of Yang-Baxter algebras, the Segre map and its kernel.

Generators of the Segre product are ``w_{ia} = x_i o y_a`` with the pair
``(i, a)`` flattened to ``i * n + a``; this is the lexicographic order on
pairs and the same flattening used by :func:`solution.cartesian_product`.
The algebra ``A_Z`` of the product solution uses the identical indexing, so
the Segre map ``z_{ia} -> w_{ia}`` is the identity on indices.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence

from .errors import IdentityViolation, PreconditionError
from .groebner import (
    TruncatedGB,
    binomial_skew_conditions,
    count_avoiding_words,
    is_groebner_quadratic,
    pbw_check,
    truncated_groebner,
)
from .ncpoly import NcPolynomial, QuadraticPresentation, Word, deglex_key, yb_presentation
from .oracle import exact_rank, quotient_dim_oracle
from .solution import QuadraticSet, orbit_report, require_solution, z_solution


@dataclass(frozen=True)
class SegreGenerators:
    m: int
    n: int
    prefix: str = "w"

    def index(self, i: int, a: int) -> int:
        return i * self.n + a

    def pair(self, k: int) -> tuple[int, int]:
        return divmod(k, self.n)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(f"{self.prefix}{i + 1}{a + 1}" for i in range(self.m) for a in range(self.n))


@dataclass(frozen=True)
class SegreRelation:
    """A relation tagged with its family and source indices (0-based).

    ``indices`` is ``(j, i, b, a)`` for family ``a1`` and ``(i, j, b, a)`` for
    ``a2``, ``b`` and the kernel family ``s``; ``x_image`` and ``y_image``
    are the ``r1`` and ``r2`` images used.
    """

    family: str
    indices: tuple[int, int, int, int]
    x_image: tuple[int, int]
    y_image: tuple[int, int]
    poly: NcPolynomial

    def name(self) -> str:
        head = {"a1": "f", "a2": "f", "b": "g", "s": "gamma"}[self.family]
        p, q, b, a = (k + 1 for k in self.indices)
        return f"{head}_{p}{q},{b}{a}"

    def to_json(self, labels: Sequence[str]) -> dict:
        return {
            "family": self.family,
            "name": self.name(),
            "indices": list(self.indices),
            "x_image": list(self.x_image),
            "y_image": list(self.y_image),
            "relation": self.poly.to_json(),
            "text": self.poly.format(labels),
        }


@dataclass(frozen=True)
class SegrePresentation:
    generators: SegreGenerators
    re_a1: tuple[SegreRelation, ...]
    re_a2: tuple[SegreRelation, ...]
    re_b: tuple[SegreRelation, ...]

    @property
    def relations(self) -> tuple[SegreRelation, ...]:
        return self.re_a1 + self.re_a2 + self.re_b

    def presentation(self) -> QuadraticPresentation:
        return QuadraticPresentation.build(self.generators.labels, [r.poly for r in self.relations])

    def counts(self) -> dict[str, int]:
        return {
            "a1": len(self.re_a1),
            "a2": len(self.re_a2),
            "b": len(self.re_b),
            "total": len(self.relations),
        }

    def to_json(self) -> dict:
        labels = self.generators.labels
        return {
            "generators": list(labels),
            "relations": {
                fam: [r.to_json(labels) for r in rels]
                for fam, rels in (("a1", self.re_a1), ("a2", self.re_a2), ("b", self.re_b))
            },
            "counts": self.counts(),
        }


def _descends(u: tuple[int, int], v: tuple[int, int]) -> bool:
    return deglex_key(u) > deglex_key(v)


def _w(gens: SegreGenerators, left: tuple[int, int], right: tuple[int, int]) -> Word:
    return (gens.index(*left), gens.index(*right))


def _y_descents(b: QuadraticSet):
    """Pairs ``(b_, a_)`` with ``y_b y_a > r2(y_b y_a)``, with their images."""
    for s, t in itertools.product(range(b.size), repeat=2):
        img = b(s, t)
        if _descends((s, t), img):
            yield s, t, img


def _families(a: QuadraticSet, b: QuadraticSet, prefix: str):
    m, n = a.size, b.size
    gens = SegreGenerators(m, n, prefix)
    N = m * n
    a1, a2, rb = [], [], []
    # a1: x_j x_i > r1(x_j x_i) = x_i' x_j', every y_b y_a
    for j, i in itertools.product(range(m), repeat=2):
        ip, jp = a(j, i)
        if not _descends((j, i), (ip, jp)):
            continue
        for s, t in itertools.product(range(n), repeat=2):
            ap, bp = b(s, t)
            lead = _w(gens, (j, s), (i, t))
            tail = _w(gens, (ip, ap), (jp, bp))
            a1.append(SegreRelation("a1", (j, i, s, t), (ip, jp), (ap, bp), NcPolynomial.binomial(N, lead, tail)))
    fixed = orbit_report(a).fixed_points
    for i, j in itertools.product(range(m), repeat=2):
        img = a(i, j)
        if (i, j) in fixed:
            target = a2
            family = "a2"
        elif _descends(img, (i, j)):
            target = rb
            family = "b"
        else:
            continue
        for s, t, (ap, bp) in _y_descents(b):
            lead = _w(gens, (i, s), (j, t))
            tail = _w(gens, (i, ap), (j, bp))
            target.append(SegreRelation(family, (i, j, s, t), img, (ap, bp), NcPolynomial.binomial(N, lead, tail)))
    return gens, a1, a2, rb


def _dedup(rels: list[SegreRelation]) -> tuple[SegreRelation, ...]:
    seen = set()
    out = []
    for r in rels:
        if r.poly not in seen:
            seen.add(r.poly)
            out.append(r)
    out.sort(key=lambda r: deglex_key(r.poly.leading_monomial()), reverse=True)
    return tuple(out)


def segre_presentation(a: QuadraticSet, b: QuadraticSet) -> SegrePresentation:
    """Quadratic presentation of the Segre product of the two Yang-Baxter algebras."""
    require_solution(a, "first factor")
    require_solution(b, "second factor")
    gens, a1, a2, rb = _families(a, b, "w")
    sp = SegrePresentation(gens, _dedup(a1), _dedup(a2), _dedup(rb))
    leads = [r.poly.leading_monomial() for r in sp.relations]
    if len(set(leads)) != len(leads):
        raise IdentityViolation("Segre relations have repeated leading words")
    return sp


def z_presentation(a: QuadraticSet, b: QuadraticSet) -> QuadraticPresentation:
    """Presentation of ``A_Z`` built from the factor tables (families a1 and a2 over ``z``)."""
    require_solution(a, "first factor")
    require_solution(b, "second factor")
    gens, a1, a2, _ = _families(a, b, "z")
    rels = sorted((r.poly for r in _dedup(a1) + _dedup(a2)),
                  key=lambda f: deglex_key(f.leading_monomial()), reverse=True)
    return QuadraticPresentation.build(gens.labels, rels)


def z_relations(a: QuadraticSet, b: QuadraticSet) -> tuple[SegreRelation, ...]:
    """The tagged relations of ``A_Z`` (same tags as the a1/a2 families)."""
    require_solution(a, "first factor")
    require_solution(b, "second factor")
    _, a1, a2, _ = _families(a, b, "z")
    return _dedup(a1) + _dedup(a2)


def kernel_generators(a: QuadraticSet, b: QuadraticSet) -> tuple[SegreRelation, ...]:
    """Binomials ``z_ib z_ja - z_ia' z_jb'`` generating the kernel of the Segre map."""
    require_solution(a, "first factor")
    require_solution(b, "second factor")
    gens, _, _, rb = _families(a, b, "z")
    return tuple(
        SegreRelation("s", r.indices, r.x_image, r.y_image, r.poly) for r in _dedup(rb)
    )


# -- sigma23 -----------------------------------------------------------------


def sigma23_transport(f: NcPolynomial, u: Word, n: int) -> NcPolynomial:
    """Image of ``f (x) u`` under the middle swap: ``x_p x_q (x) y_c y_d -> w_pc w_qd``.

    ``f`` is a quadratic polynomial over X, ``u`` a length-2 word over Y and
    ``n = |Y|``.
    """
    u = tuple(u)
    if len(u) != 2 or not all(0 <= k < n for k in u):
        raise ValueError("u must be a length-2 word over Y")
    if f and f.degrees() != {2}:
        raise ValueError("f must be homogeneous quadratic")
    N = f.nvars * n
    return NcPolynomial(N, [((p * n + u[0], q * n + u[1]), c) for (p, q), c in f.terms.items()])


def sigma23_transport_right(v: Word, g: NcPolynomial, m: int) -> NcPolynomial:
    """Image of ``v (x) g`` for a length-2 word ``v`` over X and quadratic ``g`` over Y."""
    v = tuple(v)
    n = g.nvars
    if len(v) != 2 or not all(0 <= k < m for k in v):
        raise ValueError("v must be a length-2 word over X")
    if g and g.degrees() != {2}:
        raise ValueError("g must be homogeneous quadratic")
    return NcPolynomial(m * n, [((v[0] * n + c, v[1] * n + d), e) for (c, d), e in g.terms.items()])


def transport_decomposition(rel: SegreRelation, a: QuadraticSet, b: QuadraticSet) -> NcPolynomial:
    """Rebuild an a1 relation as ``phi + psi`` from the factor relations.

    ``phi`` transports ``x_j x_i - x_i' x_j'`` along ``y_b y_a``; ``psi``
    transports ``x_i' x_j'`` along ``y_b y_a - y_a' y_b'``.
    """
    if rel.family != "a1":
        raise ValueError("only a1 relations decompose this way")
    m, n = a.size, b.size
    j, i, s, t = rel.indices
    ip, jp = rel.x_image
    ap, bp = rel.y_image
    fx = NcPolynomial(m, [((j, i), 1), ((ip, jp), -1)])
    gy = NcPolynomial(n, [((s, t), 1), ((ap, bp), -1)])
    phi = sigma23_transport(fx, (s, t), n)
    psi = sigma23_transport_right((ip, jp), gy, m)
    return phi + psi


# -- tensor side -------------------------------------------------------------


@dataclass(frozen=True)
class TensorElement:
    """Element of ``A (x) B`` with matched degrees, keyed by pairs of normal words."""

    terms: dict

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, TensorElement):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))


def tensor_normal_form(
    p: NcPolynomial, m: int, n: int, gbA: TruncatedGB, gbB: TruncatedGB
) -> TensorElement:
    """Canonical image of a polynomial over ``W`` in ``A (x) B``.

    ``w_ia`` goes to ``(x_i, y_a)``; products multiply componentwise; each
    component is then put in normal form.
    """
    if p.nvars != m * n or gbA.ambient != m or gbB.ambient != n:
        raise ValueError("alphabet sizes do not match")
    nf_x: dict[Word, dict] = {}
    nf_y: dict[Word, dict] = {}
    out: dict = {}
    for word, c in p.terms.items():
        xs = tuple(k // n for k in word)
        ys = tuple(k % n for k in word)
        if xs not in nf_x:
            nf_x[xs] = gbA.normal_form(NcPolynomial._raw(m, {xs: Fraction(1)})).terms
        if ys not in nf_y:
            nf_y[ys] = gbB.normal_form(NcPolynomial._raw(n, {ys: Fraction(1)})).terms
        for u, e in nf_x[xs].items():
            for v, f in nf_y[ys].items():
                key = (u, v)
                s = out.get(key, 0) + c * e * f
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
    return TensorElement(out)


def segre_map(f: NcPolynomial) -> NcPolynomial:
    """``z_{ia} -> w_{ia}``; indices coincide, so this is a relabelling."""
    return NcPolynomial._raw(f.nvars, dict(f.terms))


# -- reports -----------------------------------------------------------------


def _factor_gbs(a: QuadraticSet, b: QuadraticSet, D: int) -> tuple[TruncatedGB, TruncatedGB]:
    return truncated_groebner(yb_presentation(a), D), truncated_groebner(yb_presentation(b), D)


@dataclass
class VanishingReport:
    segre_residuals: list[tuple[str, bool]]
    z_residuals: list[tuple[str, bool]]
    kernel_image_zero: list[tuple[str, bool]]
    kernel_nonzero_in_az: list[tuple[str, bool]]

    @property
    def ok(self) -> bool:
        return all(v for part in (self.segre_residuals, self.z_residuals, self.kernel_image_zero,
                                  self.kernel_nonzero_in_az) for _, v in part)

    def as_dict(self) -> dict:
        return {
            "segre_relations_vanish": all(v for _, v in self.segre_residuals),
            "z_relations_map_to_zero": all(v for _, v in self.z_residuals),
            "kernel_maps_to_zero": all(v for _, v in self.kernel_image_zero),
            "kernel_nonzero_in_AZ": all(v for _, v in self.kernel_nonzero_in_az),
            "checked": {
                "segre": len(self.segre_residuals),
                "z": len(self.z_residuals),
                "kernel": len(self.kernel_image_zero),
            },
            "ok": self.ok,
        }


def vanishing_report(a: QuadraticSet, b: QuadraticSet) -> VanishingReport:
    """Push every Segre relation, every ``A_Z`` relation and every kernel generator into ``A (x) B``."""
    m, n = a.size, b.size
    gbA, gbB = _factor_gbs(a, b, 2)
    sp = segre_presentation(a, b)
    zrels = z_relations(a, b)
    kern = kernel_generators(a, b)
    gbZ = truncated_groebner(z_presentation(a, b), 2)
    tnf = lambda f: tensor_normal_form(f, m, n, gbA, gbB)
    return VanishingReport(
        segre_residuals=[(r.name(), tnf(r.poly) == 0) for r in sp.relations],
        z_residuals=[("phi" + r.name()[1:], tnf(segre_map(r.poly)) == 0) for r in zrels],
        kernel_image_zero=[(g.name(), tnf(segre_map(g.poly)) == 0) for g in kern],
        kernel_nonzero_in_az=[(g.name(), bool(gbZ.normal_form(g.poly))) for g in kern],
    )


@dataclass
class SegreMapReport:
    z_presentation: QuadraticPresentation
    kernel: tuple[SegreRelation, ...]
    vanishing: VanishingReport
    dims: "DimIdentityReport"

    def to_json(self) -> dict:
        labels = self.z_presentation.generator_labels
        return {
            "z_presentation": self.z_presentation.to_json(),
            "kernel_generators": [g.to_json(labels) for g in self.kernel],
            "vanishing": self.vanishing.as_dict(),
            "dim_identities": self.dims.as_dict(),
        }


@dataclass
class DimIdentityReport:
    m: int
    n: int
    relation_count: int
    segre_dim2: int
    free_dim2: int
    az_dim2: int
    kernel_count: int
    relation_rank: int
    kernel_rank: int

    def identities(self) -> dict[str, tuple[int, int]]:
        """Each identity as ``(computed, expected)``."""
        m, n = self.m, self.n
        return {
            "relations_plus_segre_dim2": (self.relation_count + self.segre_dim2, (m * n) ** 2),
            "az_dim2_minus_segre_dim2": (self.az_dim2 - self.segre_dim2, comb(m, 2) * comb(n, 2)),
            "relation_rank": (self.relation_rank, self.relation_count),
            "kernel_rank": (self.kernel_rank, comb(m, 2) * comb(n, 2)),
            "kernel_count": (self.kernel_count, comb(m, 2) * comb(n, 2)),
            "relation_count": (self.relation_count, comb(m * n, 2) + comb(m, 2) * comb(n, 2)),
        }

    @property
    def ok(self) -> bool:
        return all(c == e for c, e in self.identities().values())

    def check(self) -> "DimIdentityReport":
        bad = {k: v for k, v in self.identities().items() if v[0] != v[1]}
        if bad:
            raise IdentityViolation(f"dimension identities fail: {bad}")
        return self

    def as_dict(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "relation_count": self.relation_count,
            "segre_dim2": self.segre_dim2,
            "free_dim2": self.free_dim2,
            "az_dim2": self.az_dim2,
            "kernel_count": self.kernel_count,
            "relation_rank": self.relation_rank,
            "kernel_rank": self.kernel_rank,
            "identities": {k: list(v) for k, v in self.identities().items()},
            "ok": self.ok,
        }


def dim_identity_report(a: QuadraticSet, b: QuadraticSet) -> DimIdentityReport:
    """Evaluate the degree-2 dimension identities with computed, not closed-form, dimensions."""
    m, n = a.size, b.size
    gbA, gbB = _factor_gbs(a, b, 2)
    sp = segre_presentation(a, b)
    rels = [r.poly for r in sp.relations]
    gbZ = truncated_groebner(z_presentation(a, b), 2)
    kern = kernel_generators(a, b)
    kernel_images = [gbZ.normal_form(g.poly).terms for g in kern]
    return DimIdentityReport(
        m=m,
        n=n,
        relation_count=len(rels),
        segre_dim2=gbA.hilbert_function(2)[2] * gbB.hilbert_function(2)[2],
        free_dim2=(m * n) ** 2,
        az_dim2=gbZ.hilbert_function(2)[2],
        kernel_count=len(kern),
        relation_rank=exact_rank(f.terms for f in rels),
        kernel_rank=exact_rank(kernel_images),
    )


def segre_map_report(a: QuadraticSet, b: QuadraticSet) -> SegreMapReport:
    return SegreMapReport(
        z_presentation=z_presentation(a, b),
        kernel=kernel_generators(a, b),
        vanishing=vanishing_report(a, b),
        dims=dim_identity_report(a, b),
    )


@dataclass
class SegreHilbertReport:
    m: int
    n: int
    degree: int
    gb_dims: list[int]
    oracle_dims: list[int]
    expected: list[int]

    @property
    def ok(self) -> bool:
        return self.gb_dims == self.expected and self.oracle_dims == self.expected

    def as_dict(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "degree": self.degree,
            "gb_dims": self.gb_dims,
            "oracle_dims": self.oracle_dims,
            "expected": self.expected,
            "ok": self.ok,
        }


def segre_hilbert_check(a: QuadraticSet, b: QuadraticSet, D: int = 3) -> SegreHilbertReport:
    """Compare graded dimensions of the W-presentation with ``h_A(d) h_B(d)``."""
    m, n = a.size, b.size
    p = segre_presentation(a, b).presentation()
    gb = truncated_groebner(p, max(D, 2))
    gb_dims = gb.hilbert_function(D)
    oracle_dims = [quotient_dim_oracle(p, d) for d in range(D + 1)]
    expected = [comb(m + d - 1, d) * comb(n + d - 1, d) for d in range(D + 1)]
    return SegreHilbertReport(m, n, D, gb_dims, oracle_dims, expected)


@dataclass
class SquareFreeCertificate:
    m: int
    n: int
    is_groebner: bool
    normal_count_3: int
    expected_normal_3: int
    normal_words_2_ok: bool
    z_conditions: dict[str, bool]
    witness: str | None = None

    @property
    def ok(self) -> bool:
        return (
            self.is_groebner
            and self.normal_count_3 == self.expected_normal_3
            and self.normal_words_2_ok
            and all(self.z_conditions.values())
        )

    def as_dict(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "is_groebner": self.is_groebner,
            "normal_count_3": self.normal_count_3,
            "expected_normal_3": self.expected_normal_3,
            "normal_words_2_ok": self.normal_words_2_ok,
            "z_conditions": dict(self.z_conditions),
            "witness": self.witness,
            "ok": self.ok,
        }


def square_free_certificate(a: QuadraticSet, b: QuadraticSet) -> SquareFreeCertificate:
    """PBW certificate for the Segre product of two square-free solutions.

    Raises :class:`PreconditionError` unless both factors are square-free and
    their enumerations are PBW enumerations.
    """
    for qs, what in ((a, "first factor"), (b, "second factor")):
        rep = pbw_check(qs)
        if not rep.is_square_free:
            raise PreconditionError(f"{what} is not square-free")
        if not rep.gb_certified:
            raise PreconditionError(f"{what} is square-free but its enumeration is not a PBW enumeration")
    m, n = a.size, b.size
    gens = SegreGenerators(m, n)
    p = segre_presentation(a, b).presentation()
    cert = is_groebner_quadratic(p, with_oracle=False)
    leads = p.leading_words()
    normal2 = {w for w in itertools.product(range(m * n), repeat=2) if w not in set(leads)}
    expected2 = {
        (gens.index(i, s), gens.index(j, t))
        for i in range(m) for j in range(i, m) for s in range(n) for t in range(s, n)
    }
    return SquareFreeCertificate(
        m=m,
        n=n,
        is_groebner=cert.is_groebner,
        normal_count_3=count_avoiding_words(m * n, leads, 3),
        expected_normal_3=comb(m + 2, 3) * comb(n + 2, 3),
        normal_words_2_ok=normal2 == expected2,
        z_conditions=binomial_skew_conditions(z_presentation(a, b)),
        witness=None if cert.witness_word is None else "".join(gens.labels[k] for k in cert.witness_word),
    )


def relation_count_excess(a: QuadraticSet, b: QuadraticSet) -> dict:
    """More than ``C(mn, 2)`` relations on ``mn`` generators once both orders are at least 2."""
    m, n = a.size, b.size
    total = len(segre_presentation(a, b).relations)
    return {
        "generators": m * n,
        "relations": total,
        "quadratic_bound": comb(m * n, 2),
        "exceeds": total > comb(m * n, 2),
    }
