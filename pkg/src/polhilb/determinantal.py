"""Maximal minors of the banded matrix M_nd, leading terms, graded ranks and flat families.

The initial-ideal claim ``in(minors) = B_nd`` is checked without a Groebner
engine: leading terms of the minors must be exactly the generators of
``B_nd``, and the graded pieces of the two ideals must have equal dimension
up to a degree bound.  The same graded-rank comparison is used as evidence
that the explicit one-parameter families over ``P_3d`` are flat.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .errors import MalformedInputError, PreconditionError
from .linalg import ExactMatrix, rank
from .monomials import Monomial, degree_monomials, hilbert_function
from .polarize import (
    box_polarization,
    flat_index,
    polarized_universe,
    standard_polarization,
    unflatten,
)


class Polynomial:
    """Sparse polynomial with exact rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, object] | Iterable[tuple[Monomial, object]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Monomial, Fraction] = {}
        for m, c in items:
            acc[m] = acc.get(m, Fraction(0)) + Fraction(c)
        self.terms = {m: c for m, c in acc.items() if c}

    @classmethod
    def monomial(cls, m: Monomial, coefficient=1) -> Polynomial:
        return cls({m: coefficient})

    @classmethod
    def variable(cls, index: int) -> Polynomial:
        return cls({Monomial.var(index): 1})

    @classmethod
    def constant(cls, c) -> Polynomial:
        return cls({Monomial.one(): c})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: Polynomial) -> Polynomial:
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Polynomial(out)

    def __neg__(self) -> Polynomial:
        return Polynomial({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: Polynomial) -> Polynomial:
        return self + (-other)

    def __mul__(self, other) -> Polynomial:
        if not isinstance(other, Polynomial):
            return Polynomial({m: c * Fraction(other) for m, c in self.terms.items()})
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m1 * m2
                out[m] = out.get(m, 0) + c1 * c2
        return Polynomial(out)

    __rmul__ = __mul__

    def times_monomial(self, m: Monomial) -> Polynomial:
        return Polynomial({m * t: c for t, c in self.terms.items()})

    def degrees(self) -> set[int]:
        return {m.degree for m in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    @property
    def degree(self) -> int:
        return max(self.degrees(), default=-1)

    def evaluate(self, point: Sequence) -> Fraction:
        total = Fraction(0)
        for m, c in self.terms.items():
            value = Fraction(c)
            for v, e in m.exponents:
                value *= Fraction(point[v]) ** e
            total += value
        return total

    def format(self, universe=None) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in sorted(self.terms.items(), key=lambda mc: mc[0].exponents, reverse=True):
            mono = m.format(universe)
            if mono == "1":
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"Polynomial({self.format()})"


ZERO = Polynomial()


@dataclass(frozen=True)
class ColumnLexOrder:
    """Lex order with ``x_{ij} < x_{i'j'}`` iff ``j < j'``, or ``j = j'`` and ``i < i'``.

    ``d`` fixes how flat indices decode into ``(i, j)``.
    """

    d: int

    def variable_rank(self, index: int) -> tuple[int, int]:
        i, j = unflatten(index, self.d)
        return (j, i)

    def key(self, m: Monomial, nvars: int) -> tuple[int, ...]:
        order = sorted(range(nvars), key=self.variable_rank, reverse=True)
        exps = dict(m.exponents)
        return tuple(exps.get(v, 0) for v in order)


def leading_term(p: Polynomial, order: ColumnLexOrder, nvars: int | None = None) -> Monomial:
    if p.is_zero():
        raise PreconditionError("the zero polynomial has no leading term")
    if nvars is None:
        nvars = max(m.max_index for m in p.terms) + 1
    return max(p.terms, key=lambda m: order.key(m, nvars))


@dataclass(frozen=True)
class StructuredMatrix:
    """The ``d x (n+d-1)`` banded matrix with ``x_{1r}, ..., x_{nr}`` in row ``r`` from column ``r`` on."""

    n: int
    d: int
    entries: tuple[tuple[Polynomial, ...], ...] = field(repr=False)

    @property
    def shape(self) -> tuple[int, int]:
        return self.d, self.n + self.d - 1

    def format(self) -> list[list[str]]:
        universe = polarized_universe(self.n, self.d)
        return [[p.format(universe) for p in row] for row in self.entries]


def build_matrix(n: int, d: int) -> StructuredMatrix:
    if n < 1 or d < 1:
        raise MalformedInputError("need n >= 1 and d >= 1")
    rows = []
    for r in range(1, d + 1):
        row = []
        for c in range(1, n + d):
            i = c - r + 1
            row.append(Polynomial.variable(flat_index(i, r, d)) if 1 <= i <= n else ZERO)
        rows.append(tuple(row))
    return StructuredMatrix(n, d, tuple(rows))


def determinant(entries: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Laplace expansion along the first row."""
    size = len(entries)
    if size == 0:
        return Polynomial.constant(1)
    if size == 1:
        return entries[0][0]
    total = ZERO
    for c, a in enumerate(entries[0]):
        if a.is_zero():
            continue
        minor = [row[:c] + row[c + 1 :] for row in entries[1:]]
        term = a * determinant(minor)
        total = total + term if c % 2 == 0 else total - term
    return total


def maximal_minors(matrix: StructuredMatrix) -> list[Polynomial]:
    """One minor per ``d``-subset of columns, subsets in lexicographic order."""
    rows, cols = matrix.shape
    out = []
    for subset in combinations(range(cols), rows):
        out.append(determinant([[row[c] for c in subset] for row in matrix.entries]))
    return out


def graded_piece_rank(gens: Sequence[Polynomial], k: int, nvars: int) -> int:
    """``dim_k`` of the degree-``k`` part of the ideal generated by homogeneous ``gens``."""
    for g in gens:
        if not g.is_homogeneous():
            raise PreconditionError(f"generator {g.format()} is not homogeneous")
    basis = {m: idx for idx, m in enumerate(degree_monomials(nvars, k))}
    rows = []
    for g in gens:
        if g.is_zero() or g.degree > k:
            continue
        for m in degree_monomials(nvars, k - g.degree):
            rows.append({basis[m * t]: c for t, c in g.terms.items()})
    return rank(ExactMatrix(len(rows), len(basis), rows))


@dataclass
class DegreeRow:
    degree: int
    computed: int
    expected: int

    @property
    def match(self) -> bool:
        return self.computed == self.expected


@dataclass
class CheckReport:
    ok: bool
    rows: list[DegreeRow]
    details: dict = field(default_factory=dict)

    def __bool__(self):
        return self.ok

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "degrees": [
                {"degree": r.degree, "computed": r.computed, "expected": r.expected, "match": r.match}
                for r in self.rows
            ],
            **self.details,
        }


def verify_initial_ideal(n: int, d: int, max_degree: int | None = None) -> CheckReport:
    """Leading terms of the minors equal ``B_nd`` and graded dimensions agree through ``max_degree``."""
    max_degree = d + 3 if max_degree is None else max_degree
    if max_degree < d:
        raise PreconditionError("max_degree must be at least d")
    nvars = n * d
    minors = maximal_minors(build_matrix(n, d))
    order = ColumnLexOrder(d)
    leads = sorted((leading_term(p, order, nvars) for p in minors), key=lambda m: m.exponents)
    box = box_polarization(n, d)
    leads_ok = leads == sorted(box.generators, key=lambda m: m.exponents)
    rows = []
    for k in range(max_degree + 1):
        total = len(degree_monomials(nvars, k))
        rows.append(DegreeRow(k, graded_piece_rank(minors, k, nvars), total - hilbert_function(box, k)))
    ok = leads_ok and all(r.match for r in rows)
    return CheckReport(ok, rows, {"leadingTermsMatch": leads_ok})


def lifted_family(d: int, t: Sequence) -> list[Polynomial]:
    """Deformation of ``P_3d`` along the three non-variable first-order directions.

    Generators are returned in the canonical order of ``P_3d``.
    """
    if d < 2:
        raise PreconditionError("the lifted family needs d >= 2")
    if len(t) != 3:
        raise MalformedInputError("expected three parameters")
    t1, t2, t3 = (Fraction(v) for v in t)
    x = lambda i, j: Monomial.var(flat_index(i, j, d))  # noqa: E731
    base = standard_polarization(3, d)
    polys = {g: Polynomial.monomial(g) for g in base.generators}
    if d == 2:
        extra = {
            x(1, 1) * x(1, 2): (t1, x(2, 2) * x(3, 2)),
            x(1, 1) * x(2, 1): (-t1 * t2, x(3, 2) * x(3, 2)),
            x(1, 1) * x(3, 1): (-t1 * t3, x(2, 2) * x(2, 2)),
            x(2, 1) * x(2, 2): (t2, x(1, 2) * x(3, 2)),
            x(2, 1) * x(3, 1): (-t2 * t3, x(1, 2) * x(1, 2)),
            x(3, 1) * x(3, 2): (t3, x(1, 2) * x(2, 2)),
        }
    else:
        extra = {}
        for i, ti, (j, k) in ((1, t1, (2, 3)), (2, t2, (1, 3)), (3, t3, (1, 2))):
            vertex = Monomial.from_indices(flat_index(i, c, d) for c in range(1, d + 1))
            head = Monomial.from_indices(flat_index(i, c, d) for c in range(1, d - 1))
            extra[vertex] = (ti, head * x(j, 2) * x(k, 2))
    for g, (c, m) in extra.items():
        polys[g] = polys[g] + Polynomial.monomial(m, c)
    return [polys[g] for g in base.generators]


def verify_flat_family(d: int, t: Sequence, max_degree: int = 6) -> CheckReport:
    """Graded dimensions of the lifted family at ``t`` agree with those of ``P_3d`` through ``max_degree``."""
    if max_degree < d:
        raise PreconditionError("max_degree must be at least d")
    nvars = 3 * d
    family = lifted_family(d, t)
    special = [Polynomial.monomial(g) for g in standard_polarization(3, d).generators]
    rows = [
        DegreeRow(k, graded_piece_rank(family, k, nvars), graded_piece_rank(special, k, nvars))
        for k in range(max_degree + 1)
    ]
    return CheckReport(all(r.match for r in rows), rows, {"t": [str(Fraction(v)) for v in t]})


PARAMETER_POOL = tuple(Fraction(v) for v in (1, -1, Fraction(1, 2), Fraction(-1, 2), 2, -2, 3, -3))


def random_parameters(count: int, seed: int = 0) -> list[tuple[Fraction, Fraction, Fraction]]:
    """Reproducible nonzero parameter triples drawn from ``{+-1, +-1/2, +-2, +-3}``."""
    rng = random.Random(seed)
    return [tuple(rng.choice(PARAMETER_POOL) for _ in range(3)) for _ in range(count)]
