"""First-order deformations of equigenerated monomial ideals.

A degree-0 homomorphism ``I -> S/I`` is determined by the images ``h_i`` of
the generators ``f_i``, each a combination of degree-``d`` standard
monomials.  It is well defined iff every pairwise (Taylor) relation
``(L/f_i) f_i - (L/f_j) f_j`` with ``L = lcm(f_i, f_j)`` is respected, i.e.
``(L/f_i) h_i - (L/f_j) h_j = 0`` in ``S/I``.  These relations generate all
syzygies of a monomial ideal, so the solution space is ``Hom(I, S/I)_0``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import MalformedInputError, PreconditionError
from .linalg import ExactMatrix, nullspace_basis, rank, rank_nullity
from .monomials import Monomial, MonomialIdeal, canonical_key, standard_monomials
from .polarize import DepolarizationSpec, vertices as polarization_vertices


def _single_degree(ideal: MonomialIdeal) -> int:
    degrees = ideal.generator_degrees()
    if len(degrees) != 1:
        raise PreconditionError(
            f"ideal must be generated in a single degree, got degrees {sorted(degrees)}"
        )
    return next(iter(degrees))


@dataclass(frozen=True, eq=False)
class ConstraintSystem:
    """The linear system whose null space is ``Hom(I, S/I)_0``.

    Column ``i * len(standard) + k`` is the coefficient of ``standard[k]`` in
    the image of generator ``i``.  Rows are labelled ``(i, j, mu)``: the
    coefficient of the standard monomial ``mu`` in the lifted pair relation.
    """

    ideal: MonomialIdeal
    degree: int
    standard: tuple[Monomial, ...]
    matrix: ExactMatrix
    row_labels: tuple[tuple[int, int, Monomial], ...]

    @property
    def columns(self) -> list[tuple[int, Monomial]]:
        return [(i, m) for i in range(len(self.ideal)) for m in self.standard]

    def column(self, generator: int, monomial: Monomial) -> int:
        return generator * len(self.standard) + self._position[monomial]

    @property
    def _position(self) -> dict[Monomial, int]:
        cache = self.__dict__.get("_pos")
        if cache is None:
            cache = {m: k for k, m in enumerate(self.standard)}
            object.__setattr__(self, "_pos", cache)
        return cache


def syzygy_constraints(ideal: MonomialIdeal) -> ConstraintSystem:
    d = _single_degree(ideal)
    gens = ideal.generators
    std = standard_monomials(ideal, d)
    s = len(std)
    n = ideal.nvars

    member: dict[Monomial, bool] = {}

    def in_ideal(mu: Monomial) -> bool:
        hit = member.get(mu)
        if hit is None:
            hit = member[mu] = any(g.divides(mu) for g in gens)
        return hit

    rows: list[dict[int, int]] = []
    labels: list[tuple[int, int, Monomial]] = []
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            lcm = gens[i].lcm(gens[j])
            left, right = lcm / gens[i], lcm / gens[j]
            block: dict[Monomial, dict[int, int]] = {}
            for k, m in enumerate(std):
                mu = left * m
                if not in_ideal(mu):
                    block.setdefault(mu, {})[i * s + k] = 1
                mu = right * m
                if not in_ideal(mu):
                    row = block.setdefault(mu, {})
                    row[j * s + k] = row.get(j * s + k, 0) - 1
            for mu in sorted(block, key=lambda m: canonical_key(m, n)):
                row = {c: v for c, v in block[mu].items() if v}
                if row:
                    rows.append(row)
                    labels.append((i, j, mu))
    matrix = ExactMatrix(len(rows), len(gens) * s, rows)
    return ConstraintSystem(ideal, d, tuple(std), matrix, tuple(labels))


def tangent_dimension(ideal: MonomialIdeal) -> int:
    """``dim_k Hom(I, S/I)_0`` for an equigenerated monomial ideal."""
    return rank_nullity(syzygy_constraints(ideal).matrix)[1]


@dataclass(frozen=True)
class DeformationVector:
    """Per-generator perturbations ``h_i``; ``perturbations[i]`` is a tuple of ``(monomial, coefficient)``."""

    perturbations: tuple[tuple[tuple[Monomial, Fraction], ...], ...]

    @classmethod
    def zero(cls, ngens: int) -> DeformationVector:
        return cls(tuple(() for _ in range(ngens)))

    @classmethod
    def single(cls, ngens: int, generator: int, monomial: Monomial, coefficient=1) -> DeformationVector:
        parts = [() for _ in range(ngens)]
        parts[generator] = ((monomial, Fraction(coefficient)),)
        return cls(tuple(parts))

    @classmethod
    def from_coordinates(cls, system: ConstraintSystem, vector: Sequence) -> DeformationVector:
        s = len(system.standard)
        parts = []
        for i in range(len(system.ideal)):
            parts.append(
                tuple(
                    (m, Fraction(vector[i * s + k]))
                    for k, m in enumerate(system.standard)
                    if vector[i * s + k]
                )
            )
        return cls(tuple(parts))

    def coordinates(self, system: ConstraintSystem) -> list[Fraction]:
        if len(self.perturbations) != len(system.ideal):
            raise MalformedInputError(
                f"vector has {len(self.perturbations)} entries, ideal has {len(system.ideal)} generators"
            )
        out = [Fraction(0)] * system.matrix.col_count
        for i, part in enumerate(self.perturbations):
            for m, c in part:
                if m.degree != system.degree or m in system.ideal:
                    raise MalformedInputError(
                        f"{m.format(system.ideal.universe)} is not a standard monomial of degree {system.degree}"
                    )
                out[system.column(i, m)] += Fraction(c)
        return out

    def is_zero(self) -> bool:
        return all(c == 0 for part in self.perturbations for _, c in part)

    def support(self) -> list[int]:
        """Indices of generators with a nonzero perturbation."""
        return [i for i, part in enumerate(self.perturbations) if any(c for _, c in part)]

    def format(self, ideal: MonomialIdeal) -> list[str]:
        out = []
        for g, part in zip(ideal.generators, self.perturbations):
            terms = " + ".join(f"{c}*{m.format(ideal.universe)}" for m, c in part) or "0"
            out.append(f"{g.format(ideal.universe)} -> {terms}")
        return out

    def to_json(self, ideal: MonomialIdeal) -> list[list[dict]]:
        return [
            [{"monomial": [[v, e] for v, e in m.exponents], "coefficient": str(c)} for m, c in part]
            for part in self.perturbations
        ]


def deformation_basis(ideal: MonomialIdeal) -> list[DeformationVector]:
    system = syzygy_constraints(ideal)
    return [DeformationVector.from_coordinates(system, v) for v in nullspace_basis(system.matrix)]


def is_first_order_deformation(
    ideal: MonomialIdeal, vector: DeformationVector, system: ConstraintSystem | None = None
) -> bool:
    system = system or syzygy_constraints(ideal)
    coords = system.matrix.apply(vector.coordinates(system))
    return all(v == 0 for v in coords)


def variable_deformation_rows(system: ConstraintSystem) -> list[dict[int, int]]:
    """Coordinates of the deformations ``x_a -> x_a + t x_b`` for all ``a != b``.

    The image of generator ``f`` is ``x_b * df/dx_a`` reduced modulo ``I``.
    """
    ideal = system.ideal
    rows = []
    for a in range(ideal.nvars):
        xa = Monomial.var(a)
        for b in range(ideal.nvars):
            if a == b:
                continue
            xb = Monomial.var(b)
            row: dict[int, int] = {}
            for i, f in enumerate(ideal.generators):
                e = f.exponent(a)
                if not e:
                    continue
                h = (f / xa) * xb
                if h not in ideal:
                    row[system.column(i, h)] = e
            if row:
                rows.append(row)
    return rows


def variable_deformation_dim(ideal: MonomialIdeal) -> int:
    """Dimension of the span of the variable deformations inside ``Hom(I, S/I)_0``."""
    system = syzygy_constraints(ideal)
    rows = variable_deformation_rows(system)
    return rank(ExactMatrix(len(rows), system.matrix.col_count, rows))


def vertex_restriction_rank(ideal: MonomialIdeal, vertex_indices: Sequence[int]) -> int:
    """Rank of the projection of ``Hom(I, S/I)_0`` onto the vertex generators' coordinates.

    Equals ``tangent_dimension`` exactly when no nonzero deformation
    vanishes on every vertex.
    """
    system = syzygy_constraints(ideal)
    basis = nullspace_basis(system.matrix)
    s = len(system.standard)
    keep = [i * s + k for i in vertex_indices for k in range(s)]
    rows = [{c: v[c] for c in keep if v[c]} for v in basis]
    return rank(ExactMatrix(len(rows), system.matrix.col_count, rows))


class PushKind(enum.Enum):
    VANISHES = "vanishes"
    PUSHED = "pushed"
    OBSTRUCTED = "obstructed"


@dataclass(frozen=True)
class PushOutcome:
    kind: PushKind
    monomial: Monomial | None = None


def _swap(ideal: MonomialIdeal, source: int, target: int) -> tuple[Monomial, Monomial]:
    """For ``target = source * x_in / x_out`` return ``(x_in, x_out)``."""
    f, g = ideal.generators[source], ideal.generators[target]
    common = f.gcd(g)
    x_in, x_out = g / common, f / common
    if x_in.degree != 1 or x_out.degree != 1:
        raise PreconditionError("generators are not adjacent (must differ by one variable swap)")
    return x_in, x_out


def push_deformation(ideal: MonomialIdeal, source: int, monomial: Monomial, target: int) -> PushOutcome:
    """Transport the perturbation ``f + t m`` of generator ``source`` across its relation with ``target``."""
    d = _single_degree(ideal)
    if monomial.degree != d:
        raise PreconditionError("perturbation must have the generating degree")
    x_in, x_out = _swap(ideal, source, target)
    # m in I is zero in S/I; it vanishes along with everything it pushes to
    if x_in * monomial in ideal:
        return PushOutcome(PushKind.VANISHES)
    if x_out.divides(monomial):
        return PushOutcome(PushKind.PUSHED, (monomial / x_out) * x_in)
    return PushOutcome(PushKind.OBSTRUCTED)


@dataclass(frozen=True)
class VertexReach:
    vertices: frozenset[int]
    obstructed: bool


def adjacent_generators(ideal: MonomialIdeal) -> dict[int, list[int]]:
    """Generator index -> indices of generators differing by a single variable swap."""
    gens = ideal.generators
    adj: dict[int, list[int]] = {i: [] for i in range(len(gens))}
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            if gens[i].gcd(gens[j]).degree == gens[i].degree - 1 == gens[j].degree - 1:
                adj[i].append(j)
                adj[j].append(i)
    return adj


def pushes_to_vertices(
    ideal: MonomialIdeal,
    vertices: Sequence[int] | DepolarizationSpec,
    generator: int,
    monomial: Monomial,
) -> VertexReach:
    """Vertices reachable from ``f + t m`` by repeated pushes that do not vanish.

    ``vertices`` is either a list of vertex generator indices or a
    depolarization spec from which the vertices of a polarization of ``m^d``
    are located.
    """
    if isinstance(vertices, DepolarizationSpec):
        vertices = polarization_vertices(ideal, vertices)
    vertex_set = set(vertices)
    if monomial in ideal:
        raise PreconditionError("improper deformation: the perturbation lies in the ideal")
    adj = adjacent_generators(ideal)
    seen = {(generator, monomial)}
    stack = [(generator, monomial)]
    reached = set()
    obstructed = False
    while stack:
        g, m = stack.pop()
        if g in vertex_set:
            reached.add(g)
        for h in adj[g]:
            out = push_deformation(ideal, g, m, h)
            if out.kind is PushKind.OBSTRUCTED:
                obstructed = True
            elif out.kind is PushKind.PUSHED and (h, out.monomial) not in seen:
                seen.add((h, out.monomial))
                stack.append((h, out.monomial))
    return VertexReach(frozenset(reached), obstructed)


def determinantal_component_dim(n: int, d: int) -> int:
    """Dimension of the Hilbert-scheme component of maximal minors of a ``d x (n+d-1)`` linear matrix."""
    if n < 1 or d < 1:
        raise MalformedInputError("need n >= 1 and d >= 1")
    return d * (d + n - 1) * n * d - d**2 - (d + n - 1) ** 2 + 1
