"""Powers of the maximal ideal and their polarizations.

Every polarization of ``m^d`` in ``n`` variables lives in the shared ring with
variables ``x_{ij}`` (``1 <= i <= n``, ``1 <= j <= d``) at flat index
``(i-1)*d + (j-1)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement

from .errors import MalformedInputError, PreconditionError, StructuralError
from .monomials import (
    Monomial,
    MonomialIdeal,
    VariableUniverse,
    hilbert_numerator,
    minimalize,
)


def _check_nd(n: int, d: int) -> None:
    if n < 1 or d < 1:
        raise MalformedInputError(f"need n >= 1 and d >= 1, got n={n}, d={d}")


def flat_index(i: int, j: int, d: int) -> int:
    """Flat index of ``x_{ij}`` (1-based ``i``, ``j``) in the ``nd``-variable ring."""
    return (i - 1) * d + (j - 1)


def unflatten(index: int, d: int) -> tuple[int, int]:
    """Inverse of :func:`flat_index`."""
    return index // d + 1, index % d + 1


def polarized_universe(n: int, d: int) -> VariableUniverse:
    return VariableUniverse(
        tuple(f"x_{{{i},{j}}}" for i in range(1, n + 1) for j in range(1, d + 1))
    )


@dataclass(frozen=True)
class DepolarizationSpec:
    """Assignment of each polarized variable to the base variable it collapses to."""

    grouping: tuple[int, ...]
    base: VariableUniverse = field(compare=False)

    def __post_init__(self):
        if any(not 0 <= b < self.base.count for b in self.grouping):
            raise MalformedInputError("grouping refers to a base variable outside the base universe")

    @classmethod
    def identity(cls, universe: VariableUniverse) -> DepolarizationSpec:
        return cls(tuple(range(universe.count)), universe)

    @classmethod
    def standard(cls, n: int, d: int) -> DepolarizationSpec:
        """``x_{ij} -> x_i``."""
        return cls(tuple(i for i in range(n) for _ in range(d)), VariableUniverse.indexed(n))


def power_ideal(n: int, d: int) -> MonomialIdeal:
    """``m^d`` in ``k[x_1..x_n]``."""
    _check_nd(n, d)
    universe = VariableUniverse.indexed(n)
    return minimalize(
        (Monomial.from_indices(c) for c in combinations_with_replacement(range(n), d)), universe
    )


def sqfree_power_ideal(n: int, d: int) -> MonomialIdeal:
    """All square-free degree-``d`` monomials in ``n + d - 1`` variables."""
    _check_nd(n, d)
    universe = VariableUniverse.indexed(n + d - 1)
    return minimalize(
        (Monomial.from_indices(c) for c in combinations(range(n + d - 1), d)), universe
    )


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def standard_polarization(n: int, d: int) -> MonomialIdeal:
    """``P_nd``: for each composition ``d = a_1 + ... + a_n`` the generator ``prod_i x_{i1}...x_{i a_i}``."""
    _check_nd(n, d)
    gens = []
    for comp in _compositions(d, n):
        gens.append(
            Monomial.from_indices(
                flat_index(i + 1, j, d) for i, a in enumerate(comp) for j in range(1, a + 1)
            )
        )
    return minimalize(gens, polarized_universe(n, d))


def box_polarization(n: int, d: int) -> MonomialIdeal:
    """``B_nd``: generators ``x_{i_1 1} x_{i_2 2} ... x_{i_d d}`` with ``i_1 <= ... <= i_d``."""
    _check_nd(n, d)
    gens = []
    for seq in combinations_with_replacement(range(1, n + 1), d):
        gens.append(Monomial.from_indices(flat_index(i, j + 1, d) for j, i in enumerate(seq)))
    return minimalize(gens, polarized_universe(n, d))


def trivial_polarization(n: int, d: int) -> MonomialIdeal:
    """``M_d = (x_{11}, ..., x_{n1})^d`` inside the ``nd``-variable ring."""
    _check_nd(n, d)
    firsts = [flat_index(i, 1, d) for i in range(1, n + 1)]
    return minimalize(
        (Monomial.from_indices(c) for c in combinations_with_replacement(firsts, d)),
        polarized_universe(n, d),
    )


def depolarize(ideal: MonomialIdeal, spec: DepolarizationSpec) -> MonomialIdeal:
    if len(spec.grouping) != ideal.nvars:
        raise MalformedInputError("depolarization spec does not cover the ideal's universe")
    return ideal.rename(spec.grouping, spec.base)


@dataclass(frozen=True)
class PolarizationReport:
    ok: bool
    depolarizes_bijectively: bool
    k_polynomials_equal: bool
    reason: str = ""

    def __bool__(self):
        return self.ok


def is_polarization(candidate: MonomialIdeal, ideal: MonomialIdeal, spec: DepolarizationSpec) -> PolarizationReport:
    """Certify that ``candidate`` polarizes ``ideal`` under ``spec``.

    Checks that substituting base variables maps the generators of
    ``candidate`` one-to-one onto those of ``ideal``, and that the two
    K-polynomials agree.  Given the first condition the quotient by the
    variable differences is ``S/I``, and equality of K-polynomials is then
    equivalent to those differences forming a regular sequence.
    """
    if not candidate.is_squarefree():
        raise PreconditionError("a polarization must be square-free")
    if len(spec.grouping) != candidate.nvars or spec.base.count != ideal.nvars:
        raise MalformedInputError("spec does not map the candidate's universe onto the ideal's")
    images = [g.substitute(spec.grouping) for g in candidate.generators]
    bijective = len(set(images)) == len(images) and set(images) == set(ideal.generators)
    k_equal = (
        hilbert_numerator(candidate).coefficients == hilbert_numerator(ideal).coefficients
    )
    reasons = []
    if not bijective:
        reasons.append("generators do not depolarize one-to-one onto the target")
    if not k_equal:
        reasons.append("K-polynomials differ")
    return PolarizationReport(bijective and k_equal, bijective, k_equal, "; ".join(reasons))


def vertices(ideal: MonomialIdeal, spec: DepolarizationSpec) -> list[int]:
    """Generator indices mapping to the pure powers ``x_i^d``, ordered by ``i``."""
    degrees = ideal.generator_degrees()
    if len(degrees) != 1:
        raise StructuralError("vertices need an equigenerated ideal")
    (d,) = degrees
    found: dict[int, int] = {}
    for idx, g in enumerate(ideal.generators):
        image = g.substitute(spec.grouping)
        if len(image.exponents) == 1:
            found.setdefault(image.exponents[0][0], idx)
    missing = [i for i in range(spec.base.count) if i not in found]
    if missing:
        raise StructuralError(f"no generator depolarizes to x_{missing[0] + 1}^{d}")
    return [found[i] for i in range(spec.base.count)]
