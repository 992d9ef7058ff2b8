"""Monomials, monomial ideals, standard monomials and Hilbert series numerators.

Monomials are stored sparsely as sorted ``(variable, exponent)`` pairs; the
variable indices refer to a :class:`VariableUniverse` carried by the ideal.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb
from typing import Iterable, Mapping, Sequence

from .errors import MalformedInputError


@dataclass(frozen=True)
class VariableUniverse:
    names: tuple[str, ...]

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise MalformedInputError("variable names must be distinct")
        if not self.names:
            raise MalformedInputError("a universe needs at least one variable")

    @property
    def count(self) -> int:
        return len(self.names)

    @classmethod
    def indexed(cls, n: int, prefix: str = "x") -> VariableUniverse:
        """Universe ``x1, ..., xn``."""
        return cls(tuple(f"{prefix}{i}" for i in range(1, n + 1)))


class Monomial:
    """A monomial as a sparse exponent vector.

    ``exponents`` is a tuple of ``(variable index, exponent)`` pairs sorted by
    index, with no zero exponents.  ``mask`` is the support as a bitmask, which
    makes square-free divisibility a single integer test.
    """

    __slots__ = ("exponents", "degree", "mask", "_squarefree", "_hash")

    def __init__(self, exponents: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = exponents.items() if isinstance(exponents, Mapping) else exponents
        acc: dict[int, int] = {}
        for var, e in items:
            if var < 0 or e < 0:
                raise MalformedInputError(f"bad exponent entry ({var}, {e})")
            if e:
                acc[var] = acc.get(var, 0) + e
        self._set(tuple(sorted(acc.items())))

    def _set(self, pairs: tuple[tuple[int, int], ...]) -> None:
        self.exponents = pairs
        self.degree = sum(e for _, e in pairs)
        mask = 0
        for v, _ in pairs:
            mask |= 1 << v
        self.mask = mask
        self._squarefree = self.degree == len(pairs)
        self._hash = hash(pairs)

    @classmethod
    def _raw(cls, pairs: tuple[tuple[int, int], ...]) -> Monomial:
        m = cls.__new__(cls)
        m._set(pairs)
        return m

    @classmethod
    def one(cls) -> Monomial:
        return cls._raw(())

    @classmethod
    def var(cls, index: int, exponent: int = 1) -> Monomial:
        return cls({index: exponent})

    @classmethod
    def from_indices(cls, indices: Iterable[int]) -> Monomial:
        """Product of the listed variables (repetitions allowed)."""
        acc: dict[int, int] = {}
        for i in indices:
            acc[i] = acc.get(i, 0) + 1
        return cls(acc)

    @classmethod
    def from_dense(cls, vector: Sequence[int]) -> Monomial:
        return cls((i, e) for i, e in enumerate(vector) if e)

    def dense(self, n: int) -> tuple[int, ...]:
        out = [0] * n
        for v, e in self.exponents:
            out[v] = e
        return tuple(out)

    def exponent(self, var: int) -> int:
        for v, e in self.exponents:
            if v == var:
                return e
        return 0

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(v for v, _ in self.exponents)

    @property
    def max_index(self) -> int:
        return self.exponents[-1][0] if self.exponents else -1

    def is_squarefree(self) -> bool:
        return self._squarefree

    def __eq__(self, other):
        if not isinstance(other, Monomial):
            return NotImplemented
        return self.exponents == other.exponents

    def __hash__(self):
        return self._hash

    def __mul__(self, other: Monomial) -> Monomial:
        if not other.exponents:
            return self
        if not self.exponents:
            return other
        if not (self.mask & other.mask):
            return Monomial._raw(tuple(sorted(self.exponents + other.exponents)))
        acc = dict(self.exponents)
        for v, e in other.exponents:
            acc[v] = acc.get(v, 0) + e
        return Monomial._raw(tuple(sorted(acc.items())))

    def divides(self, other: Monomial) -> bool:
        if self.mask & ~other.mask:
            return False
        if self._squarefree:
            return True
        theirs = dict(other.exponents)
        return all(theirs[v] >= e for v, e in self.exponents)

    def __truediv__(self, other: Monomial) -> Monomial:
        """Exact quotient; raises if ``other`` does not divide ``self``."""
        if not other.divides(self):
            raise ValueError(f"{other!r} does not divide {self!r}")
        acc = dict(self.exponents)
        for v, e in other.exponents:
            acc[v] -= e
        return Monomial._raw(tuple((v, e) for v, e in sorted(acc.items()) if e))

    def lcm(self, other: Monomial) -> Monomial:
        acc = dict(self.exponents)
        for v, e in other.exponents:
            if e > acc.get(v, 0):
                acc[v] = e
        return Monomial._raw(tuple(sorted(acc.items())))

    def gcd(self, other: Monomial) -> Monomial:
        theirs = dict(other.exponents)
        return Monomial._raw(
            tuple((v, min(e, theirs[v])) for v, e in self.exponents if v in theirs)
        )

    def substitute(self, mapping: Sequence[int]) -> Monomial:
        """Rename every variable ``v`` to ``mapping[v]``."""
        acc: dict[int, int] = {}
        for v, e in self.exponents:
            w = mapping[v]
            acc[w] = acc.get(w, 0) + e
        return Monomial._raw(tuple(sorted(acc.items())))

    def format(self, universe: VariableUniverse | None = None) -> str:
        if not self.exponents:
            return "1"
        parts = []
        for v, e in self.exponents:
            name = universe.names[v] if universe is not None else f"x{v + 1}"
            parts.append(name if e == 1 else f"{name}^{e}")
        return "*".join(parts)

    def __repr__(self):
        return f"Monomial({dict(self.exponents)!r})"


def canonical_key(m: Monomial, n: int) -> tuple[int, ...]:
    """Sort key for the canonical order: lexicographically descending exponent vectors."""
    return tuple(-e for e in m.dense(n))


def degree_monomials(n: int, k: int) -> list[Monomial]:
    """All degree-``k`` monomials in ``n`` variables, in canonical order."""
    return [Monomial.from_indices(c) for c in combinations_with_replacement(range(n), k)]


@dataclass(frozen=True)
class MonomialIdeal:
    """A monomial ideal given by its minimal generators in canonical order.

    Build instances through :func:`minimalize` (or the constructors in
    :mod:`polhilb.polarize`); the plain constructor trusts its input.
    """

    universe: VariableUniverse
    generators: tuple[Monomial, ...]

    @property
    def nvars(self) -> int:
        return self.universe.count

    def __len__(self):
        return len(self.generators)

    def contains(self, m: Monomial) -> bool:
        return any(g.divides(m) for g in self.generators)

    __contains__ = contains

    def is_squarefree(self) -> bool:
        return all(g.is_squarefree() for g in self.generators)

    def generator_degrees(self) -> set[int]:
        return {g.degree for g in self.generators}

    def is_zero(self) -> bool:
        return not self.generators

    def index(self, m: Monomial) -> int:
        return self.generators.index(m)

    def rename(self, mapping: Sequence[int], universe: VariableUniverse | None = None) -> MonomialIdeal:
        """Apply a variable substitution and minimalize in ``universe`` (default: same)."""
        universe = universe or self.universe
        return minimalize((g.substitute(mapping) for g in self.generators), universe)

    def format(self) -> str:
        return "(" + ", ".join(g.format(self.universe) for g in self.generators) + ")"

    def to_json(self) -> dict:
        return {
            "variables": list(self.universe.names),
            "generators": [[[v, e] for v, e in g.exponents] for g in self.generators],
        }

    @classmethod
    def from_json(cls, data: dict | str) -> MonomialIdeal:
        if isinstance(data, str):
            data = json.loads(data)
        try:
            universe = VariableUniverse(tuple(data["variables"]))
            gens = [Monomial((int(v), int(e)) for v, e in g) for g in data["generators"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedInputError(f"malformed ideal JSON: {exc}") from exc
        return minimalize(gens, universe)


def minimalize(gens: Iterable[Monomial], universe: VariableUniverse) -> MonomialIdeal:
    """Return the ideal generated by ``gens`` with its minimal generators in canonical order."""
    n = universe.count
    unique = set()
    for g in gens:
        if g.max_index >= n:
            raise MalformedInputError(
                f"monomial {g!r} uses variable {g.max_index} outside a universe of {n}"
            )
        unique.add(g)
    kept: list[Monomial] = []
    for g in sorted(unique, key=lambda m: m.degree):
        if not any(h.divides(g) for h in kept):
            kept.append(g)
    kept.sort(key=lambda m: canonical_key(m, n))
    return MonomialIdeal(universe, tuple(kept))


def ideal_from_indices(universe: VariableUniverse, generators: Iterable[Iterable[int]]) -> MonomialIdeal:
    """Convenience constructor: each generator given as a list of variable indices."""
    return minimalize((Monomial.from_indices(g) for g in generators), universe)


def standard_monomials(ideal: MonomialIdeal, k: int) -> list[Monomial]:
    """Degree-``k`` monomials outside ``ideal``, in canonical order."""
    gens = ideal.generators
    out = []
    for m in degree_monomials(ideal.nvars, k):
        if not any(g.divides(m) for g in gens):
            out.append(m)
    return out


def hilbert_function(ideal: MonomialIdeal, k: int) -> int:
    """``dim_k (S/I)_k``."""
    return len(standard_monomials(ideal, k))


@dataclass(frozen=True)
class HilbertNumerator:
    """K(t) with Hilbert series K(t) / (1 - t)^nvars."""

    coefficients: tuple[int, ...]
    nvars: int

    def __call__(self, t):
        return sum(c * t**k for k, c in enumerate(self.coefficients))

    def series(self, max_degree: int) -> list[int]:
        """Coefficients of the Hilbert series up to ``t^max_degree``."""
        n = self.nvars
        out = []
        for k in range(max_degree + 1):
            total = 0
            for j, c in enumerate(self.coefficients[: k + 1]):
                total += c * comb(n - 1 + k - j, k - j)
            out.append(total)
        return out

    def __str__(self):
        terms = []
        for k, c in enumerate(self.coefficients):
            if c:
                terms.append(f"{c}" if k == 0 else f"{c}*t^{k}")
        return " + ".join(terms).replace("+ -", "- ") or "0"


def _poly_add(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] += c
    return _trim(out)


def _poly_mul(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _trim(coeffs: Sequence[int]) -> tuple[int, ...]:
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def _minimal(gens: Iterable[Monomial]) -> tuple[Monomial, ...]:
    kept: list[Monomial] = []
    for g in sorted(set(gens), key=lambda m: m.degree):
        if not any(h.divides(g) for h in kept):
            kept.append(g)
    return tuple(sorted(kept, key=lambda m: m.exponents))


@lru_cache(maxsize=None)
def _k_polynomial(gens: tuple[Monomial, ...]) -> tuple[int, ...]:
    # gens is minimal and sorted by exponent tuple, so it doubles as the memo key.
    if not gens:
        return (1,)
    if any(g.degree == 0 for g in gens):
        return ()
    seen = 0
    coprime = True
    for g in gens:
        if g.mask & seen:
            coprime = False
            break
        seen |= g.mask
    if coprime:
        out: tuple[int, ...] = (1,)
        for g in gens:
            out = _poly_mul(out, (1,) + (0,) * (g.degree - 1) + (-1,))
        return out
    counts: dict[int, int] = {}
    for g in gens:
        for v in g.support:
            counts[v] = counts.get(v, 0) + 1
    pivot = min(counts, key=lambda v: (-counts[v], v))
    x = Monomial._raw(((pivot, 1),))
    plus_x = _minimal([g for g in gens if not x.divides(g)] + [x])
    colon_x = _minimal(g / g.gcd(x) for g in gens)
    return _poly_add(_k_polynomial(plus_x), (0,) + _k_polynomial(colon_x))


def hilbert_numerator(ideal: MonomialIdeal) -> HilbertNumerator:
    """K-polynomial via the pivot recursion K(I) = K(I + (x)) + t K(I : x)."""
    key = tuple(sorted(ideal.generators, key=lambda m: m.exponents))
    return HilbertNumerator(_k_polynomial(key), ideal.nvars)
