"""Exact sparse linear algebra over the rationals.

Matrices are lists of sparse rows ``{column: Fraction}``.  Elimination runs
per connected block of the row/column incidence graph: constraint matrices
coming from multigraded modules split into many small independent blocks,
and rank, nullity and reduced echelon bases are all block-local.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

from .errors import MalformedInputError


@dataclass
class ExactMatrix:
    row_count: int
    col_count: int
    rows: list[dict[int, Fraction]] = field(default_factory=list)

    def __post_init__(self):
        cleaned = []
        for row in self.rows:
            clean = {}
            for c, v in row.items():
                if not 0 <= c < self.col_count:
                    raise MalformedInputError(f"column {c} out of range {self.col_count}")
                if v:
                    clean[c] = Fraction(v)
            cleaned.append(clean)
        self.rows = cleaned
        if len(self.rows) != self.row_count:
            raise MalformedInputError("row_count does not match number of rows")

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence], col_count: int | None = None) -> ExactMatrix:
        if col_count is None:
            col_count = len(rows[0]) if rows else 0
        sparse = [{j: v for j, v in enumerate(r) if v} for r in rows]
        return cls(len(rows), col_count, sparse)

    @classmethod
    def from_sparse(cls, rows: Iterable[Mapping[int, object]], col_count: int) -> ExactMatrix:
        rows = [dict(r) for r in rows]
        return cls(len(rows), col_count, rows)

    def to_dense(self) -> list[list[Fraction]]:
        out = []
        for row in self.rows:
            dense = [Fraction(0)] * self.col_count
            for c, v in row.items():
                dense[c] = v
            out.append(dense)
        return out

    def apply(self, vector: Sequence) -> list[Fraction]:
        """Matrix-vector product."""
        if len(vector) != self.col_count:
            raise MalformedInputError("vector length does not match column count")
        return [sum((v * vector[c] for c, v in row.items()), Fraction(0)) for row in self.rows]


def _blocks(rows: Sequence[Mapping[int, object]], col_count: int) -> list[tuple[list[int], list[int]]]:
    """Connected components as ``(row indices, column indices)``, columns sorted."""
    parent = list(range(col_count))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for row in rows:
        cols = iter(row)
        first = next(cols, None)
        if first is None:
            continue
        root = find(first)
        for c in cols:
            other = find(c)
            if other != root:
                parent[other] = root
    by_root: dict[int, tuple[list[int], list[int]]] = {}
    for c in range(col_count):
        by_root.setdefault(find(c), ([], []))[1].append(c)
    for i, row in enumerate(rows):
        if row:
            by_root[find(next(iter(row)))][0].append(i)
    return list(by_root.values())


def _integer_row(row: Mapping[int, Fraction]) -> dict[int, int]:
    den = 1
    for v in row.values():
        if isinstance(v, Fraction):
            den = lcm(den, v.denominator)
    out = {c: int(v * den) for c, v in row.items()}
    return _primitive(out)


def _primitive(row: dict[int, int]) -> dict[int, int]:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        return {c: v // g for c, v in row.items()}
    return row


def _echelon(rows: Iterable[Mapping[int, Fraction]]) -> dict[int, dict[int, int]]:
    """Fraction-free forward elimination.

    Rows are processed in order; each row's leading entry is cleared against
    existing pivot rows by cross-multiplication followed by content removal,
    so all arithmetic stays in the integers.  Returns pivot column -> row.
    """
    pivots: dict[int, dict[int, int]] = {}
    for raw in rows:
        row = _integer_row(raw)
        while row:
            c = min(row)
            p = pivots.get(c)
            if p is None:
                pivots[c] = row
                break
            a, b = row[c], p[c]
            new = {k: b * v for k, v in row.items()}
            for k, v in p.items():
                w = new.get(k, 0) - a * v
                if w:
                    new[k] = w
                else:
                    new.pop(k, None)
            row = _primitive(new)
    return pivots


def rank_nullity(matrix: ExactMatrix) -> tuple[int, int]:
    """Exact ``(rank, nullity)``; ``rank + nullity == col_count``."""
    rank = 0
    for row_ids, _ in _blocks(matrix.rows, matrix.col_count):
        if row_ids:
            rank += len(_echelon(matrix.rows[i] for i in row_ids))
    return rank, matrix.col_count - rank


def rank(matrix: ExactMatrix) -> int:
    return rank_nullity(matrix)[0]


def _reduced(pivots: dict[int, dict[int, int]]) -> dict[int, dict[int, Fraction]]:
    """Back-substitute an echelon form into reduced form with unit pivots."""
    reduced: dict[int, dict[int, Fraction]] = {}
    for c in sorted(pivots, reverse=True):
        p = pivots[c]
        lead = p[c]
        row = {k: Fraction(v, lead) for k, v in p.items()}
        for k in [k for k in row if k != c and k in reduced]:
            factor = row[k]
            for kk, vv in reduced[k].items():
                w = row.get(kk, 0) - factor * vv
                if w:
                    row[kk] = w
                else:
                    row.pop(kk, None)
        reduced[c] = row
    return reduced


def nullspace_basis(matrix: ExactMatrix) -> list[list[Fraction]]:
    """Basis of ``{v : M v = 0}`` read off the reduced echelon form.

    One vector per free column ``f`` (in increasing order of ``f``), with
    ``v[f] = 1``, zeros at the other free columns, and minus the reduced
    entries at the pivot columns.
    """
    n = matrix.col_count
    basis: list[tuple[int, list[Fraction]]] = []
    for row_ids, cols in _blocks(matrix.rows, n):
        reduced = _reduced(_echelon(matrix.rows[i] for i in row_ids)) if row_ids else {}
        for f in cols:
            if f in reduced:
                continue
            v = [Fraction(0)] * n
            v[f] = Fraction(1)
            for c, row in reduced.items():
                if f in row:
                    v[c] = -row[f]
            basis.append((f, v))
    basis.sort(key=lambda item: item[0])
    return [v for _, v in basis]
