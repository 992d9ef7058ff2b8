from __future__ import annotations

import itertools
from fractions import Fraction

from hypothesis import strategies as st

from polhilb.monomials import Monomial, VariableUniverse, minimalize
from polhilb.polarize import flat_index


def xm(d: int, *pairs: tuple[int, int]) -> Monomial:
    """Product of ``x_{ij}`` over ``pairs`` in the flat ``n x d`` universe."""
    return Monomial.from_indices(flat_index(i, j, d) for i, j in pairs)


def dense_rank(rows: list[list]) -> int:
    """Textbook Gauss-Jordan over Q; used as an oracle for the sparse solver."""
    a = [[Fraction(v) for v in row] for row in rows]
    if not a:
        return 0
    rank, cols = 0, len(a[0])
    for c in range(cols):
        pivot = next((r for r in range(rank, len(a)) if a[r][c] != 0), None)
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        for r in range(len(a)):
            if r != rank and a[r][c] != 0:
                f = a[r][c] / a[rank][c]
                a[r] = [u - f * v for u, v in zip(a[r], a[rank])]
        rank += 1
    return rank


def all_monomials(n: int, k: int) -> list[Monomial]:
    return [Monomial.from_indices(c) for c in itertools.combinations_with_replacement(range(n), k)]


def hom_dimension_oracle(ideal) -> int:
    """dim Hom(I, S/I)_0 from the dense system: unknown h_i in (S/I)_d per generator,
    and for each pair the combination (L/f_i) h_i - (L/f_j) h_j must vanish mod I."""
    gens = ideal.generators
    n = ideal.nvars
    d = gens[0].degree
    std = [m for m in all_monomials(n, d) if not any(g.divides(m) for g in gens)]
    cols = [(i, m) for i in range(len(gens)) for m in std]
    pos = {c: k for k, c in enumerate(cols)}
    rows = []
    for i, j in itertools.combinations(range(len(gens)), 2):
        lcm = gens[i].lcm(gens[j])
        ui, uj = lcm / gens[i], lcm / gens[j]
        eqs: dict[Monomial, list] = {}
        for m in std:
            for sign, u, g in ((1, ui, i), (-1, uj, j)):
                mu = u * m
                if any(h.divides(mu) for h in gens):
                    continue
                eqs.setdefault(mu, [0] * len(cols))[pos[(g, m)]] += sign
        rows.extend(eqs.values())
    return len(cols) - dense_rank(rows)


def monomials(nvars: int, max_degree: int):
    return st.dictionaries(
        st.integers(0, nvars - 1), st.integers(1, max_degree), max_size=nvars
    ).map(Monomial).filter(lambda m: 0 < m.degree <= max_degree)


@st.composite
def monomial_ideals(draw, max_vars: int = 4, max_degree: int = 3, max_gens: int = 6):
    n = draw(st.integers(1, max_vars))
    gens = draw(st.lists(monomials(n, max_degree), max_size=max_gens))
    return minimalize(gens, VariableUniverse.indexed(n))


@st.composite
def equigenerated_ideals(draw, max_vars: int = 4, max_gens: int = 5):
    n = draw(st.integers(2, max_vars))
    d = draw(st.integers(1, 2))
    pool = all_monomials(n, d)
    gens = draw(st.lists(st.sampled_from(pool), min_size=1, max_size=max_gens, unique=True))
    return minimalize(gens, VariableUniverse.indexed(n))


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
