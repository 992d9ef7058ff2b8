"""The ``verify-all`` orchestrator: every dimension and structure claim as a named check."""

from __future__ import annotations

import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import determinantal, polarize, tangent, trees
from .monomials import Monomial, minimalize

QUICK_ND = ((2, 2), (3, 2), (2, 3))
FULL_ND = QUICK_ND + ((4, 2), (3, 3))
N7_SAMPLES = 100
FLAT_SAMPLES = 5

REPORT_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "required": ["command", "profile", "seed", "passed", "rows"],
    "additionalProperties": False,
    "properties": {
        "command": {"type": "string"},
        "profile": {"enum": ["quick", "full"]},
        "seed": {"type": "integer"},
        "passed": {"type": "boolean"},
        "rows": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "expected", "computed", "match", "seconds"],
                "additionalProperties": False,
                "properties": {
                    "name": {"type": "string"},
                    "expected": {},
                    "computed": {},
                    "match": {"type": "boolean"},
                    "seconds": {"type": "number", "minimum": 0},
                    "error": {"type": "string"},
                },
            },
        },
    },
}


@dataclass
class CheckRow:
    name: str
    expected: object
    computed: object
    match: bool
    seconds: float
    error: str | None = None

    def to_json(self) -> dict:
        out = {
            "name": self.name,
            "expected": self.expected,
            "computed": self.computed,
            "match": self.match,
            "seconds": round(self.seconds, 4),
        }
        if self.error is not None:
            out["error"] = self.error
        return out


@dataclass
class RunReport:
    command: str
    profile: str
    seed: int
    rows: list[CheckRow] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.match for r in self.rows)

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "profile": self.profile,
            "seed": self.seed,
            "passed": self.passed,
            "rows": [r.to_json() for r in self.rows],
        }

    def format(self) -> str:
        width = max((len(r.name) for r in self.rows), default=10)
        lines = []
        for r in self.rows:
            flag = "PASS" if r.match else "FAIL"
            detail = f"expected={r.expected} computed={r.computed}"
            if r.error:
                detail += f" error={r.error}"
            lines.append(f"{flag}  {r.name:<{width}}  {detail}  ({r.seconds:.2f}s)")
        lines.append(f"overall: {'PASS' if self.passed else 'FAIL'} ({len(self.rows)} checks)")
        return "\n".join(lines)


# Each check returns (expected, computed).  Expected values come from the
# closed-form formulas or from fixed literature values; computed values from
# the solvers.

def _box_smooth(n, d):
    return tangent.determinantal_component_dim(n, d), tangent.tangent_dimension(polarize.box_polarization(n, d))


def _std_variables_only(n, d):
    ideal = polarize.standard_polarization(n, d)
    return tangent.variable_deformation_dim(ideal), tangent.tangent_dimension(ideal)


def _std_three_extra(d):
    ideal = polarize.standard_polarization(3, d)
    return tangent.variable_deformation_dim(ideal) + 3, tangent.tangent_dimension(ideal)


def std_to_box_renaming(d: int) -> list[int]:
    """Variable map ``x_{1i} -> x_{1i}``, ``x_{2j} -> x_{2,d-j+1}`` on flat indices."""
    mapping = []
    for idx in range(2 * d):
        i, j = polarize.unflatten(idx, d)
        mapping.append(idx if i == 1 else polarize.flat_index(2, d - j + 1, d))
    return mapping


def _std_is_box(d):
    std = polarize.standard_polarization(2, d)
    box = polarize.box_polarization(2, d)
    renamed = std.rename(std_to_box_renaming(d))
    same = renamed.generators == box.generators
    dims_equal = tangent.tangent_dimension(std) == tangent.tangent_dimension(box)
    return [True, True], [same, dims_equal]


def _tree_sweep(trees_iter):
    total = matches = 0
    for tree in trees_iter:
        total += 1
        if tangent.tangent_dimension(trees.tree_ideal(tree).ideal) == trees.predicted_tangent_dim(tree):
            matches += 1
    return total, matches


def _tree_exhaustive(n):
    return _tree_sweep(trees.all_trees(n))


def _tree_single(tree):
    return trees.predicted_tangent_dim(tree), tangent.tangent_dimension(trees.tree_ideal(tree).ideal)


def _tree_sampled(n, count, seed):
    rng = random.Random(seed)
    return _tree_sweep(trees.random_tree(n, rng) for _ in range(count))


def worked_example_tree() -> trees.LabeledTree:
    return trees.LabeledTree(5, ((1, 2), (2, 3), (3, 4), (3, 5)))


WORKED_EXAMPLE_GENERATORS = (
    ((1, 1), (2, 1)), ((1, 1), (3, 2)), ((1, 1), (4, 3)), ((1, 1), (5, 4)), ((2, 2), (3, 2)),
    ((2, 2), (4, 3)), ((2, 2), (5, 4)), ((3, 3), (4, 3)), ((3, 4), (5, 4)), ((4, 3), (5, 4)),
)


def _tree_example():
    ti = trees.tree_ideal(worked_example_tree())
    printed = minimalize(
        (Monomial.from_indices(ti.variables[p] for p in pair) for pair in WORKED_EXAMPLE_GENERATORS),
        ti.ideal.universe,
    )
    return [True, 5], [printed.generators == ti.ideal.generators, trees.tree_index(ti.tree).index]


def _tree_index_values():
    return [15, 14], [trees.tree_index(trees.spider()).index, trees.tree_index(trees.LabeledTree.path(7)).index]


def _initial_ideal(n, d):
    return True, determinantal.verify_initial_ideal(n, d, d + 3).ok


def _flat(d, seed):
    params = [(0, 0, 0)] + determinantal.random_parameters(FLAT_SAMPLES, seed)
    results = [determinantal.verify_flat_family(d, t, 6).ok for t in params]
    return len(params), sum(results)


def _polarization(kind, n, d):
    build = polarize.box_polarization if kind == "box" else polarize.standard_polarization
    spec = polarize.DepolarizationSpec.standard(n, d)
    return True, polarize.is_polarization(build(n, d), polarize.power_ideal(n, d), spec).ok


def _tree_polarizations(max_n):
    total = ok = 0
    for n in range(3, max_n + 1):
        target = polarize.sqfree_power_ideal(n - 1, 2)
        for tree in trees.all_trees(n):
            ti = trees.tree_ideal(tree)
            total += 1
            ok += polarize.is_polarization(ti.ideal, target, ti.spec).ok
    return total, ok


def _swap_copy(ideal, old, new):
    return minimalize([new if g == old else g for g in ideal.generators], ideal.universe)


def mutated_polarizations():
    """Single-copy mutants that are not polarizations of ``m^2``.

    * ``P_32`` with ``x_{31} x_{32}`` replaced by ``x_{31} x_{22}``: the
      depolarization is no longer one-to-one.
    * ``B_32`` with ``x_{11} x_{22}`` replaced by ``x_{12} x_{22}``: it still
      depolarizes one-to-one, but the K-polynomial changes.
    """
    f = polarize.flat_index
    m = lambda *pairs: Monomial.from_indices(f(i, j, 2) for i, j in pairs)  # noqa: E731
    std = _swap_copy(polarize.standard_polarization(3, 2), m((3, 1), (3, 2)), m((3, 1), (2, 2)))
    box = _swap_copy(polarize.box_polarization(3, 2), m((1, 1), (2, 2)), m((1, 2), (2, 2)))
    return std, box


def _mutation_rejected():
    spec = polarize.DepolarizationSpec.standard(3, 2)
    target = polarize.power_ideal(3, 2)
    return [False, False], [polarize.is_polarization(m, target, spec).ok for m in mutated_polarizations()]


def _star_minimal(n):
    dims = [trees.predicted_tangent_dim(t) for t in trees.all_trees(n)]
    return min(dims), trees.predicted_tangent_dim(trees.LabeledTree.star(n))


def _path_below_spider():
    path = trees.predicted_tangent_dim(trees.LabeledTree.path(7))
    spider = trees.predicted_tangent_dim(trees.spider())
    return True, path < spider


def build_checks(profile: str, seed: int, exhaustive_7: bool = False) -> dict[str, tuple[Callable, tuple]]:
    """Map check name -> (function, args).  Functions are module-level so they pickle for workers."""
    full = profile == "full"
    nd = FULL_ND if full else QUICK_ND
    checks: dict[str, tuple[Callable, tuple]] = {}
    for n, d in nd:
        checks[f"box-smoothness n={n} d={d}"] = (_box_smooth, (n, d))
    if full:
        checks["standard-variables-only n=4 d=2"] = (_std_variables_only, (4, 2))
    for d in (2, 3) if full else (2,):
        checks[f"standard-three-extra n=3 d={d}"] = (_std_three_extra, (d,))
    for d in (2, 3, 4) if full else (2, 3):
        checks[f"standard-equals-box n=2 d={d}"] = (_std_is_box, (d,))
    for n in (3, 4, 5, 6) if full else (3, 4, 5):
        checks[f"tree-dimension n'={n} exhaustive"] = (_tree_exhaustive, (n,))
    if full:
        checks["tree-dimension n'=7 path"] = (_tree_single, (trees.LabeledTree.path(7),))
        checks["tree-dimension n'=7 spider"] = (_tree_single, (trees.spider(),))
        checks[f"tree-dimension n'=7 sampled x{N7_SAMPLES}"] = (_tree_sampled, (7, N7_SAMPLES, seed))
    if exhaustive_7:
        checks["tree-dimension n'=7 exhaustive"] = (_tree_exhaustive, (7,))
    checks["tree-example generators and index"] = (_tree_example, ())
    checks["tree-index spider and path n'=7"] = (_tree_index_values, ())
    for n, d in ((2, 2), (3, 2), (2, 3), (3, 3)) if full else QUICK_ND:
        checks[f"initial-ideal n={n} d={d}"] = (_initial_ideal, (n, d))
    for d in (2, 3) if full else (2,):
        checks[f"flat-family d={d}"] = (_flat, (d, seed))
    pol_nd = [(n, d) for n in (2, 3) for d in (2, 3)] if full else list(QUICK_ND)
    for n, d in pol_nd:
        checks[f"polarization box n={n} d={d}"] = (_polarization, ("box", n, d))
        checks[f"polarization standard n={n} d={d}"] = (_polarization, ("standard", n, d))
    checks["polarization trees n'<=5"] = (_tree_polarizations, (5,))
    checks["polarization mutants rejected"] = (_mutation_rejected, ())
    for n in (5, 6) if full else (5,):
        checks[f"extremality star minimal n'={n}"] = (_star_minimal, (n,))
    checks["extremality path below spider n'=7"] = (_path_below_spider, ())
    return checks


def _normalize(value):
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (list, tuple)):
        return [_normalize(v) for v in value]
    return value


def run_check(name: str, fn: Callable, args: tuple) -> CheckRow:
    start = time.perf_counter()
    try:
        expected, computed = fn(*args)
    except Exception as exc:  # noqa: BLE001 - a failing check must not stop the run
        return CheckRow(name, None, None, False, time.perf_counter() - start, f"{type(exc).__name__}: {exc}")
    expected, computed = _normalize(expected), _normalize(computed)
    return CheckRow(name, expected, computed, expected == computed, time.perf_counter() - start)


def default_jobs() -> int:
    return int(os.environ.get("POLHILB_JOBS", "1"))


def verify_all(profile: str = "quick", seed: int = 0, jobs: int | None = None,
               exhaustive_7: bool = False, command: str = "verify-all") -> RunReport:
    if profile not in ("quick", "full"):
        raise ValueError(f"unknown profile {profile!r}")
    jobs = default_jobs() if jobs is None else jobs
    checks = build_checks(profile, seed, exhaustive_7)
    names = sorted(checks)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(run_check, name, *checks[name]) for name in names]
            rows = [f.result() for f in futures]
    else:
        rows = [run_check(name, *checks[name]) for name in names]
    return RunReport(command, profile, seed, rows)
