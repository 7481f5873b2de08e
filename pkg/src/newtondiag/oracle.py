"""Brute-force enumeration engines.

Everything here works at the diagram level: sign assignments on small
lattice regions are enumerated exhaustively and the claimed inequalities are
checked on every one.  Streams are deterministic (base-3 counter order over
lexicographically sorted points, digit order 0, P, N) and parallel runs
partition on a prefix of the digits, merging with commutative aggregates so
results do not depend on the worker count.
"""

from __future__ import annotations

import itertools
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .diagram import (
    SOURCE,
    NewtonDiagram,
    candidate_points,
    faces,
    has_unique_source_at_origin,
    node_kind,
    raw_nodes,
    top_horizontal_faces,
    view_pairs,
    view_support,
)
from .errors import BudgetExceeded, TheoremContradiction
from .faces2d import (
    SimpleDiagram,
    SymmetricDiagram,
    complete_simple_set,
    face_node_count,
    fill_with_trace,
    has_facial_node,
    is_simple,
    row_accounting_bound,
    row_node_lower_bound,
    simplex_points,
    symmetric_view_deficit,
)

BUDGET = 10 ** 8
DIGITS = (0, 1, -1)


def lattice_points(n: int, d: int) -> List[Tuple[int, ...]]:
    """All alpha >= 0 in Z^n with |alpha| <= d - 1, sorted lexicographically."""
    return sorted(a for a in itertools.product(range(d), repeat=n) if sum(a) <= d - 1)


def assignment_count(n: int, d: int) -> int:
    return 3 ** len(lattice_points(n, d))


def diagram_bound(n: int, d: int) -> Optional[int]:
    """Lower bound on #(D) for unique-source diagrams of size d (n >= 3)."""
    if n == 3:
        return 2 * d + 2
    if n >= 4:
        return (n - 1) * d + 2
    return None


def check_budget(n: int, d: int, budget: int = BUDGET) -> int:
    k = len(lattice_points(n, d))
    # the origin is forced to P once pruning runs
    estimate = 3 ** max(k - 1, 0)
    if estimate > budget:
        raise BudgetExceeded(
            f"search (n={n}, d={d}) has 3^{k} = {3 ** k} assignments "
            f"(3^{k - 1} = {estimate} after fixing the origin) > budget {budget}",
            estimate,
            budget,
        )
    return estimate


def one_point_per_degree(support, size: int) -> bool:
    degrees = sorted(sum(a) for a in support)
    return degrees == list(range(size))


# -- valid diagram enumeration ----------------------------------------------------

def _leaf_ok(support, outer) -> bool:
    # points just above the region: their downs are all assigned now
    for a in outer:
        if node_kind(support, a) == SOURCE:
            return False
    return True


def _enumerate_pruned(points, prefix) -> Iterator[Dict]:
    n = len(points[0])
    origin = (0,) * n
    d = max(sum(a) for a in points) + 1
    outer = [a for a in candidate_points(points) if sum(a) == d]
    support: Dict = {}
    depth_limit = len(points)

    def rec(i):
        if i == depth_limit:
            if _leaf_ok(support, outer):
                yield dict(support)
            return
        alpha = points[i]
        choices = (prefix[i],) if i < len(prefix) else DIGITS
        for v in choices:
            if v:
                support[alpha] = v
            kind = node_kind(support, alpha)
            ok = (kind == SOURCE) if alpha == origin else (kind != SOURCE)
            if ok:
                yield from rec(i + 1)
            if v:
                del support[alpha]

    yield from rec(0)


def _enumerate_unpruned(points, prefix) -> Iterator[Dict]:
    n = len(points[0])
    free = len(points) - len(prefix)
    for tail in itertools.product(DIGITS, repeat=free):
        digits = tuple(prefix) + tail
        support = {a: v for a, v in zip(points, digits) if v}
        if support and has_unique_source_at_origin(support, n):
            yield support


def enumerate_valid_supports(n: int, d: int, prune: bool = True, prefix: Sequence[int] = (),
                             budget: int = BUDGET) -> Iterator[Dict]:
    """Raw supports of unique-source diagrams of size <= d, in counter order."""
    check_budget(n, d, budget)
    points = lattice_points(n, d)
    gen = _enumerate_pruned if prune else _enumerate_unpruned
    yield from gen(points, tuple(prefix))


def enumerate_valid_diagrams(n: int, d: int, prune: bool = True, budget: int = BUDGET) -> Iterator[NewtonDiagram]:
    """Diagrams of dimension n, size <= d, with a unique source at the origin."""
    for sup in enumerate_valid_supports(n, d, prune, budget=budget):
        yield NewtonDiagram._raw(n, sup)


def diagram_size(support) -> int:
    # unique source at the origin forces a = 0
    return max(sum(a) for a in support) + 1


# -- bound verification --------------------------------------------------------------

@dataclass
class SizeStats:
    count: int = 0
    min_nodes: Optional[int] = None
    minimizers: List[Tuple] = field(default_factory=list)

    def add(self, support, nodes: int) -> None:
        self.count += 1
        key = tuple(sorted(support.items()))
        if self.min_nodes is None or nodes < self.min_nodes:
            self.min_nodes = nodes
            self.minimizers = [key]
        elif nodes == self.min_nodes:
            self.minimizers.append(key)

    def merge(self, other: "SizeStats") -> None:
        self.count += other.count
        if other.min_nodes is None:
            return
        if self.min_nodes is None or other.min_nodes < self.min_nodes:
            self.min_nodes = other.min_nodes
            self.minimizers = list(other.minimizers)
        elif other.min_nodes == self.min_nodes:
            self.minimizers.extend(other.minimizers)


def _search_chunk(args) -> Dict[int, SizeStats]:
    n, d, prefix, prune = args
    stats: Dict[int, SizeStats] = {}
    for sup in enumerate_valid_supports(n, d, prune, prefix):
        size = diagram_size(sup)
        stats.setdefault(size, SizeStats()).add(sup, len(raw_nodes(sup)))
    return stats


def partition_prefixes(n: int, d: int, workers: int) -> List[Tuple[int, ...]]:
    if workers <= 1:
        return [()]
    npts = len(lattice_points(n, d))
    depth = min(npts, math.ceil(math.log(workers, 3)))
    return list(itertools.product(DIGITS, repeat=depth))


def collect_stats(n: int, d: int, workers: int = 1, prune: bool = True,
                  budget: int = BUDGET) -> Dict[int, SizeStats]:
    check_budget(n, d, budget)
    jobs = [(n, d, p, prune) for p in partition_prefixes(n, d, workers)]
    if workers <= 1:
        parts = [_search_chunk(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_search_chunk, jobs))
    merged: Dict[int, SizeStats] = {}
    for part in parts:
        for size, st in part.items():
            merged.setdefault(size, SizeStats()).merge(st)
    for st in merged.values():
        st.minimizers.sort()
    return merged


@dataclass
class SizeReport:
    size: int
    diagrams: int
    min_node_count: int
    bound: Optional[int]
    minimizers: int
    one_point_per_degree: int

    @property
    def non_whitney(self) -> int:
        return self.minimizers - self.one_point_per_degree

    def to_dict(self):
        return {
            "size": self.size,
            "diagrams": self.diagrams,
            "min_node_count": self.min_node_count,
            "bound": self.bound,
            "minimizers": self.minimizers,
            "one_point_per_degree": self.one_point_per_degree,
            "non_whitney_minimizers": self.non_whitney,
        }


@dataclass
class BoundReport:
    n: int
    d: int
    sizes: Dict[int, SizeReport]
    minimizer_supports: List[Tuple]

    @property
    def top(self) -> SizeReport:
        return self.sizes[self.d]

    @property
    def min_node_count(self) -> int:
        return self.top.min_node_count

    @property
    def bound(self) -> Optional[int]:
        return self.top.bound

    def minimizer_diagrams(self) -> List[NewtonDiagram]:
        return [NewtonDiagram._raw(self.n, dict(s)) for s in self.minimizer_supports]

    def to_dict(self):
        return {
            "n": self.n,
            "d": self.d,
            "min_node_count": self.min_node_count,
            "bound": self.bound,
            "by_size": [self.sizes[s].to_dict() for s in sorted(self.sizes)],
        }


def verify_bound(n: int, d: int, workers: int = 1, prune: bool = True, budget: int = BUDGET) -> BoundReport:
    """Exhaustive check of #(D) >= bound, keyed by the actual size of D.

    For n >= 4 every minimizer of the top size must have one point per
    degree; a failure of either claim raises TheoremContradiction.
    """
    stats = collect_stats(n, d, workers, prune, budget)
    sizes = {}
    for size, st in sorted(stats.items()):
        bound = diagram_bound(n, size)
        if bound is not None and st.min_nodes < bound:
            raise TheoremContradiction(
                f"n={n}, size={size}: found #(D) = {st.min_nodes} < {bound}",
                NewtonDiagram._raw(n, dict(st.minimizers[0])).dump(),
            )
        opd = sum(1 for m in st.minimizers if one_point_per_degree(dict(m), size))
        sizes[size] = SizeReport(size, st.count, st.min_nodes, bound, len(st.minimizers), opd)
        if n >= 4 and opd != len(st.minimizers):
            bad = next(m for m in st.minimizers if not one_point_per_degree(dict(m), size))
            raise TheoremContradiction(
                f"n={n}, size={size}: a minimizer is not one-point-per-degree",
                NewtonDiagram._raw(n, dict(bad)).dump(),
            )
    if d not in sizes:
        raise AssertionError(f"no valid diagram of size {d}")
    return BoundReport(n, d, sizes, stats[d].minimizers)


# -- hidden-node audit --------------------------------------------------------------

@dataclass
class AuditReport:
    n: int
    d: int
    diagrams: int = 0
    strengthened: int = 0
    min_slack: Optional[int] = None

    def to_dict(self):
        return {"n": self.n, "d": self.d, "diagrams": self.diagrams,
                "strengthened_cases": self.strengthened, "min_slack": self.min_slack}


def max_view_deficit(D: NewtonDiagram) -> int:
    total = D.node_count()
    best = None
    for k, m in view_pairs(D.dimension):
        vs, _ = view_support(D.support, D.dimension, k, m)
        deficit = total - len(raw_nodes(vs))
        best = deficit if best is None else max(best, deficit)
    return best


def needs_strict_deficit(D: NewtonDiagram) -> bool:
    """Some complete simple set has a facial node, or a top horizontal face
    has more than three nodes."""
    for k, m in view_pairs(D.dimension):
        if has_facial_node(complete_simple_set(D, k, m)):
            return True
    return any(f.node_count > 3 for f in top_horizontal_faces(D))


def hidden_node_audit(n: int, d: int, budget: int = BUDGET) -> AuditReport:
    """Every valid diagram of size s has a view hiding >= s nodes, and >= s + 1
    when :func:`needs_strict_deficit` holds."""
    if n < 4:
        raise ValueError("the hidden-node audit applies to n >= 4")
    report = AuditReport(n, d)
    for D in enumerate_valid_diagrams(n, d, budget=budget):
        size = D.size
        best = max_view_deficit(D)
        need = size
        if needs_strict_deficit(D):
            need += 1
            report.strengthened += 1
        if best < need:
            raise TheoremContradiction(f"best view hides {best} < {need} nodes", D.dump())
        report.diagrams += 1
        slack = best - need
        report.min_slack = slack if report.min_slack is None else min(report.min_slack, slack)
    return report


# -- simple diagrams ------------------------------------------------------------------

def simple_region(height: int, width: int) -> List[Tuple[int, int]]:
    """Rows 0..height-1, positions 0..width-1 of each row."""
    return [(i, j + width - 1 - i) for j in range(height) for i in range(width)]


def enumerate_simple_diagrams(max_height: int = 3, max_width: int = 3,
                              budget: int = 3 ** 9) -> Iterator[SimpleDiagram]:
    region = simple_region(max_height, max_width)
    if 3 ** len(region) > budget:
        raise BudgetExceeded(f"3^{len(region)} simple-diagram assignments > budget {budget}",
                             3 ** len(region), budget)
    for digits in itertools.product(DIGITS, repeat=len(region)):
        sup = {p: v for p, v in zip(region, digits) if v}
        if sup and is_simple(sup):
            yield SimpleDiagram(NewtonDiagram._raw(2, sup), check=False)


@dataclass
class LemmaReport:
    diagrams: int = 0
    failures: List = field(default_factory=list)
    fill_failures: List = field(default_factory=list)
    min_slack: Optional[int] = None

    @property
    def ok(self) -> bool:
        return not self.failures and not self.fill_failures

    def to_dict(self):
        return {"diagrams": self.diagrams, "failures": self.failures,
                "fill_failures": self.fill_failures, "min_slack": self.min_slack}


def check_simple(F: SimpleDiagram, report: LemmaReport) -> None:
    count = face_node_count(F)
    report.diagrams += 1
    slack = count.total - (count.height + 1)
    report.min_slack = slack if report.min_slack is None else min(report.min_slack, slack)
    if slack < 0:
        report.failures.append(F.grid())
    try:
        G, _ = fill_with_trace(F)
        after = face_node_count(G)
        if after.total > count.total or G.height != F.height:
            raise AssertionError("fill increased the count")
        if row_node_lower_bound(G) > after.total or row_accounting_bound(G) < G.height + 1:
            raise AssertionError("row accounting inconsistent")
    except AssertionError as exc:
        report.fill_failures.append({"grid": F.grid(), "error": str(exc)})


def lemma_check(max_height: int = 3, max_width: int = 3, extra: Sequence[SimpleDiagram] = ()) -> LemmaReport:
    report = LemmaReport()
    for F in enumerate_simple_diagrams(max_height, max_width):
        check_simple(F, report)
    for F in extra:
        check_simple(F, report)
    return report


# -- symmetric diagrams -------------------------------------------------------------

@dataclass
class SymmetricReport:
    degree: int
    diagrams: int = 0
    single_point: int = 0
    min_deficit: Optional[int] = None

    def to_dict(self):
        return {"degree": self.degree, "diagrams": self.diagrams,
                "single_point": self.single_point, "min_deficit_when_more_than_3": self.min_deficit}


def enumerate_symmetric(degree: int) -> Iterator[SymmetricDiagram]:
    pts = simplex_points(3, degree)
    for digits in itertools.product(DIGITS, repeat=len(pts)):
        vals = {p: v for p, v in zip(pts, digits) if v}
        if vals:
            yield SymmetricDiagram(degree, vals)


def symmetric_check(degree: int) -> SymmetricReport:
    report = SymmetricReport(degree)
    for D in enumerate_symmetric(degree):
        verdict = symmetric_view_deficit(D)
        report.diagrams += 1
        if verdict.node_count == 3:
            report.single_point += 1
        else:
            report.min_deficit = verdict.deficit if report.min_deficit is None else min(report.min_deficit, verdict.deficit)
    return report


# -- random generators ------------------------------------------------------------------

def random_diagram(n: int, size: int, rng: random.Random, zero_weight: int = 2) -> NewtonDiagram:
    """Random signs on the simplex of the given size; may be empty."""
    choices = [0] * zero_weight + [1, -1]
    sup = {a: v for a in lattice_points(n, size) if (v := rng.choice(choices))}
    return NewtonDiagram._raw(n, sup)


def random_unique_source_diagram(n: int, size: int, rng: random.Random, tries: int = 100000) -> NewtonDiagram:
    """Rejection sample a unique-source diagram (origin forced to P)."""
    for _ in range(tries):
        D = random_diagram(n, size, rng, zero_weight=rng.randint(0, 3))
        sup = dict(D.support)
        sup[(0,) * n] = 1
        if has_unique_source_at_origin(sup, n):
            return NewtonDiagram._raw(n, sup)
    raise RuntimeError("rejection sampling failed")


def random_simple_diagram(rng: random.Random, max_height: int = 5, max_width: int = 5) -> SimpleDiagram:
    """Random simple diagram built row by row.

    Above the lowest row only points with a nonzero point below may be set,
    so no bottom node appears outside the lowest row.
    """
    while True:
        height = rng.randint(1, max_height)
        base = rng.randint(max_width, max_width + 2)
        sup = {}
        for a in range(max_width):
            v = rng.choice((0, 1, -1))
            if v:
                sup[(a, base - a)] = v
        if not sup:
            continue
        for t in range(base + 1, base + height):
            below = [a for (a, b) in sup if a + b == t - 1]
            if not below:
                break
            allowed = range(min(below), max(below) + 2)
            for a in allowed:
                if sup.get((a - 1, t - a), 0) or sup.get((a, t - a - 1), 0):
                    v = rng.choice((0, 1, 1, -1, -1))
                    if v:
                        sup[(a, t - a)] = v
        if is_simple(sup):
            return SimpleDiagram(NewtonDiagram._raw(2, sup), check=False)
