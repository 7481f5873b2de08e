"""Two-dimensional pieces: simple diagrams, the 2f+e+c count, filling,
complete simple sets along an edge, and symmetric 2-D diagrams.

In a 2-D diagram a *row* is a set of points of equal degree |alpha|.  Row t
is indexed by the first coordinate, so ``(a, t - a)`` sits at position
``a``.  The two points above ``(a, b)`` are ``(a + 1, b)`` and ``(a, b + 1)``,
i.e. positions ``a + 1`` and ``a`` of the next row.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from .diagram import (
    BOTTOM_CORNER,
    HORIZONTAL_EDGE,
    SOURCE,
    TOP_CORNER,
    VERTICAL_EDGE,
    VERTICAL_FACIAL,
    NewtonDiagram,
    _components,
    geometry_tag,
    has_unique_source_at_origin,
    raw_nodes,
    view_pairs,
    view_support,
)
from .errors import TheoremContradiction
from .polynomial import Exponent, Polynomial, term_count


class NotSimpleError(ValueError):
    pass


class NotFilledError(ValueError):
    pass


# -- simple diagrams -------------------------------------------------------------

def rows(support) -> Dict[int, Dict[int, int]]:
    """degree -> {position: sign} for a 2-D support."""
    out: Dict[int, Dict[int, int]] = {}
    for (a, b), v in support.items():
        out.setdefault(a + b, {})[a] = v
    return out


def bottom_nodes(support) -> List[Exponent]:
    return sorted(a for a in support if geometry_tag(support, a) == BOTTOM_CORNER)


def is_simple(support) -> bool:
    if not support:
        return False
    low = min(a + b for a, b in support)
    return all(a + b == low for a, b in bottom_nodes(support))


@dataclass(frozen=True)
class FaceNodeCount:
    f: int
    e: int
    c: int
    height: int

    @property
    def total(self) -> int:
        """2f + e + c."""
        return 2 * self.f + self.e + self.c

    def satisfies_bound(self) -> bool:
        return self.total >= self.height + 1


class SimpleDiagram:
    """A 2-D diagram whose bottom nodes all lie in its lowest nonzero row."""

    __slots__ = ("diagram",)

    def __init__(self, diagram: NewtonDiagram, check: bool = True):
        if diagram.dimension != 2:
            raise ValueError("simple diagrams are 2-dimensional")
        if check and not is_simple(diagram.support):
            raise NotSimpleError(f"bottom nodes outside the lowest row: {bottom_nodes(diagram.support)}")
        self.diagram = diagram

    @classmethod
    def from_rows(cls, grid: Sequence[str], base: int = 0, offset: int = 0) -> "SimpleDiagram":
        """Build from text rows, lowest row first.

        Row j is read left to right as positions ``offset + i`` of degree
        ``base + j``; characters are P, N or '.'.
        """
        sup = {}
        for j, line in enumerate(grid):
            for i, ch in enumerate(line.replace(" ", "")):
                if ch in "PN":
                    a = offset + i
                    sup[(a, base + j - a)] = 1 if ch == "P" else -1
        return cls(NewtonDiagram(2, sup))

    @property
    def support(self):
        return self.diagram.support

    @property
    def base_row(self) -> int:
        return min(a + b for a, b in self.support)

    @property
    def top_row(self) -> int:
        return max(a + b for a, b in self.support)

    @property
    def height(self) -> int:
        return len(rows(self.support))

    def __eq__(self, other):
        return isinstance(other, SimpleDiagram) and self.diagram == other.diagram

    def __repr__(self):
        return f"SimpleDiagram(height={self.height}, {self.diagram!r})"

    def grid(self) -> List[str]:
        """Rows bottom to top over the common position range."""
        sup = self.support
        lo = min(a for a, _ in sup)
        hi = max(a for a, _ in sup) + 1
        out = []
        for t in range(self.base_row, self.top_row + 1):
            out.append("".join({1: "P", -1: "N"}.get(sup.get((a, t - a), 0), ".") for a in range(lo, hi + 1)))
        return out

    def dump(self) -> dict:
        d = self.diagram.dump()
        d["height"] = self.height
        return d


def _count(support, height) -> FaceNodeCount:
    f = e = c = 0
    for a in raw_nodes(support):
        tag = geometry_tag(support, a)
        if tag == BOTTOM_CORNER:
            continue
        if tag == VERTICAL_FACIAL:
            f += 1
        elif tag in (VERTICAL_EDGE, HORIZONTAL_EDGE):
            e += 1
        elif tag == TOP_CORNER:
            c += 1
        else:
            raise AssertionError(f"unexpected 2-D node geometry {tag} at {a}")
    return FaceNodeCount(f, e, c, height)


def face_node_count(F: SimpleDiagram) -> FaceNodeCount:
    """Facial, edge and corner nodes of F, bottom nodes excluded."""
    return _count(F.support, F.height)


# -- filling ------------------------------------------------------------------

def is_filled(support) -> bool:
    """Lowest row connected, and below the top row every nonzero point has
    two nonzero points above it."""
    r = rows(support)
    low, top = min(r), max(r)
    pos = sorted(r[low])
    if pos[-1] - pos[0] + 1 != len(pos):
        return False
    for (a, b) in support:
        if a + b < top and not (support.get((a + 1, b), 0) and support.get((a, b + 1), 0)):
            return False
    return True


def _total(support) -> int:
    return _count(support, 0).total


def _alternating(length: int, first: int) -> List[int]:
    return [first if i % 2 == 0 else -first for i in range(length)]


@dataclass
class FillStep:
    row: int
    positions: Tuple[int, ...]
    signs: Tuple[int, ...]
    before: int
    after: int


def _try_fill(sup, row, positions, first) -> Tuple[Dict, int]:
    trial = dict(sup)
    for a, v in zip(positions, _alternating(len(positions), first)):
        trial[(a, row - a)] = v
    return trial, _total(trial)


def _best(sup, row, positions):
    """Better of the two alternating fills of ``positions``; P first on ties."""
    options = [_try_fill(sup, row, positions, s) for s in (1, -1)]
    if options[1][1] < options[0][1]:
        return options[1], -1
    return options[0], 1


def fill_with_trace(F: SimpleDiagram) -> Tuple[SimpleDiagram, List[FillStep]]:
    """Fill F row by row, never increasing 2f + e + c.

    The lowest row's enclosed zero runs get alternating signs.  In each
    higher row the zeros above the (already contiguous) row below are filled
    one at a time: a zero with nonzero row-neighbours on both sides takes a
    single sign; a zero with one nonzero neighbour first tries a single sign
    and otherwise an alternating run extended away from that neighbour.  Each
    step keeps whichever sign choice gives the smaller count and asserts the
    count did not grow.
    """
    sup = dict(F.support)
    height = F.height
    low = F.base_row
    top = low + height - 1
    steps: List[FillStep] = []

    def commit(row, positions, first, trial, value, before):
        if value > before:
            raise AssertionError(
                f"fill step at row {row} positions {positions} raised 2f+e+c {before} -> {value}: "
                f"{SimpleDiagram(NewtonDiagram(2, sup), check=False).grid()}"
            )
        steps.append(FillStep(row, tuple(positions), tuple(_alternating(len(positions), first)), before, value))
        return trial

    # lowest row: enclosed gaps
    pos = sorted(rows(sup)[low])
    for left, right in zip(pos, pos[1:]):
        if right - left > 1:
            gap = list(range(left + 1, right))
            before = _total(sup)
            (trial, value), first = _best(sup, low, gap)
            sup = commit(low, gap, first, trial, value, before)

    for t in range(low + 1, top + 1):
        while True:
            below = sorted(a for (a, b) in sup if a + b == t - 1)
            lo, hi = below[0], below[-1] + 1
            zeros = [a for a in range(lo, hi + 1) if not sup.get((a, t - a), 0)]
            if not zeros:
                break
            sup = _fill_one(sup, t, lo, hi, zeros, commit)

    out = SimpleDiagram(NewtonDiagram(2, sup), check=False)
    assert is_filled(out.support), out.grid()
    return out, steps


def _fill_one(sup, t, lo, hi, zeros, commit):
    def nz(a):
        return bool(sup.get((a, t - a), 0))

    before = _total(sup)
    candidates = [z for z in zeros if nz(z - 1) or nz(z + 1)]
    # zeros enclosed on both sides first, then one-sided ones
    candidates.sort(key=lambda z: (not (nz(z - 1) and nz(z + 1)), z))
    for z in candidates:
        (trial, value), first = _best(sup, t, [z])
        if value <= before:
            return commit(t, [z], first, trial, value, before)
        if nz(z - 1) and nz(z + 1):
            continue
        step = 1 if nz(z - 1) else -1
        run = [z]
        nxt = z + step
        while lo <= nxt <= hi and not nz(nxt):
            run.append(nxt)
            positions = sorted(run)
            (trial, value), first = _best(sup, t, positions)
            if value <= before:
                return commit(t, positions, first, trial, value, before)
            nxt += step
    # no non-increasing move exists among the candidates
    z = candidates[0]
    (trial, value), first = _best(sup, t, [z])
    return commit(t, [z], first, trial, value, before)


def fill(F: SimpleDiagram) -> SimpleDiagram:
    return fill_with_trace(F)[0]


def sign_changes_per_row(F: SimpleDiagram) -> List[int]:
    """s_j for each row of a filled diagram, bottom to top."""
    sup = F.support
    if not is_filled(sup):
        raise NotFilledError("sign changes are defined on filled diagrams")
    out = []
    for t, row in sorted(rows(sup).items()):
        vals = [row[a] for a in sorted(row)]
        out.append(sum(1 for x, y in zip(vals, vals[1:]) if x != y))
    return out


def row_accounting_bound(F: SimpleDiagram) -> int:
    """l_d + 1 - s_d + |s_d - s_1| for a filled diagram; always >= height + 1.

    Not a lower bound for 2f + e + c: sign changes can vanish between rows
    without any node (rows PNP under PPPP).  See :func:`row_node_lower_bound`.
    """
    s = sign_changes_per_row(F)
    r = rows(F.support)
    top_len = len(r[max(r)])
    return top_len + 1 - s[-1] + abs(s[-1] - s[0])


def row_node_lower_bound(F: SimpleDiagram) -> int:
    """l_d + 1 - s_d + max(0, s_d - s_1): top-row nodes plus the nodes needed
    to create new sign changes.  Lower-bounds 2f + e + c and is >= height + 1."""
    s = sign_changes_per_row(F)
    r = rows(F.support)
    top_len = len(r[max(r)])
    return top_len + 1 - s[-1] + max(0, s[-1] - s[0])


# -- complete simple sets -------------------------------------------------------

@dataclass(frozen=True)
class SimpleFace:
    """One member F_j of a complete simple set, with its place in D."""

    simple: SimpleDiagram
    edge: Tuple[int, int]
    fixed: Tuple[int, ...]  # the other coordinates, in axis order
    start_degree: int  # degree in D of the lowest row

    @property
    def height(self) -> int:
        return self.simple.height

    def lift(self, point: Tuple[int, int]) -> Exponent:
        """Position in D of a 2-D point of the face."""
        k, m = self.edge
        n = len(self.fixed) + 2
        out, it = [], iter(self.fixed)
        for x in range(1, n + 1):
            out.append(point[0] if x == k else point[1] if x == m else next(it))
        return tuple(out)


def complete_simple_set(D: NewtonDiagram, k: int, m: int) -> List[SimpleFace]:
    """A complete set of simple diagrams for the edge (x_k, x_m).

    Start with the face through the origin; each next face starts in the
    row just above the previous face's top, at the nonzero point with the
    smallest degree in the remaining variables (lexicographically smallest
    among ties), and keeps the connected part of its plane from that row up.
    """
    n = D.dimension
    if not (1 <= k <= n and 1 <= m <= n) or k == m:
        raise ValueError(f"invalid edge ({k}, {m}) for dimension {n}")
    if not has_unique_source_at_origin(D.support, n):
        raise ValueError("complete simple sets need a unique source at the origin")
    ki, mi = k - 1, m - 1
    others = [x for x in range(n) if x not in (ki, mi)]
    sup = D.support
    top = D.top_degree
    out: List[SimpleFace] = []
    start = (0,) * n
    row = 0
    while row <= top:
        fixed = tuple(start[x] for x in others)
        plane = {
            (b[ki], b[mi]): v
            for b, v in sup.items()
            if sum(b) >= row and tuple(b[x] for x in others) == fixed
        }
        steps = [(1, 0), (-1, 0), (0, 1), (0, -1)]
        comp = next(c for c in _components(set(plane), steps) if (start[ki], start[mi]) in c)
        face_sup = {p: plane[p] for p in comp}
        simple = SimpleDiagram(NewtonDiagram(2, face_sup), check=False)
        out.append(SimpleFace(simple, (k, m), fixed, row))
        row = row + simple.top_row - simple.base_row + 1
        if row > top:
            break
        level = [b for b in sup if sum(b) == row]
        if not level:
            raise AssertionError(f"row {row} of a unique-source diagram is empty")
        start = min(level, key=lambda b: (sum(b[x] for x in others), b))
    return out


def has_facial_node(faces_: Sequence[SimpleFace]) -> bool:
    return any(face_node_count(F.simple).f > 0 for F in faces_)


# -- symmetric diagrams ---------------------------------------------------------

def simplex_points(dimension: int, degree: int) -> List[Exponent]:
    """H_d: nonnegative points of the given dimension summing to degree."""
    if dimension == 1:
        return [(degree,)]
    out = []
    for first in range(degree, -1, -1):
        for rest in simplex_points(dimension - 1, degree - first):
            out.append((first,) + rest)
    return sorted(out)


def symmetric_node(values, alpha: Exponent) -> bool:
    """Some down is nonzero, and the downs do not carry both P and N."""
    seen = set()
    for i in range(len(alpha)):
        v = values.get(alpha[:i] + (alpha[i] - 1,) + alpha[i + 1:], 0)
        if v:
            seen.add(v)
    return len(seen) == 1


class SymmetricDiagram:
    """A sign function on H_d (2-D symmetric for dimension 3, a row for 2)."""

    __slots__ = ("dimension", "degree", "values")

    def __init__(self, degree: int, values, dimension: int = 3):
        self.dimension = dimension
        self.degree = degree
        clean = {}
        for a, v in values.items():
            a = tuple(a)
            if len(a) != dimension or sum(a) != degree or min(a) < 0:
                raise ValueError(f"{a} is not in H_{degree}")
            v = {"P": 1, "N": -1}.get(v, v)
            if v:
                clean[a] = 1 if v > 0 else -1
        self.values = clean

    def __repr__(self):
        return f"SymmetricDiagram(degree={self.degree}, {self.values})"

    def nodes(self) -> List[Exponent]:
        return [a for a in simplex_points(self.dimension, self.degree + 1) if symmetric_node(self.values, a)]

    def node_count(self) -> int:
        return len(self.nodes())

    def view(self, k: int, m: int) -> "SymmetricDiagram":
        if not (1 <= k <= self.dimension and 1 <= m <= self.dimension) or k == m:
            raise ValueError(f"invalid axis pair ({k}, {m})")
        sup, _ = view_support(self.values, self.dimension, k, m)
        return SymmetricDiagram(self.degree, sup, self.dimension - 1)

    def dehomogenized(self) -> NewtonDiagram:
        """Drop the last coordinate, flipping signs where it is odd."""
        return NewtonDiagram(
            self.dimension - 1,
            {a[:-1]: (v if a[-1] % 2 == 0 else -v) for a, v in self.values.items()},
        )

    def dump(self) -> dict:
        return {
            "dimension": self.dimension,
            "degree": self.degree,
            "points": [{"alpha": list(a), "sign": "P" if v > 0 else "N"} for a, v in sorted(self.values.items())],
            "nodes": [list(a) for a in self.nodes()],
        }


def symmetric_from_homogeneous(Q: Polynomial) -> SymmetricDiagram:
    """Sign diagram of a homogeneous Q(x1, x2, x3) on H_deg(Q)."""
    if Q.dimension != 3:
        raise ValueError("expected a polynomial in 3 variables")
    if Q.is_zero() or not Q.is_homogeneous():
        raise ValueError("Q must be a nonzero homogeneous polynomial")
    return SymmetricDiagram(Q.degree, {a: (1 if c > 0 else -1) for a, c in Q.terms.items()})


def product_term_count(Q: Polynomial) -> int:
    """N((x1 + x2 + x3) * Q), at least the node count of Q's diagram."""
    return term_count(Polynomial.hyperplane_sum(Q.dimension) * Q)


@dataclass(frozen=True)
class SymmetricVerdict:
    node_count: int
    pair: Optional[Tuple[int, int]]
    deficit: int


def symmetric_view_deficit(D: SymmetricDiagram) -> SymmetricVerdict:
    """Either #(D) = 3 with a single nonzero point, or some view hides >= 2 nodes."""
    count = D.node_count()
    npoints = len(D.values)
    if npoints == 0:
        raise ValueError("empty symmetric diagram")
    if count == 3:
        if npoints != 1:
            raise TheoremContradiction("#(D) = 3 but more than one nonzero point", D.dump())
        return SymmetricVerdict(count, None, 0)
    if count < 3 or npoints < 2:
        raise TheoremContradiction(f"symmetric diagram with #(D) = {count}", D.dump())
    best_pair, best = None, None
    for pair in view_pairs(D.dimension):
        deficit = count - D.view(*pair).node_count()
        if best is None or deficit > best:
            best_pair, best = pair, deficit
    if best < 2:
        raise TheoremContradiction(f"no view hides two nodes (best {best})", D.dump())
    return SymmetricVerdict(count, best_pair, best)
