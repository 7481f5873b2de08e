"""Newton diagrams of quotients q = (p - 1)/(s - 1).

A diagram is a sign function on the integer lattice Z^n that is nonzero on
finitely many points.  Only the support is stored; every other point,
including points with negative coordinates, reads as ``Sign.ZERO``.
Internally signs are the integers +1 (P) and -1 (N) so the hot loops used
by the exhaustive searches stay cheap.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .polynomial import Exponent, Polynomial, divide_by_hyperplane

SINK = "sink"
SOURCE = "source"

BOTTOM_CORNER = "bottom-corner"
TOP_CORNER = "top-corner"
VERTICAL_EDGE = "vertical-edge"
HORIZONTAL_EDGE = "horizontal-edge"
VERTICAL_FACIAL = "vertical-facial"
HORIZONTAL_FACIAL = "horizontal-facial"
OTHER = "other"


class Sign(enum.Enum):
    P = "P"
    N = "N"
    ZERO = "0"

    @classmethod
    def of(cls, value) -> "Sign":
        if isinstance(value, Sign):
            return value
        if value in ("P", "+"):
            return cls.P
        if value in ("N", "-"):
            return cls.N
        if value in ("0", ".", None):
            return cls.ZERO
        if value > 0:
            return cls.P
        if value < 0:
            return cls.N
        return cls.ZERO

    def as_int(self) -> int:
        return {"P": 1, "N": -1, "0": 0}[self.value]


def down(alpha: Sequence[int], k: int) -> Exponent:
    """alpha with its k-th entry (1-based) decreased by one."""
    if not 1 <= k <= len(alpha):
        raise ValueError(f"axis {k} out of range for dimension {len(alpha)}")
    return tuple(a - 1 if i == k - 1 else a for i, a in enumerate(alpha))


def _downs(alpha: Exponent) -> List[Exponent]:
    return [alpha[:i] + (alpha[i] - 1,) + alpha[i + 1:] for i in range(len(alpha))]


def _ups(alpha: Exponent) -> List[Exponent]:
    return [alpha[:i] + (alpha[i] + 1,) + alpha[i + 1:] for i in range(len(alpha))]


def node_kind(support: Mapping[Exponent, int], alpha: Exponent) -> Optional[str]:
    """Sink/source test on a raw support map (values +1/-1)."""
    v = support.get(alpha, 0)
    has_pos = has_neg = False
    for b in _downs(alpha):
        w = support.get(b, 0)
        if w > 0:
            has_pos = True
        elif w < 0:
            has_neg = True
    if has_pos and has_neg:
        return None
    if v <= 0 and not has_neg and (v or has_pos):
        return SINK
    if v >= 0 and not has_pos and (v or has_neg):
        return SOURCE
    return None


def candidate_points(support: Iterable[Exponent]) -> set:
    """Points that can be nodes: the support and its upward neighbours."""
    cand = set()
    for a in support:
        cand.add(a)
        cand.update(_ups(a))
    return cand


def raw_nodes(support: Mapping[Exponent, int]) -> Dict[Exponent, str]:
    out = {}
    for a in candidate_points(support):
        kind = node_kind(support, a)
        if kind is not None:
            out[a] = kind
    return out


def geometry_tag(support: Mapping[Exponent, int], alpha: Exponent) -> str:
    nonzero_here = support.get(alpha, 0) != 0
    c = sum(1 for b in _downs(alpha) if support.get(b, 0))
    if nonzero_here:
        return {0: BOTTOM_CORNER, 1: VERTICAL_EDGE, 2: VERTICAL_FACIAL}.get(c, OTHER)
    return {1: TOP_CORNER, 2: HORIZONTAL_EDGE, 3: HORIZONTAL_FACIAL}.get(c, OTHER)


@dataclass(frozen=True, order=True)
class NodeRecord:
    position: Exponent
    kind: str
    geometry: str

    def to_dict(self):
        return {"alpha": list(self.position), "kind": self.kind, "geometry": self.geometry}


class NewtonDiagram:
    """Sign pattern of the coefficients of q on Z^n."""

    __slots__ = ("_dim", "_support", "_nodes")

    def __init__(self, dimension: int, support: Optional[Mapping[Sequence[int], object]] = None):
        if dimension < 1:
            raise ValueError("dimension must be >= 1")
        clean: Dict[Exponent, int] = {}
        for alpha, s in (support or {}).items():
            alpha = tuple(int(a) for a in alpha)
            if len(alpha) != dimension:
                raise ValueError(f"point {alpha} does not have length {dimension}")
            v = Sign.of(s).as_int()
            if v:
                clean[alpha] = v
        self._dim = dimension
        self._support = clean
        self._nodes = None

    @classmethod
    def _raw(cls, dimension: int, support: Dict[Exponent, int]) -> "NewtonDiagram":
        obj = cls.__new__(cls)
        obj._dim = dimension
        obj._support = support
        obj._nodes = None
        return obj

    @classmethod
    def from_quotient(cls, q: Polynomial) -> "NewtonDiagram":
        return cls._raw(q.dimension, {a: (1 if c > 0 else -1) for a, c in q.terms.items()})

    @classmethod
    def from_polynomial(cls, p: Polynomial) -> "NewtonDiagram":
        """Diagram of (p - 1)/(s - 1); p must be 1 on the hyperplane."""
        q, r = divide_by_hyperplane(p)
        if not r.is_zero():
            raise ValueError("p is not constant 1 on the hyperplane; q is undefined")
        return cls.from_quotient(q)

    @classmethod
    def from_dump(cls, data: Mapping) -> "NewtonDiagram":
        return cls(data["dimension"], {tuple(pt["alpha"]): pt["sign"] for pt in data["points"]})

    # -- lattice queries ---------------------------------------------------

    @property
    def dimension(self) -> int:
        return self._dim

    @property
    def support(self) -> Mapping[Exponent, int]:
        """Raw support: point -> +1 (P) or -1 (N)."""
        return self._support

    def __call__(self, alpha: Sequence[int]) -> Sign:
        return Sign.of(self._support.get(tuple(alpha), 0))

    value = __call__

    def __len__(self) -> int:
        return len(self._support)

    def __eq__(self, other):
        if not isinstance(other, NewtonDiagram):
            return NotImplemented
        return self._dim == other._dim and self._support == other._support

    def __hash__(self):
        return hash((self._dim, frozenset(self._support.items())))

    def __repr__(self):
        pts = ", ".join(f"{a}:{'P' if v > 0 else 'N'}" for a, v in sorted(self._support.items()))
        return f"NewtonDiagram({self._dim}, {{{pts}}})"

    def is_empty(self) -> bool:
        return not self._support

    @property
    def corner(self) -> Optional[Exponent]:
        """The vector a of the bounding set K-hat (componentwise minimum)."""
        if not self._support:
            return None
        return tuple(min(col) for col in zip(*self._support))

    @property
    def top_degree(self) -> Optional[int]:
        """The k of K-hat: the largest |alpha| on the support."""
        if not self._support:
            return None
        return max(sum(a) for a in self._support)

    @property
    def size(self) -> int:
        """k - |a| + 1; zero for the empty diagram."""
        if not self._support:
            return 0
        return self.top_degree - sum(self.corner) + 1

    # -- nodes -------------------------------------------------------------

    def classify_node(self, alpha: Sequence[int]) -> Optional[str]:
        return node_kind(self._support, tuple(alpha))

    def classify_geometry(self, alpha: Sequence[int]) -> str:
        return geometry_tag(self._support, tuple(alpha))

    def node_map(self) -> Dict[Exponent, str]:
        if self._nodes is None:
            self._nodes = raw_nodes(self._support)
        return self._nodes

    def nodes(self) -> List[NodeRecord]:
        return sorted(
            NodeRecord(a, kind, geometry_tag(self._support, a)) for a, kind in self.node_map().items()
        )

    def node_count(self) -> int:
        return len(self.node_map())

    def sources(self) -> List[Exponent]:
        return sorted(a for a, k in self.node_map().items() if k == SOURCE)

    def sinks(self) -> List[Exponent]:
        return sorted(a for a, k in self.node_map().items() if k == SINK)

    def permuted(self, perm: Sequence[int]) -> "NewtonDiagram":
        """Diagram with coordinates reordered: new[i] = old[perm[i]]."""
        return NewtonDiagram._raw(
            self._dim, {tuple(a[j] for j in perm): v for a, v in self._support.items()}
        )

    # -- serialisation -----------------------------------------------------

    def dump(self) -> dict:
        return {
            "dimension": self._dim,
            "points": [
                {"alpha": list(a), "sign": "P" if v > 0 else "N"}
                for a, v in sorted(self._support.items())
            ],
            "size": self.size,
            "nodes": [rec.to_dict() for rec in self.nodes()],
        }

    def ascii(self) -> str:
        return render_ascii(self)


# -- module-level operation surface -------------------------------------------

def from_quotient(q: Polynomial) -> NewtonDiagram:
    return NewtonDiagram.from_quotient(q)


def classify_node(D: NewtonDiagram, alpha: Sequence[int]) -> Optional[str]:
    return D.classify_node(alpha)


def classify_geometry(D: NewtonDiagram, alpha: Sequence[int]) -> str:
    return D.classify_geometry(alpha)


def nodes(D: NewtonDiagram) -> List[NodeRecord]:
    return D.nodes()


def node_count(D: NewtonDiagram) -> int:
    return D.node_count()


def has_unique_source_at_origin(support: Mapping[Exponent, int], dimension: int) -> bool:
    origin = (0,) * dimension
    found = False
    for a, kind in raw_nodes(support).items():
        if kind == SOURCE:
            if a != origin:
                return False
            found = True
    return found


def check_sink_source_structure(D: NewtonDiagram) -> bool:
    """Exactly one source, at the origin; every other node a sink."""
    return has_unique_source_at_origin(D.support, D.dimension)


# -- views ---------------------------------------------------------------------

def _check_pair(n: int, k: int, m: int) -> None:
    if n < 2:
        raise ValueError("views need dimension >= 2")
    if not (1 <= k <= n and 1 <= m <= n) or k == m:
        raise ValueError(f"invalid axis pair ({k}, {m}) for dimension {n}")


def _reducer(n: int, k: int, m: int):
    ki, mi = k - 1, m - 1

    def reduce(beta: Exponent) -> Exponent:
        merged = list(beta)
        merged[ki] = beta[ki] + beta[mi]
        del merged[mi]
        return tuple(merged)

    return reduce


def view_support(support: Mapping[Exponent, int], n: int, k: int, m: int) -> Tuple[Dict, Dict]:
    """Raw view along (x_k, x_m) plus the map from view points to gamma(alpha).

    Each line {beta : beta_k + beta_m fixed, other entries fixed} is read
    starting from the smallest beta_k; the first nonzero value is what the
    view shows.
    """
    reduce = _reducer(n, k, m)
    ki = k - 1
    best: Dict[Exponent, Exponent] = {}
    for beta in support:
        key = reduce(beta)
        cur = best.get(key)
        if cur is None or beta[ki] < cur[ki]:
            best[key] = beta
    return {key: support[beta] for key, beta in best.items()}, best


def view(D: NewtonDiagram, k: int, m: int) -> NewtonDiagram:
    """V(D, k, m): the (n-1)-dimensional diagram seen along the (x_k, x_m) edge.

    ``k`` and ``m`` are distinct 1-based variable indices of D.  The view
    coordinate that replaces x_k holds beta_k + beta_m, and x_m is dropped.
    All-zero lines read as zero.
    """
    _check_pair(D.dimension, k, m)
    sup, _ = view_support(D.support, D.dimension, k, m)
    return NewtonDiagram._raw(D.dimension - 1, sup)


def view_pairs(n: int) -> List[Tuple[int, int]]:
    return list(permutations(range(1, n + 1), 2))


def gamma(D: NewtonDiagram, k: int, m: int, alpha: Sequence[int]) -> Optional[Exponent]:
    """The point of D shown at alpha in V(D, k, m).

    On a nonzero line this is the first nonzero point.  On an all-zero line
    it is the point of the line with smallest x_k-entry that is a node of D
    of the same kind as alpha is in the view, or None if there is none.
    """
    _check_pair(D.dimension, k, m)
    alpha = tuple(alpha)
    _, best = view_support(D.support, D.dimension, k, m)
    if alpha in best:
        return best[alpha]
    vsup = {key: D.support[b] for key, b in best.items()}
    kind = node_kind(vsup, alpha)
    if kind is None:
        return None
    reduce = _reducer(D.dimension, k, m)
    matches = [b for b, bk in D.node_map().items() if bk == kind and reduce(b) == alpha]
    if not matches:
        return None
    return min(matches, key=lambda b: b[k - 1])


def view_correspondence(D: NewtonDiagram, k: int, m: int) -> Dict[Exponent, Optional[Exponent]]:
    """Map each node of V(D,k,m) to its corresponding node of D (None if absent)."""
    _check_pair(D.dimension, k, m)
    n = D.dimension
    vsup, best = view_support(D.support, n, k, m)
    vnodes = raw_nodes(vsup)
    dnodes = D.node_map()
    reduce = _reducer(n, k, m)
    by_line: Dict[Exponent, List[Exponent]] = {}
    for b in dnodes:
        by_line.setdefault(reduce(b), []).append(b)
    out = {}
    for a, kind in vnodes.items():
        if a in best:
            b = best[a]
            out[a] = b if dnodes.get(b) == kind else None
        else:
            cands = [b for b in by_line.get(a, []) if dnodes[b] == kind]
            out[a] = min(cands, key=lambda b: b[k - 1]) if cands else None
    return out


def count_hidden_nodes(D: NewtonDiagram, k: int, m: int) -> int:
    """#(D) - #(V(D, k, m))."""
    return D.node_count() - view(D, k, m).node_count()


def best_view(D: NewtonDiagram) -> Tuple[Tuple[int, int], int]:
    """The view pair hiding the most nodes, ties broken by pair order."""
    best_pair, best_deficit = None, None
    for pair in view_pairs(D.dimension):
        deficit = count_hidden_nodes(D, *pair)
        if best_deficit is None or deficit > best_deficit:
            best_pair, best_deficit = pair, deficit
    return best_pair, best_deficit


# -- overhang and outside vertical edges ------------------------------------------

def projection(support: Iterable[Exponent], k: int, m: int) -> set:
    """pi(K, k, m) for 1-based axes."""
    return {(a[k - 1], a[m - 1]) for a in support}


def left_overhangs(points: set) -> List[Tuple[int, int]]:
    out = []
    for (a, b) in points:
        if (a, b) == (0, 0) or (a, b - 1) in points:
            continue
        if any(x == a - 1 and y >= b for (x, y) in points):
            continue
        out.append((a, b))
    return sorted(out)


@dataclass(frozen=True)
class Overhang:
    k: int
    m: int
    point: Tuple[int, int]


def find_overhang(D: NewtonDiagram) -> Optional[Overhang]:
    """First overhang over all ordered axis pairs, or None.

    Right overhangs of pi(K,k,m) are left overhangs of pi(K,m,k), so scanning
    ordered pairs for left overhangs covers both.
    """
    if D.dimension < 2:
        return None
    for k, m in view_pairs(D.dimension):
        hits = left_overhangs(projection(D.support, k, m))
        if hits:
            return Overhang(k, m, hits[0])
    return None


def has_overhang(D: NewtonDiagram) -> Tuple[bool, Optional[Overhang]]:
    w = find_overhang(D)
    return w is not None, w


@dataclass(frozen=True)
class OutsideEdge:
    axis: int  # 1-based
    top: Exponent  # the zero point alpha sitting on the column
    column: Tuple[Exponent, ...]  # down_k(alpha), down_k^2(alpha), ...


def outside_vertical_edges(D: NewtonDiagram) -> List[OutsideEdge]:
    """Maximal exposed columns of the support.

    A column below a zero point alpha along axis k qualifies while every
    point on it (and alpha itself) has zero down_j neighbours for j != k.
    """
    sup = D.support
    n = D.dimension
    edges = []
    for k in range(n):
        tops = {a[:k] + (a[k] + 1,) + a[k + 1:] for a in sup}
        for alpha in sorted(tops):
            if sup.get(alpha, 0):
                continue
            if any(sup.get(b, 0) for j, b in enumerate(_downs(alpha)) if j != k):
                continue
            column = []
            beta = alpha[:k] + (alpha[k] - 1,) + alpha[k + 1:]
            while sup.get(beta, 0):
                if any(sup.get(b, 0) for j, b in enumerate(_downs(beta)) if j != k):
                    break
                column.append(beta)
                beta = beta[:k] + (beta[k] - 1,) + beta[k + 1:]
            if column:
                edges.append(OutsideEdge(k + 1, alpha, tuple(column)))
    return edges


def outside_vertical_edge_nodes(D: NewtonDiagram) -> List[Exponent]:
    """Nodes on outside vertical edges other than the edges' bottom nodes."""
    sup = D.support
    nodes_ = D.node_map()
    found = set()
    for edge in outside_vertical_edges(D):
        k = edge.axis - 1
        for beta in edge.column:
            below = beta[:k] + (beta[k] - 1,) + beta[k + 1:]
            if beta in nodes_ and sup.get(below, 0):
                found.add(beta)
    return sorted(found)


# -- faces ---------------------------------------------------------------------

VERTICAL_MEMBER = {BOTTOM_CORNER, TOP_CORNER, VERTICAL_EDGE, HORIZONTAL_EDGE, VERTICAL_FACIAL}
HORIZONTAL_MEMBER = {TOP_CORNER, HORIZONTAL_EDGE, HORIZONTAL_FACIAL}


@dataclass(frozen=True)
class Face:
    """A vertical face (two free axes) or horizontal face (three free axes).

    ``axes`` are 1-based.  ``fixed`` lists (axis, value) for the other
    coordinates; a horizontal face also fixes the degree |alpha|.
    """

    kind: str
    axes: Tuple[int, ...]
    fixed: Tuple[Tuple[int, int], ...]
    points: Tuple[Exponent, ...]
    degree: Optional[int] = None
    node_count: int = 0

    def to_dict(self):
        d = {
            "kind": self.kind,
            "axes": list(self.axes),
            "fixed": [list(f) for f in self.fixed],
            "points": [list(p) for p in self.points],
            "nodes": self.node_count,
        }
        if self.degree is not None:
            d["degree"] = self.degree
        return d


def _components(points: set, steps: List[Tuple[int, ...]]) -> List[List[Exponent]]:
    seen = set()
    comps = []
    for start in sorted(points):
        if start in seen:
            continue
        comp = []
        seen.add(start)
        queue = deque([start])
        while queue:
            cur = queue.popleft()
            comp.append(cur)
            for st in steps:
                nb = tuple(c + s for c, s in zip(cur, st))
                if nb in points and nb not in seen:
                    seen.add(nb)
                    queue.append(nb)
        comps.append(sorted(comp))
    return comps


def faces(D: NewtonDiagram) -> List[Face]:
    """Vertical and horizontal faces of D.

    A vertical face in the plane of axes (k, m) collects corner, edge and
    vertical-facial points whose nonzero downward neighbours all point along
    k or m, connected by unit steps in the plane.  A horizontal face does
    the same for zero points on top of the solid (top corners, horizontal
    edges, horizontal-facial points) in a plane |alpha| = const with three
    free axes; inside that plane neighbours differ by e_i - e_j.
    """
    sup = D.support
    n = D.dimension
    cand = candidate_points(sup)
    info = {}
    for a in cand:
        tag = geometry_tag(sup, a)
        dirs = frozenset(j for j, b in enumerate(_downs(a)) if sup.get(b, 0))
        info[a] = (tag, dirs)
    node_map = D.node_map()
    out: List[Face] = []

    def unit(j, sign=1):
        e = [0] * n
        e[j] = sign
        return tuple(e)

    if n >= 2:
        for i, j in combinations(range(n), 2):
            groups: Dict[Tuple, set] = {}
            for a, (tag, dirs) in info.items():
                if tag in VERTICAL_MEMBER and dirs <= {i, j}:
                    key = tuple((x + 1, a[x]) for x in range(n) if x not in (i, j))
                    groups.setdefault(key, set()).add(a)
            steps = [unit(i), unit(i, -1), unit(j), unit(j, -1)]
            for key in sorted(groups):
                for comp in _components(groups[key], steps):
                    out.append(Face("vertical", (i + 1, j + 1), key, tuple(comp),
                                    None, sum(1 for p in comp if p in node_map)))
    if n >= 3:
        for trip in combinations(range(n), 3):
            groups = {}
            for a, (tag, dirs) in info.items():
                if tag in HORIZONTAL_MEMBER and dirs <= set(trip):
                    key = (sum(a),) + tuple((x + 1, a[x]) for x in range(n) if x not in trip)
                    groups.setdefault(key, set()).add(a)
            steps = []
            for x in trip:
                for y in trip:
                    if x != y:
                        e = [0] * n
                        e[x], e[y] = 1, -1
                        steps.append(tuple(e))
            for key in sorted(groups):
                for comp in _components(groups[key], steps):
                    out.append(Face("horizontal", tuple(t + 1 for t in trip), key[1:], tuple(comp),
                                    key[0], sum(1 for p in comp if p in node_map)))
    return out


def top_horizontal_faces(D: NewtonDiagram) -> List[Face]:
    """Horizontal faces lying on the top of the diagram, |alpha| = k + 1."""
    if D.is_empty():
        return []
    top = D.top_degree + 1
    return [f for f in faces(D) if f.kind == "horizontal" and f.degree == top]


# -- rendering -----------------------------------------------------------------

def _sym(v: int) -> str:
    return "P" if v > 0 else ("N" if v < 0 else ".")


def render_ascii(D: NewtonDiagram) -> str:
    """Row-per-degree text grid.

    For n = 2 each line is one degree t, listing (a, t - a) for increasing a.
    For n = 3 each degree gets a block whose lines fix the third entry.
    Higher dimensions list the support point by point.
    """
    sup = D.support
    if D.is_empty():
        return "(empty diagram)"
    n = D.dimension
    lo = min(sum(a) for a in sup)
    hi = D.top_degree
    lines = []
    if n == 1:
        xs = [a[0] for a in sup]
        return " ".join(_sym(sup.get((x,), 0)) for x in range(min(xs), max(xs) + 1))
    if n == 2:
        amin = min(a[0] for a in sup)
        amax = max(a[0] for a in sup)
        for t in range(hi, lo - 1, -1):
            row = " ".join(_sym(sup.get((a, t - a), 0)) for a in range(amin, amax + 1))
            lines.append(f"{t:>3} | {row}")
        return "\n".join(lines)
    if n == 3:
        cmin = min(a[2] for a in sup)
        cmax = max(a[2] for a in sup)
        amin = min(a[0] for a in sup)
        amax = max(a[0] for a in sup)
        for t in range(hi, lo - 1, -1):
            lines.append(f"degree {t}")
            for c in range(cmin, cmax + 1):
                row = " ".join(_sym(sup.get((a, t - a - c, c), 0)) for a in range(amin, amax + 1))
                lines.append(f"  x3={c:<2} | {row}")
        return "\n".join(lines)
    for a, v in sorted(sup.items()):
        lines.append(f"{a} {_sym(v)}")
    return "\n".join(lines)
