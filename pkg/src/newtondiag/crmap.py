"""Monomial maps between balls, reduced to real polynomials.

A component c*z^beta contributes |c|^2 * x^beta to p(x) = ||f(z)||^2 with
x_j = |z_j|^2.  Only the squared moduli |c|^2 are stored, as exact
rationals; phases never matter here.  The map is proper exactly when p lies
in H.

File format, one component per line::

    # comment
    2 : z1*z2
    1 : z1^2
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .errors import TheoremContradiction
from .polynomial import Exponent, Polynomial, format_monomial, is_in_H, parse
from .whitney import degree_bound


@dataclass(frozen=True)
class MonomialMap:
    dimension: int
    components: Tuple[Tuple[Fraction, Exponent], ...]

    def __post_init__(self):
        if not self.components:
            raise ValueError("a map needs at least one component")
        for c, beta in self.components:
            if len(beta) != self.dimension or min(beta) < 0:
                raise ValueError(f"bad exponent {beta}")
            if c <= 0:
                raise ValueError(f"squared modulus must be positive, got {c}")

    @classmethod
    def build(cls, dimension: int, components) -> "MonomialMap":
        return cls(dimension, tuple((Fraction(c), tuple(b)) for c, b in components))

    @classmethod
    def from_polynomial(cls, p: Polynomial) -> "MonomialMap":
        """One component per term, squared modulus = coefficient."""
        return cls(p.dimension, tuple((c, a) for a, c in sorted(p.terms.items(), reverse=True)))

    @property
    def N(self) -> int:
        return len(self.components)

    @property
    def degree(self) -> int:
        return max(sum(b) for _, b in self.components)


def identity_map(n: int) -> MonomialMap:
    return MonomialMap.build(n, [(1, tuple(int(i == j) for i in range(n))) for j in range(n)])


def squared_norm(f: MonomialMap) -> Polynomial:
    terms = {}
    for c, beta in f.components:
        terms[beta] = terms.get(beta, 0) + c
    return Polynomial(f.dimension, terms)


def is_proper(f: MonomialMap) -> bool:
    return bool(is_in_H(squared_norm(f)))


@dataclass(frozen=True)
class CorollaryReport:
    n: int
    N: int
    d: int
    bound: Fraction
    holds: bool

    def to_dict(self):
        b = self.bound
        return {"n": self.n, "N": self.N, "d": self.d,
                "bound": b.numerator if b.denominator == 1 else str(b), "holds": self.holds}


def corollary_report(f: MonomialMap) -> CorollaryReport:
    if f.dimension < 2:
        raise ValueError("the degree bound needs n >= 2")
    if not is_proper(f):
        raise ValueError("map is not proper: ||f||^2 is not 1 on the sphere")
    bound = degree_bound(f.dimension, f.N)
    report = CorollaryReport(f.dimension, f.N, f.degree, bound, f.degree <= bound)
    if not report.holds:
        raise TheoremContradiction(f"proper monomial map of degree {f.degree} exceeds {bound}",
                                   report.to_dict())
    return report


def parse_map(text: str, dimension: Optional[int] = None) -> MonomialMap:
    """Parse the ``<rational> : <monomial in z>`` line format.

    Without ``dimension`` the largest z-index in the file is used.
    """
    entries: List[Tuple[Fraction, str, int]] = []
    maxdim = 1
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise ValueError(f"line {lineno}: expected '<rational> : <monomial>'")
        left, right = (s.strip() for s in line.split(":", 1))
        try:
            coeff = Fraction(left)
        except ValueError:
            raise ValueError(f"line {lineno}: bad squared modulus {left!r}") from None
        indices = [int(tok) for tok in _z_indices(right)]
        maxdim = max([maxdim] + indices)
        entries.append((coeff, right, lineno))
    n = dimension or maxdim
    comps = []
    for coeff, mono, lineno in entries:
        p = parse(mono, n, prefix="z")
        if len(p) != 1 or next(iter(p.terms.values())) != 1:
            raise ValueError(f"line {lineno}: {mono!r} is not a single monic monomial")
        comps.append((coeff, next(iter(p.terms))))
    return MonomialMap.build(n, comps)


def _z_indices(text: str):
    out, i = [], 0
    while i < len(text):
        if text[i] == "z":
            j = i + 1
            while j < len(text) and text[j].isdigit():
                j += 1
            if j > i + 1:
                out.append(text[i + 1:j])
            i = j
        else:
            i += 1
    return out


def format_map(f: MonomialMap) -> str:
    lines = []
    for c, beta in f.components:
        mono = format_monomial(beta, prefix="z") or "1"
        lines.append(f"{c} : {mono}")
    return "\n".join(lines) + "\n"
