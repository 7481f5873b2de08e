"""Sharp generalized Whitney polynomials and the degree bound.

Starting from s = x1 + ... + xn, repeatedly replace a maximal-degree term
m by s*m.  Each move raises the degree by one and adds exactly n - 1 terms,
so a degree-d result has N = d(n - 1) + 1 terms.  Equivalently, the
quotient q = (p - 1)/(s - 1) has exactly one nonzero term in each degree
0, ..., d - 1; that criterion is what :func:`is_sharp_whitney` checks.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Union

from .errors import NotInHError, TheoremContradiction
from .polynomial import Exponent, Polynomial, divide_by_hyperplane, is_in_H

Chooser = Callable[[Polynomial, List[Exponent]], Exponent]


def max_degree_terms(p: Polynomial) -> List[Exponent]:
    d = p.degree
    return sorted(a for a in p.terms if sum(a) == d)


def whitney_step(p: Polynomial, alpha: Sequence[int], check: bool = True) -> Polynomial:
    """p - c*x^alpha + s*c*x^alpha for the full coefficient c of a top term."""
    alpha = tuple(alpha)
    c = p.coefficient(alpha)
    if not c or sum(alpha) != p.degree:
        raise ValueError(f"{alpha} is not a maximal-degree term of {p}")
    if check and not is_in_H(p):
        raise NotInHError(f"{p} is not in H")
    m = Polynomial(p.dimension, {alpha: c})
    return p - m + Polynomial.hyperplane_sum(p.dimension) * m


def lex_chooser(p: Polynomial, candidates: List[Exponent]) -> Exponent:
    return max(candidates)


def seeded_chooser(seed: int) -> Chooser:
    rng = random.Random(seed)

    def choose(p, candidates):
        return rng.choice(sorted(candidates))

    return choose


def sequence_chooser(moves: Sequence[Sequence[int]]) -> Chooser:
    """Replay an explicit list of moves."""
    it = iter([tuple(m) for m in moves])

    def choose(p, candidates):
        m = next(it)
        if m not in candidates:
            raise ValueError(f"move {m} is not a maximal-degree term")
        return m

    return choose


def parse_chooser(spec: Union[str, Chooser, None]) -> Chooser:
    """'lex', 'seed:<int>', a callable, or None (lex)."""
    if spec is None or spec == "lex":
        return lex_chooser
    if callable(spec):
        return spec
    if isinstance(spec, str) and spec.startswith("seed:"):
        return seeded_chooser(int(spec[5:]))
    raise ValueError(f"unknown chooser {spec!r}; use 'lex' or 'seed:<int>'")


@dataclass(frozen=True)
class WhitneyTrace:
    dimension: int
    moves: tuple
    polynomial: Polynomial

    @property
    def degree(self) -> int:
        return self.polynomial.degree


def generate(n: int, d: int, chooser: Union[str, Chooser, None] = "lex") -> WhitneyTrace:
    """A degree-d sharp generalized Whitney polynomial in n variables."""
    if n < 2 or d < 1:
        raise ValueError("need n >= 2 and d >= 1")
    choose = parse_chooser(chooser)
    p = Polynomial.hyperplane_sum(n)
    moves = []
    for _ in range(d - 1):
        alpha = choose(p, max_degree_terms(p))
        # membership holds by construction; skip the per-step division
        p = whitney_step(p, alpha, check=False)
        moves.append(alpha)
    return WhitneyTrace(n, tuple(moves), p)


def is_sharp_whitney(p: Polynomial) -> bool:
    """p in H and q has exactly one nonzero term of each degree below deg p."""
    if p.is_zero() or not is_in_H(p):
        return False
    q, _ = divide_by_hyperplane(p)
    degrees = sorted(sum(a) for a in q.terms)
    return degrees == list(range(p.degree))


@dataclass(frozen=True)
class BoundReport:
    n: int
    d: int
    N: int
    bound: Fraction
    tight: bool

    def to_dict(self):
        b = self.bound
        return {
            "n": self.n,
            "d": self.d,
            "N": self.N,
            "bound": b.numerator if b.denominator == 1 else str(b),
            "tight": self.tight,
        }


def degree_bound(n: int, N: int) -> Fraction:
    """2N - 3 for n = 2, (N - 1)/(n - 1) for n >= 3."""
    if n < 2:
        raise ValueError("no degree bound holds for n = 1")
    if n == 2:
        return Fraction(2 * N - 3)
    return Fraction(N - 1, n - 1)


def check_degree_bound(p: Polynomial) -> BoundReport:
    n = p.dimension
    if n < 2:
        raise ValueError("no degree bound holds for n = 1 (x^d is 1 at x = 1 for every d)")
    if p.is_zero() or p.degree == 0:
        raise ValueError("p must be nonconstant")
    membership = is_in_H(p)
    if not membership:
        raise NotInHError(f"{p} is not in H: {membership}")
    N = len(p)
    bound = degree_bound(n, N)
    if p.degree > bound:
        raise TheoremContradiction(f"degree {p.degree} exceeds bound {bound}", {"polynomial": str(p)})
    return BoundReport(n, p.degree, N, bound, p.degree == bound)
