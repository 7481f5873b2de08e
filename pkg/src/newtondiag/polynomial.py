"""Exact sparse multivariate polynomials over the rationals.

A polynomial in ``n`` variables is a map from exponent tuples to nonzero
``Fraction`` coefficients::

    x1^2*x2 + 3  ->  {(2, 1): Fraction(1), (0, 0): Fraction(3)}

The zero polynomial has an empty term map and degree ``None``.  Coefficients
are restricted to rationals; every example of interest here is rational and
exact signs are what the Newton diagram is built from.

The module also provides the division of ``p - 1`` by ``s - 1`` where
``s = x1 + ... + xn``, which is how the quotient ``q`` and membership in
the class H (nonnegative coefficients, ``p = 1`` on the hyperplane ``s = 1``)
are computed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple, Union

from .errors import DimensionError, PolynomialSyntaxError

Exponent = Tuple[int, ...]
Coefficient = Union[int, Fraction]

ALIASES = {"x": 1, "y": 2, "z": 3, "w": 4}


def total_degree(alpha: Sequence[int]) -> int:
    """|alpha|, the sum of the entries."""
    return sum(alpha)


class Polynomial:
    """Immutable sparse polynomial with exact rational coefficients."""

    __slots__ = ("_dim", "_terms", "_hash")

    def __init__(self, dimension: int, terms: Optional[Mapping[Exponent, Coefficient]] = None):
        if dimension < 1:
            raise DimensionError(f"dimension must be >= 1, got {dimension}")
        clean: Dict[Exponent, Fraction] = {}
        for alpha, c in (terms or {}).items():
            alpha = tuple(int(a) for a in alpha)
            if len(alpha) != dimension:
                raise DimensionError(f"exponent {alpha} does not have length {dimension}")
            if any(a < 0 for a in alpha):
                raise ValueError(f"negative exponent {alpha} in a polynomial")
            c = Fraction(c)
            if c:
                clean[alpha] = clean.get(alpha, Fraction(0)) + c
                if not clean[alpha]:
                    del clean[alpha]
        self._dim = dimension
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, dimension: int, terms: Dict[Exponent, Fraction]) -> "Polynomial":
        # Trusted constructor: terms already validated and free of zeros.
        obj = cls.__new__(cls)
        obj._dim = dimension
        obj._terms = terms
        obj._hash = None
        return obj

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, dimension: int) -> "Polynomial":
        return cls(dimension)

    @classmethod
    def constant(cls, dimension: int, value: Coefficient) -> "Polynomial":
        return cls(dimension, {(0,) * dimension: value})

    @classmethod
    def monomial(cls, alpha: Sequence[int], coeff: Coefficient = 1) -> "Polynomial":
        return cls(len(alpha), {tuple(alpha): coeff})

    @classmethod
    def variable(cls, dimension: int, index: int) -> "Polynomial":
        """The polynomial x_index (1-based)."""
        if not 1 <= index <= dimension:
            raise DimensionError(f"variable x{index} out of range for dimension {dimension}")
        return cls.monomial(unit(dimension, index - 1))

    @classmethod
    def hyperplane_sum(cls, dimension: int) -> "Polynomial":
        """s = x1 + ... + xn."""
        return cls(dimension, {unit(dimension, i): 1 for i in range(dimension)})

    # -- basic queries ------------------------------------------------------

    @property
    def dimension(self) -> int:
        return self._dim

    @property
    def terms(self) -> Mapping[Exponent, Fraction]:
        return MappingProxyType(self._terms)

    @property
    def degree(self) -> Optional[int]:
        """Total degree, or None for the zero polynomial."""
        if not self._terms:
            return None
        return max(sum(a) for a in self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, alpha: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(alpha), Fraction(0))

    def is_homogeneous(self) -> bool:
        return len({sum(a) for a in self._terms}) <= 1

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self):
        return iter(sorted(self._terms.items(), reverse=True))

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: "Polynomial") -> None:
        if self._dim != other._dim:
            raise DimensionError(f"dimension mismatch: {self._dim} vs {other._dim}")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self._dim, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for alpha, c in other._terms.items():
            v = out.get(alpha, 0) + c
            if v:
                out[alpha] = v
            else:
                out.pop(alpha, None)
        return Polynomial._raw(self._dim, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self._dim, {a: -c for a, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return scale(other, self)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: Dict[Exponent, Fraction] = {}
        for a, ca in self._terms.items():
            for b, cb in other._terms.items():
                g = tuple(x + y for x, y in zip(a, b))
                out[g] = out.get(g, 0) + ca * cb
        return Polynomial._raw(self._dim, {g: c for g, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        result = Polynomial.constant(self._dim, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self._dim, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._dim == other._dim and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._dim, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        return f"Polynomial({self._dim}, {format_polynomial(self)!r})"

    def __str__(self):
        return format_polynomial(self)


def unit(dimension: int, index: int) -> Exponent:
    """Exponent of x_{index+1} (0-based index)."""
    e = [0] * dimension
    e[index] = 1
    return tuple(e)


# -- functional arithmetic surface ------------------------------------------

def add(p: Polynomial, q: Polynomial) -> Polynomial:
    return p + q


def mul(p: Polynomial, q: Polynomial) -> Polynomial:
    return p * q


def scale(c: Coefficient, p: Polynomial) -> Polynomial:
    c = Fraction(c)
    if not c:
        return Polynomial.zero(p.dimension)
    return Polynomial._raw(p.dimension, {a: c * v for a, v in p.terms.items()})


def subtract_monomial(p: Polynomial, alpha: Sequence[int], c: Coefficient) -> Polynomial:
    """p - c*x^alpha."""
    return p - Polynomial(p.dimension, {tuple(alpha): c})


def term_count(p: Polynomial) -> int:
    """N(p), the number of nonzero coefficients."""
    return len(p)


def evaluate(p: Polynomial, point: Sequence[Coefficient]) -> Fraction:
    if len(point) != p.dimension:
        raise DimensionError(f"point has length {len(point)}, polynomial has dimension {p.dimension}")
    xs = [Fraction(v) for v in point]
    total = Fraction(0)
    for alpha, c in p.terms.items():
        v = c
        for x, e in zip(xs, alpha):
            if e:
                v *= x ** e
        total += v
    return total


def substitute(p: Polynomial, images: Sequence[Polynomial]) -> Polynomial:
    """Replace x_i by images[i]; all images must share one dimension."""
    if len(images) != p.dimension:
        raise DimensionError(f"need {p.dimension} images, got {len(images)}")
    target = images[0].dimension
    for g in images:
        if g.dimension != target:
            raise DimensionError("substitution images have different dimensions")
    powers: Dict[Tuple[int, int], Polynomial] = {}

    def power(i, e):
        key = (i, e)
        if key not in powers:
            powers[key] = images[i] ** e
        return powers[key]

    out = Polynomial.zero(target)
    for alpha, c in p.terms.items():
        term = Polynomial.constant(target, c)
        for i, e in enumerate(alpha):
            if e:
                term = term * power(i, e)
        out = out + term
    return out


# -- hyperplane quotient -------------------------------------------------------

def divide_by_hyperplane(p: Polynomial) -> Tuple[Polynomial, Polynomial]:
    """Divide p - 1 by s - 1 under lex order with x1 greatest.

    Returns ``(q, r)`` with ``(s - 1)*q + r == p - 1`` and no term of ``r``
    divisible by x1.  ``r`` is zero exactly when ``p == 1`` on ``s == 1``.
    """
    n = p.dimension
    work: Dict[Exponent, Fraction] = dict((p - 1).terms)
    quot: Dict[Exponent, Fraction] = {}
    rem: Dict[Exponent, Fraction] = {}

    def bump(alpha, c):
        v = work.get(alpha, 0) + c
        if v:
            work[alpha] = v
        else:
            work.pop(alpha, None)

    while work:
        lead = max(work)
        c = work.pop(lead)
        if lead[0] == 0:
            rem[lead] = c
            continue
        m = (lead[0] - 1,) + lead[1:]
        quot[m] = quot.get(m, 0) + c
        # c*m*(s - 1) minus its leading term c*x1*m, which was just popped
        for j in range(1, n):
            bump(m[:j] + (m[j] + 1,) + m[j + 1:], -c)
        bump(m, c)
    return (Polynomial._raw(n, {a: c for a, c in quot.items() if c}), Polynomial._raw(n, rem))


def quotient(p: Polynomial) -> Polynomial:
    """q = (p - 1)/(s - 1); raises if the division is not exact."""
    q, r = divide_by_hyperplane(p)
    if not r.is_zero():
        raise ValueError(f"p - 1 is not divisible by s - 1 (remainder {r})")
    return q


@dataclass(frozen=True)
class Membership:
    """Answer of :func:`is_in_H` with a witness when the answer is no."""

    in_h: bool
    negative_term: Optional[Exponent] = None
    point: Optional[Tuple[Fraction, ...]] = None

    def __bool__(self):
        return self.in_h


def hyperplane_witness(r: Polynomial) -> Tuple[Fraction, ...]:
    """A point on s = 1 where p - 1 = r is nonzero, for a nonzero remainder r.

    ``r`` does not involve x1, so it suffices to find (x2, ..., xn) with
    ``r != 0`` and set x1 from the hyperplane.  A grid of side deg(r) + 1
    always contains such a point.
    """
    n = r.dimension
    if r.is_zero():
        raise ValueError("remainder is zero; no witness exists")
    side = r.degree + 1
    grid = sorted(itertools.product(range(side), repeat=n - 1), key=lambda t: (sum(t), t))
    for tail in grid:
        point = (Fraction(1 - sum(tail)),) + tuple(Fraction(t) for t in tail)
        if evaluate(r, point) != 0:
            return point
    raise AssertionError("no nonzero grid point; remainder arithmetic is broken")


def is_in_H(p: Polynomial) -> Membership:
    """Nonnegative coefficients and p == 1 on the hyperplane s == 1."""
    for alpha in sorted(p.terms, reverse=True):
        if p.terms[alpha] < 0:
            return Membership(False, negative_term=alpha)
    _, r = divide_by_hyperplane(p)
    if r.is_zero():
        return Membership(True)
    return Membership(False, point=hyperplane_witness(r))


# -- text format ------------------------------------------------------------

def _var_name(i: int, n: int, aliases: bool, prefix: str) -> str:
    if aliases and prefix == "x" and n <= 4:
        return "xyzw"[i]
    return f"{prefix}{i + 1}"


def format_monomial(alpha: Sequence[int], aliases: bool = False, prefix: str = "x") -> str:
    n = len(alpha)
    parts = []
    for i, e in enumerate(alpha):
        if e == 1:
            parts.append(_var_name(i, n, aliases, prefix))
        elif e:
            parts.append(f"{_var_name(i, n, aliases, prefix)}^{e}")
    return "*".join(parts)


def format_polynomial(p: Polynomial, aliases: bool = False) -> str:
    """Canonical text: descending lex order, reduced fractions."""
    if p.is_zero():
        return "0"
    pieces = []
    for alpha, c in p:
        mono = format_monomial(alpha, aliases)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not pieces:
            pieces.append(("-" if c < 0 else "") + body)
        else:
            pieces.append(("- " if c < 0 else "+ ") + body)
    return " ".join(pieces)


class _Parser:
    def __init__(self, text: str, dimension: int, prefix: str):
        self.text = text
        self.n = dimension
        self.prefix = prefix
        self.i = 0

    def error(self, msg, pos=None):
        raise PolynomialSyntaxError(msg, self.text, self.i if pos is None else pos)

    def skip(self):
        while self.i < len(self.text) and self.text[self.i].isspace():
            self.i += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.i] if self.i < len(self.text) else ""

    def uint(self) -> int:
        self.skip()
        start = self.i
        while self.i < len(self.text) and self.text[self.i].isdigit():
            self.i += 1
        if start == self.i:
            self.error("expected an unsigned integer")
        return int(self.text[start:self.i])

    def starts_factor(self) -> bool:
        ch = self.peek()
        if ch == self.prefix:
            return True
        return self.prefix == "x" and ch in ALIASES

    def factor(self) -> Exponent:
        self.skip()
        start = self.i
        ch = self.text[self.i]
        self.i += 1
        if self.i < len(self.text) and self.text[self.i].isdigit() and ch == self.prefix:
            index = self.uint()
        elif self.prefix == "x" and ch in ALIASES:
            if self.n > 4:
                self.error(f"alias {ch!r} only allowed for dimension <= 4", start)
            index = ALIASES[ch]
        else:
            self.error(f"bare {ch!r} needs an index", start)
        if not 1 <= index <= self.n:
            self.error(f"variable index {index} out of range for dimension {self.n}", start)
        power = 1
        if self.peek() == "^":
            self.i += 1
            power = self.uint()
        return tuple(power if j == index - 1 else 0 for j in range(self.n))

    def term(self) -> Tuple[Exponent, Fraction]:
        coeff = Fraction(1)
        alpha = [0] * self.n
        seen = False
        if self.peek().isdigit():
            num = self.uint()
            if self.peek() == "/":
                self.i += 1
                den = self.uint()
                if den == 0:
                    self.error("zero denominator")
                coeff = Fraction(num, den)
            else:
                coeff = Fraction(num)
            seen = True
        while True:
            ch = self.peek()
            if ch == "*":
                self.i += 1
                if not self.starts_factor():
                    self.error("expected a variable after '*'")
            elif not self.starts_factor():
                break
            f = self.factor()
            alpha = [a + b for a, b in zip(alpha, f)]
            seen = True
        if not seen:
            self.error("expected a term")
        return tuple(alpha), coeff

    def expr(self) -> Polynomial:
        terms: Dict[Exponent, Fraction] = {}
        sign = 1
        if self.peek() in "+-" and self.peek():
            sign = -1 if self.peek() == "-" else 1
            self.i += 1
        while True:
            alpha, c = self.term()
            terms[alpha] = terms.get(alpha, 0) + sign * c
            ch = self.peek()
            if ch == "":
                break
            if ch not in "+-":
                self.error(f"unexpected {ch!r}")
            sign = -1 if ch == "-" else 1
            self.i += 1
        return Polynomial(self.n, terms)


def parse(text: str, dimension: int, prefix: str = "x") -> Polynomial:
    """Parse ``text`` into a polynomial in ``dimension`` variables.

    Grammar::

        expr   := ['+'|'-'] term (('+'|'-') term)*
        term   := [coeff] ('*'? factor)*
        factor := var ('^' uint)?
        coeff  := int | int '/' uint
        var    := 'x' uint | 'x' | 'y' | 'z' | 'w'

    The one-letter aliases are accepted only for dimension <= 4.  ``prefix``
    swaps the indexed variable letter (``z`` for monomial maps) and turns
    the aliases off.
    """
    if dimension < 1:
        raise DimensionError(f"dimension must be >= 1, got {dimension}")
    if not text.strip():
        raise PolynomialSyntaxError("empty input", text, 0)
    return _Parser(text, dimension, prefix).expr()
