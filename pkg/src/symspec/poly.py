"""Exact polynomial-plus-kinetic operators on R^d.

A :class:`PolynomialOperator` is a finite sum of terms

    c * q_0^a0 * ... * q_{d-1}^a_{d-1} * (p_0^2)^k0 * ... * (p_{d-1}^2)^k_{d-1}

with rational coefficients.  Coordinates and momenta transform identically
under orthogonal coordinate maps with entries in {-1, 0, 1} (signed
permutations), so substitution is exact integer arithmetic.
"""

from __future__ import annotations

import re
from fractions import Fraction

AXIS_NAMES = ("x", "y", "z")


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, float):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"unsupported coefficient type {type(c).__name__}")


class PolynomialOperator:
    """Sum of coordinate monomials times powers of squared momenta."""

    __slots__ = ("dim", "terms")

    def __init__(self, dim, terms=None):
        self.dim = int(dim)
        merged: dict[tuple, Fraction] = {}
        for key, c in (terms or {}).items():
            powers, kin = key
            powers = tuple(int(a) for a in powers)
            kin = tuple(int(k) for k in kin)
            if len(powers) != self.dim or len(kin) != self.dim:
                raise ValueError("term arity does not match operator dimension")
            if any(a < 0 for a in powers) or any(k < 0 for k in kin):
                raise ValueError("negative exponents are not allowed")
            c = _as_fraction(c)
            if c:
                k = (powers, kin)
                merged[k] = merged.get(k, Fraction(0)) + c
        self.terms = {k: c for k, c in merged.items() if c}

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, dim):
        return cls(dim, {})

    @classmethod
    def monomial(cls, dim, powers, coeff=1):
        """c * prod_i q_i^powers[i]."""
        return cls(dim, {(tuple(powers), (0,) * dim): coeff})

    @classmethod
    def kinetic(cls, dim, axis, coeff=1):
        """c * p_axis^2."""
        kin = [0] * dim
        kin[axis] = 1
        return cls(dim, {((0,) * dim, tuple(kin)): coeff})

    @classmethod
    def kinetic_sum(cls, dim, coeff=1):
        """c * (p_0^2 + ... + p_{d-1}^2)."""
        out = cls.zero(dim)
        for ax in range(dim):
            out = out + cls.kinetic(dim, ax, coeff)
        return out

    # -- ring-ish operations ------------------------------------------

    def __add__(self, other):
        if not isinstance(other, PolynomialOperator):
            return NotImplemented
        if other.dim != self.dim:
            raise ValueError("dimension mismatch")
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms.get(k, Fraction(0)) + c
        return PolynomialOperator(self.dim, terms)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return PolynomialOperator(self.dim, {k: -c for k, c in self.terms.items()})

    def scaled(self, c):
        c = _as_fraction(c)
        return PolynomialOperator(self.dim, {k: c * v for k, v in self.terms.items()})

    def __eq__(self, other):
        return (isinstance(other, PolynomialOperator)
                and self.dim == other.dim and self.terms == other.terms)

    def __hash__(self):
        return hash((self.dim, tuple(sorted(self.terms.items()))))

    @property
    def is_zero(self):
        return not self.terms

    def max_power(self, axis):
        """Largest coordinate exponent appearing on one axis."""
        return max((k[0][axis] for k in self.terms), default=0)

    def bandwidth(self, axis):
        """Index reach of the operator along one axis (q^a moves <= a, p^2 moves <= 2)."""
        return max((k[0][axis] + 2 * k[1][axis] for k in self.terms), default=0)

    # -- coordinate maps ----------------------------------------------

    def substituted(self, matrix):
        """Exact substitution q_k -> sum_j matrix[k][j] q_j for a signed permutation.

        Momenta transform with the same matrix.
        """
        rows = [tuple(int(v) for v in row) for row in matrix]
        if len(rows) != self.dim or any(len(r) != self.dim for r in rows):
            raise ValueError("matrix shape does not match dimension")
        targets = []
        for k, row in enumerate(rows):
            nz = [j for j, v in enumerate(row) if v != 0]
            if len(nz) != 1 or row[nz[0]] not in (-1, 1):
                raise ValueError("coordinate map must be a signed permutation")
            targets.append((nz[0], row[nz[0]]))
        terms: dict[tuple, Fraction] = {}
        for (powers, kin), c in self.terms.items():
            new_p = [0] * self.dim
            new_k = [0] * self.dim
            sign = 1
            for ax in range(self.dim):
                j, s = targets[ax]
                new_p[j] += powers[ax]
                new_k[j] += kin[ax]
                if s < 0 and powers[ax] % 2 == 1:
                    sign = -sign
            key = (tuple(new_p), tuple(new_k))
            terms[key] = terms.get(key, Fraction(0)) + sign * c
        return PolynomialOperator(self.dim, terms)

    # -- text ----------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (powers, kin), c in sorted(self.terms.items()):
            factors = []
            if c != 1 or (not any(powers) and not any(kin)):
                factors.append(str(c))
            for ax, a in enumerate(powers):
                if a == 1:
                    factors.append(AXIS_NAMES[ax])
                elif a > 1:
                    factors.append(f"{AXIS_NAMES[ax]}^{a}")
            for ax, k in enumerate(kin):
                tok = f"p{AXIS_NAMES[ax]}2"
                factors.extend([tok] * k)
            parts.append("*".join(factors))
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"PolynomialOperator({self.dim}, {self})"


_TERM_SPLIT = re.compile(r"(?=[+-])")
_FACTOR = re.compile(
    r"^(?:(?P<coef>\d+(?:/\d+)?|\d*\.\d+)|p(?P<kaxis>[xyz])2|(?P<axis>[xyz])(?:\^(?P<pow>\d+))?)$"
)


def parse_polynomial(text, dim):
    """Parse e.g. ``"px2 + py2 + x^4 + 2*y^4"`` or ``"z*x + z*y"``.

    Grammar: sum of terms; a term is '*'-separated factors, each either a
    rational/decimal coefficient, an axis power ``x^4``, or a squared
    momentum ``px2``.  Parentheses are not supported.
    """
    cleaned = text.replace(" ", "")
    if not cleaned:
        raise ValueError("empty polynomial")
    out = PolynomialOperator.zero(dim)
    for chunk in _TERM_SPLIT.split(cleaned):
        if not chunk:
            continue
        sign = 1
        if chunk[0] in "+-":
            sign = -1 if chunk[0] == "-" else 1
            chunk = chunk[1:]
        if not chunk:
            raise ValueError(f"dangling sign in {text!r}")
        coeff = Fraction(sign)
        powers = [0] * dim
        kin = [0] * dim
        for factor in chunk.split("*"):
            m = _FACTOR.match(factor)
            if not m:
                raise ValueError(f"cannot parse factor {factor!r} in {text!r}")
            if m.group("coef"):
                coeff *= Fraction(m.group("coef"))
            elif m.group("kaxis"):
                ax = AXIS_NAMES.index(m.group("kaxis"))
                if ax >= dim:
                    raise ValueError(f"axis {m.group('kaxis')!r} outside dimension {dim}")
                kin[ax] += 1
            else:
                ax = AXIS_NAMES.index(m.group("axis"))
                if ax >= dim:
                    raise ValueError(f"axis {m.group('axis')!r} outside dimension {dim}")
                powers[ax] += int(m.group("pow") or 1)
        out = out + PolynomialOperator(dim, {(tuple(powers), tuple(kin)): coeff})
    return out
