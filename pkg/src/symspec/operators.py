"""Analytic 1-D matrix elements and assembly of symmetry-blocked Hamiltonians.

Harmonic elements come from ladder-operator algebra in the p^2 + q^2
eigenbasis (dilated by an optional length scale); box elements on [-1, 1] come
from exact integration-by-parts recurrences and are available both as floats
and as exact polynomials in pi^2 with rational coefficients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np
import scipy.sparse as sp

from .basis import BasisBlock, ProductBasis, product_basis
from .groups import CharacterTable, transform_polynomial
from .poly import PolynomialOperator

MAX_POSITION_POWER = 8


class PiPoly:
    """Laurent polynomial in pi with Fraction coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {int(k): Fraction(v) for k, v in (terms or {}).items() if v}

    @classmethod
    def const(cls, c):
        return cls({0: Fraction(c)})

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, Fraction(0)) + v
        return PiPoly(out)

    def __sub__(self, other):
        return self + other.scaled(-1)

    def __mul__(self, other):
        out = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                k = k1 + k2
                out[k] = out.get(k, Fraction(0)) + v1 * v2
        return PiPoly(out)

    def scaled(self, c):
        return PiPoly({k: Fraction(c) * v for k, v in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, PiPoly) and self.terms == other.terms

    def __float__(self):
        return float(sum(float(v) * math.pi ** k for k, v in self.terms.items()))

    @property
    def is_zero(self):
        return not self.terms

    def __repr__(self):
        if not self.terms:
            return "PiPoly(0)"
        return "PiPoly(" + " + ".join(
            f"({v})*pi^{k}" for k, v in sorted(self.terms.items())) + ")"


# ---------------------------------------------------------------------------
# harmonic family: ladder algebra in the p^2 + q^2 eigenbasis
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def harmonic_q_matrix(nmax, power, scale=1.0):
    """<n|q^power|m> for n,m <= nmax; exact (not truncated) matrix elements."""
    if power < 0 or power > MAX_POSITION_POWER:
        raise ValueError(f"unsupported position power {power} (max {MAX_POSITION_POWER})")
    big = nmax + power + 1
    q = np.zeros((big, big))
    for n in range(big - 1):
        q[n, n + 1] = q[n + 1, n] = scale * math.sqrt((n + 1) / 2.0)
    m = np.linalg.matrix_power(q, power)
    return m[: nmax + 1, : nmax + 1]


@lru_cache(maxsize=None)
def harmonic_p2_matrix(nmax, scale=1.0):
    """<n|p^2|m>: diagonal (2n+1)/(2 s^2), off-diagonal -sqrt((n+1)(n+2))/(2 s^2)."""
    m = np.zeros((nmax + 1, nmax + 1))
    for n in range(nmax + 1):
        m[n, n] = (2 * n + 1) / (2.0 * scale * scale)
    for n in range(nmax - 1):
        m[n, n + 2] = m[n + 2, n] = -math.sqrt((n + 1) * (n + 2)) / (2.0 * scale * scale)
    return m


# ---------------------------------------------------------------------------
# box family: exact closed forms on [-1, 1]
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _cos_moment(mm, a):
    """integral_0^1 (2u-1)^a cos(mm*pi*u) du as a PiPoly, for integer mm."""
    if mm == 0:
        return PiPoly.const(Fraction(1, a + 1)) if a % 2 == 0 else PiPoly()
    if a == 0:
        return PiPoly()
    # d/du sin(mm*pi*u): boundary terms vanish at u=0,1
    return _sin_moment(mm, a - 1).scaled(Fraction(-2 * a, mm)) * PiPoly({-1: 1})


@lru_cache(maxsize=None)
def _sin_moment(mm, b):
    """integral_0^1 (2u-1)^b sin(mm*pi*u) du as a PiPoly, for integer mm != 0."""
    sgn_b = 1 if b % 2 == 0 else -1
    sgn_m = 1 if mm % 2 == 0 else -1
    boundary = PiPoly({-1: Fraction(sgn_b - sgn_m, mm)})
    if b == 0:
        return boundary
    return boundary + _cos_moment(mm, b - 1).scaled(Fraction(2 * b, mm)) * PiPoly({-1: 1})


@lru_cache(maxsize=None)
def box_q_power_exact(n, m, power):
    """<n|q^power|m> over sin(k*pi*(q+1)/2) modes on [-1, 1], exact."""
    if power < 0 or power > MAX_POSITION_POWER:
        raise ValueError(f"unsupported position power {power} (max {MAX_POSITION_POWER})")
    if n < 1 or m < 1:
        raise ValueError("box indices start at 1")
    if power == 0:
        return PiPoly.const(1) if n == m else PiPoly()
    # 2 sin(n pi u) sin(m pi u) = cos((n-m) pi u) - cos((n+m) pi u), u=(q+1)/2
    return _cos_moment(n - m, power) - _cos_moment(n + m, power)


def box_p2_exact(n, m):
    """<n|p^2|m> = delta_nm * pi^2 n^2 / 4."""
    if n == m:
        return PiPoly({2: Fraction(n * n, 4)})
    return PiPoly()


@lru_cache(maxsize=None)
def box_q_matrix(nmax, power):
    m = np.zeros((nmax, nmax))
    for n in range(1, nmax + 1):
        for k in range(n, nmax + 1):
            v = float(box_q_power_exact(n, k, power))
            m[n - 1, k - 1] = m[k - 1, n - 1] = v
    return m


@lru_cache(maxsize=None)
def box_p2_matrix(nmax):
    return np.diag([math.pi ** 2 * n * n / 4.0 for n in range(1, nmax + 1)])


# ---------------------------------------------------------------------------
# unified 1-D element access
# ---------------------------------------------------------------------------

def me_1d(kind, n, m, observable, scale=1.0):
    """Single 1-D matrix element.

    ``observable`` is an integer position power a (meaning q^a) or the string
    ``"p2"``.  For the box family indices start at 1 and the scale must be 1.
    """
    if observable == "p2":
        ob = ("p2",)
    elif isinstance(observable, int):
        ob = ("q", observable)
    else:
        raise ValueError(f"unsupported observable {observable!r}; use an int power or 'p2'")
    if kind == "harmonic":
        if ob[0] == "p2":
            return float(harmonic_p2_matrix(max(n, m), scale)[n, m])
        return float(harmonic_q_matrix(max(n, m), ob[1], scale)[n, m])
    if kind == "box":
        if scale != 1.0:
            raise ValueError("box modes take no scale parameter")
        if ob[0] == "p2":
            return float(box_p2_exact(n, m))
        return float(box_q_power_exact(n, m, ob[1]))
    raise ValueError(f"unknown mode family {kind!r}")


def mode_matrix_1d(kind, cutoff, observable, scale=1.0):
    """Dense 1-D operator matrix over the index range of the family."""
    if kind == "harmonic":
        if observable == "p2":
            return harmonic_p2_matrix(cutoff, scale)
        return harmonic_q_matrix(cutoff, observable, scale)
    if kind == "box":
        if observable == "p2":
            return box_p2_matrix(cutoff)
        return box_q_matrix(cutoff, observable)
    raise ValueError(f"unknown mode family {kind!r}")


# ---------------------------------------------------------------------------
# product-basis assembly
# ---------------------------------------------------------------------------

def product_operator_matrix(p: PolynomialOperator, basis: ProductBasis, scale=1.0):
    """Sparse matrix of a polynomial-plus-kinetic operator on a product basis."""
    n1 = len(list(_axis_range(basis)))
    total = None
    for (powers, kin), c in sorted(p.terms.items()):
        factors = []
        for ax in range(basis.dim):
            a, k = powers[ax], kin[ax]
            if a and k:
                raise ValueError(
                    "mixed q^a * p^2 factors on one axis are not supported")
            if k > 1:
                raise ValueError("powers of p^2 above 1 are not supported")
            if k:
                factors.append(sp.csr_matrix(mode_matrix_1d(basis.kind, basis.cutoff,
                                                            "p2", scale)))
            elif a:
                factors.append(sp.csr_matrix(mode_matrix_1d(basis.kind, basis.cutoff,
                                                            a, scale)))
            else:
                factors.append(sp.identity(n1, format="csr"))
        term = factors[0]
        for f in factors[1:]:
            term = sp.kron(term, f, format="csr")
        term = term * float(c)
        total = term if total is None else total + term
    if total is None:
        n = len(basis)
        return sp.csr_matrix((n, n))
    return total.tocsr()


def _axis_range(basis: ProductBasis):
    from .basis import index_range

    return index_range(basis.kind, basis.cutoff)


def block_matrices(model, block: BasisBlock):
    """Dense symmetric (H0_block, Hprime_block) in the adapted basis."""
    _check_block(model, block)
    cols = block.column_matrix()
    h0 = product_operator_matrix(model.h0, block.basis, model.scale)
    hp = product_operator_matrix(model.hprime, block.basis, model.scale)
    b0 = (cols.T @ h0 @ cols).toarray()
    bp = (cols.T @ hp @ cols).toarray()
    return 0.5 * (b0 + b0.T), 0.5 * (bp + bp.T)


def _check_block(model, block: BasisBlock):
    if block.table.name != model.subgroup.name:
        raise ValueError(
            f"block was adapted with {block.table.name} but the model "
            f"diagonalizes in {model.subgroup.name}")
    if block.basis.kind != model.kind:
        raise ValueError("block mode family does not match the model")
    if block.table.irrep_dim(block.irrep) > 1:
        raise ValueError(
            f"irrep {block.irrep} has dimension > 1; assemble blocks in a "
            "subgroup with one-dimensional irreps")


@dataclass
class MatrixBlock:
    """One complex-symmetric Hamiltonian block H0 + i*g*H' at fixed g."""

    irrep: str
    matrix: np.ndarray
    g: float
    model_name: str
    cutoff: int

    def validate(self, tol=1e-13):
        m = self.matrix
        scale = max(np.abs(m).max(), 1.0)
        asym = np.abs(m - m.T).max()
        if asym > tol * scale:
            raise AssertionError(f"block is not complex symmetric ({asym:.2e})")
        if self.g == 0 and np.abs(m.imag).max() > tol * scale:
            raise AssertionError("block must be real at g = 0")
        return self


def build_block(model, block: BasisBlock, g):
    """Assemble <f_j|H0|f_k> + i*g*<f_j|H'|f_k> over one adapted block."""
    b0, bp = block_matrices(model, block)
    m = b0.astype(complex) + 1j * float(g) * bp
    return MatrixBlock(block.irrep, m, float(g), model.name, block.basis.cutoff).validate()


# ---------------------------------------------------------------------------
# model specification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ModelSpec:
    """A non-Hermitian model H = H0 + i*g*H' with its symmetry bookkeeping."""

    name: str
    dim: int
    kind: str
    h0: PolynomialOperator
    hprime: PolynomialOperator
    group: CharacterTable
    subgroup: CharacterTable
    scale: float = 1.0
    description: str = ""
    dynamical_ops: tuple = ()

    def __post_init__(self):
        if self.h0.dim != self.dim or self.hprime.dim != self.dim:
            raise ValueError(f"{self.name}: operator dimensions do not match")
        if self.group.dim != self.dim or self.subgroup.dim != self.dim:
            raise ValueError(f"{self.name}: group dimension does not match")
        for op in self.subgroup.ops():
            if not self.group.has_op_matrix(op.matrix):
                raise ValueError(
                    f"{self.name}: subgroup op {op.label} is not a group operation")
        for op in self.group.ops():
            if transform_polynomial(op, self.h0) != self.h0:
                raise ValueError(f"{self.name}: H0 is not invariant under {op.label}")
        for op in self.subgroup.ops():
            if transform_polynomial(op, self.hprime) != self.hprime:
                raise ValueError(
                    f"{self.name}: H' is not invariant under subgroup op {op.label}")

    def basis(self, cutoff):
        return product_basis(self.kind, self.dim, cutoff)

    def adapted_block(self, irrep, cutoff):
        from .basis import symmetry_adapt

        return symmetry_adapt(self.basis(cutoff), self.subgroup, irrep,
                              for_diagonalization=True)


# ---------------------------------------------------------------------------
# dynamical symmetry
# ---------------------------------------------------------------------------

@dataclass
class DynamicalSymmetryReport:
    commutator_norm: float
    interior_dim: int
    coupling: dict = field(default_factory=dict)

    @property
    def commutes(self):
        return self.interior_dim > 0 and self.commutator_norm < 1e-10


def dynamical_symmetry_check(op: PolynomialOperator, model, cutoff, tol=1e-10):
    """Test [H0, O] on the truncation interior and map irrep-to-irrep coupling.

    The commutator norm is evaluated on rows and columns whose images under
    both operators stay inside the per-axis cutoff; the coupling map projects
    O onto the full-group adapted blocks.
    """
    from .basis import adapt_all

    basis = model.basis(cutoff)
    h0 = product_operator_matrix(model.h0, basis, model.scale)
    o = product_operator_matrix(op, basis, model.scale)
    comm = (h0 @ o - o @ h0).toarray()
    margins = [max(model.h0.bandwidth(ax), op.bandwidth(ax)) for ax in range(model.dim)]
    hi = basis.cutoff
    interior = [i for i, idx in enumerate(basis.functions)
                if all(n + margins[ax] <= hi for ax, n in enumerate(idx))]
    if interior:
        sub = comm[np.ix_(interior, interior)]
        norm = float(np.abs(sub).max())
    else:
        norm = float("nan")
    blocks = adapt_all(basis, model.group)
    onorm = max(float(np.abs(o.toarray()).max()), 1.0)
    coupling = {}
    for ia, ba in blocks.items():
        ca = ba.column_matrix()
        for ib, bb in blocks.items():
            if len(ba) == 0 or len(bb) == 0:
                continue
            x = (ca.T @ o @ bb.column_matrix()).toarray()
            if np.abs(x).max() > tol * onorm:
                coupling.setdefault(ia, set()).add(ib)
    return DynamicalSymmetryReport(norm, len(interior),
                                   {k: tuple(sorted(v)) for k, v in coupling.items()})


# ---------------------------------------------------------------------------
# matrix text export
# ---------------------------------------------------------------------------

def format_matrix(m: np.ndarray):
    """Dimensions header, then rows of re,im pairs."""
    m = np.asarray(m, dtype=complex)
    lines = [f"{m.shape[0]} {m.shape[1]}"]
    for row in m:
        lines.append(" ".join(f"{v.real:.16e},{v.imag:.16e}" for v in row))
    return "\n".join(lines) + "\n"
