"""1-D mode families, tensor-product bases and symmetry adaptation.

Two mode families are supported:

* ``harmonic``: eigenfunctions of p^2 + q^2, optionally dilated q -> q/s;
  mode n has parity (-1)^n.  Indices run 0..cutoff.
* ``box``: sin(n*pi*(q+1)/2) on [-1, 1]; mode n has parity (-1)^(n+1).
  Indices run 1..cutoff.

Point-group operations act on product functions as signed permutations of the
multi-index, so irrep projection, orthonormalization and purity checks are all
exact rational arithmetic.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .groups import CharacterTable, SymmetryOp

KINDS = ("harmonic", "box")


def _check_kind(kind):
    if kind not in KINDS:
        raise ValueError(f"unknown mode family {kind!r}; expected one of {KINDS}")


def parity_exponent(kind, n):
    """phi_n(-q) = (-1)**parity_exponent(kind, n) * phi_n(q)."""
    _check_kind(kind)
    return n if kind == "harmonic" else n + 1


def index_range(kind, cutoff):
    _check_kind(kind)
    if kind == "harmonic":
        if cutoff < 0:
            raise ValueError("harmonic cutoff must be >= 0")
        return range(0, cutoff + 1)
    if cutoff < 1:
        raise ValueError("box cutoff must be >= 1")
    return range(1, cutoff + 1)


def mode_value(kind, n, x, scale=1.0):
    """Evaluate a single normalized 1-D mode (used by quadrature cross-checks)."""
    _check_kind(kind)
    x = np.asarray(x, dtype=float)
    if kind == "box":
        return np.sin(n * np.pi * (x + 1.0) / 2.0)
    t = x / scale
    h0 = np.pi ** -0.25 * np.exp(-t * t / 2.0)
    if n == 0:
        return h0 / math.sqrt(scale)
    h1 = math.sqrt(2.0) * t * h0
    for k in range(2, n + 1):
        h0, h1 = h1, math.sqrt(2.0 / k) * t * h1 - math.sqrt((k - 1) / k) * h0
    return h1 / math.sqrt(scale)


@dataclass(frozen=True)
class ProductBasis:
    """All multi-indices with each component within the per-axis cutoff."""

    kind: str
    dim: int
    cutoff: int
    functions: tuple = field(repr=False)

    def position(self, idx):
        return self._pos[idx]

    def __post_init__(self):
        object.__setattr__(self, "_pos", {t: i for i, t in enumerate(self.functions)})

    def __len__(self):
        return len(self.functions)


def product_basis(kind, dim, cutoff):
    """Lexicographically ordered tensor-product basis."""
    if dim not in (2, 3):
        raise ValueError("dimension must be 2 or 3")
    rng = index_range(kind, cutoff)
    funcs = tuple(itertools.product(rng, repeat=dim))
    return ProductBasis(kind, dim, cutoff, funcs)


def act_on_index(matrix, idx, kind):
    """Image (sign, multi-index) of a product function under a coordinate map."""
    d = len(idx)
    out = [0] * d
    sign = 1
    for k in range(d):
        row = matrix[k]
        for j in range(d):
            if row[j]:
                out[j] = idx[k]
                if row[j] < 0 and parity_exponent(kind, idx[k]) % 2 == 1:
                    sign = -sign
                break
    return sign, tuple(out)


@dataclass(frozen=True)
class AdaptedFunction:
    """Unit-norm combination of product functions transforming within one irrep.

    The function is sum_i weights[i] * phi_{indices[i]} / sqrt(norm2) with
    integer-valued Fraction weights, so coefficients are exact rationals times
    the square root of a rational.
    """

    irrep: str
    weights: tuple          # ((Fraction, multi-index), ...) sorted by index
    norm2: Fraction
    seed: tuple
    provenance: str

    def coefficients(self):
        s = 1.0 / math.sqrt(float(self.norm2))
        return [(float(w) * s, idx) for w, idx in self.weights]

    def support(self):
        return tuple(idx for _, idx in self.weights)

    def transformed_weights(self, op: SymmetryOp, kind):
        out = {}
        for w, idx in self.weights:
            sgn, im = act_on_index(op.matrix, idx, kind)
            out[im] = out.get(im, Fraction(0)) + sgn * w
        return {k: v for k, v in out.items() if v}


@dataclass(frozen=True)
class BasisBlock:
    """Ordered orthonormal symmetry-adapted functions for one irrep."""

    irrep: str
    functions: tuple
    basis: ProductBasis
    table: CharacterTable

    def __len__(self):
        return len(self.functions)

    def column_matrix(self):
        """Sparse (len(basis) x len(block)) matrix of numeric coefficients."""
        import scipy.sparse as sp

        data, rows, cols = [], [], []
        for j, f in enumerate(self.functions):
            for c, idx in f.coefficients():
                rows.append(self.basis.position(idx))
                cols.append(j)
                data.append(c)
        return sp.csr_matrix((data, (rows, cols)),
                             shape=(len(self.basis), len(self.functions)))


def _orbit_key(matrixes, idx, kind):
    imgs = {act_on_index(m, idx, kind)[1] for m in matrixes}
    return min(imgs)


def symmetry_adapt(basis: ProductBasis, table: CharacterTable, irrep,
                   for_diagonalization=False):
    """Project the product basis onto one irrep and orthonormalize.

    Applies the character projector to every seed function in lexicographic
    order, discards vanishing images, and orthonormalizes the survivors by
    exact Gram-Schmidt within each group orbit (distinct orbits have disjoint
    support and are orthogonal automatically).
    """
    if irrep not in table.irreps:
        raise KeyError(f"{table.name}: unknown irrep {irrep!r}")
    if table.dim != basis.dim:
        raise ValueError("group dimension does not match basis dimension")
    d = table.irrep_dim(irrep)
    if for_diagonalization and d > 1:
        raise ValueError(
            f"irrep {irrep} of {table.name} has dimension {d}; Hamiltonian blocks "
            "are only assembled for one-dimensional irreps -- diagonalize in a "
            "subgroup with one-dimensional irreps instead (e.g. C2v_modified, "
            "C2, Cs, C2h)")
    order = table.order
    weighted_ops = []
    for cls in table.classes:
        chi = table.character(irrep, cls.name)
        if chi:
            weighted_ops.extend((chi, op.matrix) for op in cls.ops)
    all_mats = [op.matrix for op in table.ops()]
    accepted: dict[tuple, list] = {}
    out = []
    for seed in basis.functions:
        img: dict[tuple, Fraction] = {}
        for chi, m in weighted_ops:
            sgn, idx = act_on_index(m, seed, basis.kind)
            img[idx] = img.get(idx, Fraction(0)) + chi * sgn
        img = {k: Fraction(d, order) * v for k, v in img.items() if v}
        if not img:
            continue
        okey = _orbit_key(all_mats, seed, basis.kind)
        img = _project_out(img, accepted.get(okey, ()))
        if not img:
            continue
        norm2 = sum(v * v for v in img.values())
        accepted.setdefault(okey, []).append((norm2, dict(img)))
        lead = min(img)
        if img[lead] < 0:
            img = {k: -v for k, v in img.items()}
        weights = tuple(sorted(img.items(), key=lambda kv: kv[0]))
        weights = tuple((v, k) for k, v in weights)
        out.append(AdaptedFunction(
            irrep=irrep,
            weights=weights,
            norm2=norm2,
            seed=seed,
            provenance=f"{table.name}:{irrep} projector on seed {seed}",
        ))
    return BasisBlock(irrep, tuple(out), basis, table)


def _project_out(img, prev_list):
    """Exact Gram-Schmidt step: remove components along accepted functions."""
    vec = dict(img)
    for norm2, prev in prev_list:
        dot = sum(v * prev.get(k, 0) for k, v in vec.items())
        if dot:
            r = Fraction(dot, norm2)
            for k, pv in prev.items():
                nv = vec.get(k, Fraction(0)) - r * pv
                if nv:
                    vec[k] = nv
                else:
                    vec.pop(k, None)
    return {k: v for k, v in vec.items() if v}


def adapt_all(basis: ProductBasis, table: CharacterTable, for_diagonalization=False):
    """Blocks for every irrep; together they span the product basis."""
    blocks = {irr: symmetry_adapt(basis, table, irr, for_diagonalization)
              for irr in table.irreps}
    total = sum(len(b) for b in blocks.values())
    if total != len(basis):
        raise AssertionError(
            f"adapted blocks span {total} functions but the basis has {len(basis)}")
    return blocks


def classify_h0_level(kind, indices, table: CharacterTable):
    """Irrep content of the eigenspace spanned by all distinct permutations.

    ``indices`` is one multi-index of a separable H0 eigenfunction; the level
    consists of every distinct permutation of it.  The content follows from the
    character of the signed-permutation action on that span.
    """
    _check_kind(kind)
    members = sorted(set(itertools.permutations(indices)))
    if table.dim != len(indices):
        raise ValueError("group dimension does not match the multi-index")
    pos = {m: i for i, m in enumerate(members)}
    out = Counter()
    order = table.order
    for irr in table.irreps:
        acc = 0
        for cls in table.classes:
            chi = table.character(irr, cls.name)
            if chi == 0:
                continue
            tr = 0
            for op in cls.ops:
                for m in members:
                    sgn, im = act_on_index(op.matrix, m, kind)
                    if im == m:
                        tr += sgn
                    if im not in pos:
                        raise AssertionError("group action leaves the level span")
            acc += chi * tr
        mult, rem = divmod(acc, order)
        if rem:
            raise AssertionError("non-integer multiplicity in level classification")
        if mult:
            out[irr] = mult
    if sum(m * table.irrep_dim(i) for i, m in out.items()) != len(members):
        raise AssertionError("level content does not match the span dimension")
    return out


# ---------------------------------------------------------------------------
# text serialization
# ---------------------------------------------------------------------------

def _coeff_str(w: Fraction, norm2: Fraction):
    # w / sqrt(norm2) rendered exactly as sign * sqrt(w^2/norm2)
    sq = Fraction(w * w, norm2)
    s = "-" if w < 0 else ""
    if sq.denominator == 1 and math.isqrt(sq.numerator) ** 2 == sq.numerator:
        return f"{s}{math.isqrt(sq.numerator)}"
    return f"{s}sqrt({sq})"


def format_block(block: BasisBlock):
    """Line-oriented dump: header, then one adapted function per line."""
    lines = [f"irrep {block.irrep}  kind {block.basis.kind}  cutoff {block.basis.cutoff}"]
    for f in block.functions:
        pairs = "  ".join(
            f"{_coeff_str(w, f.norm2)} {','.join(map(str, idx))}" for w, idx in f.weights)
        lines.append(pairs)
    return "\n".join(lines) + "\n"
