"""Finite point groups as concrete coordinate maps, with exact character algebra.

Every operation is an orthogonal matrix with entries in {-1, 0, 1} (a signed
permutation of the coordinates), so composition, conjugacy classes, character
orthogonality, irrep projection and subgroup branching are all exact integer
or rational arithmetic.  Supported groups are the ones needed for the model
families in :mod:`symspec.presets`; O_h is generated from three generators and
closed under composition rather than transcribed.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .poly import PolynomialOperator


def _mat(rows):
    return tuple(tuple(int(v) for v in row) for row in rows)


def _matmul(a, b):
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
        for i in range(n)
    )


def _identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def _det(m):
    n = len(m)
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    if n == 3:
        return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))
    raise ValueError("only 2x2 and 3x3 supported")


def _trace(m):
    return sum(m[i][i] for i in range(len(m)))


def _transpose(m):
    n = len(m)
    return tuple(tuple(m[j][i] for j in range(n)) for i in range(n))


@dataclass(frozen=True)
class SymmetryOp:
    """A labelled signed-permutation coordinate map."""

    label: str
    matrix: tuple

    def __post_init__(self):
        m = _mat(self.matrix)
        object.__setattr__(self, "matrix", m)
        n = len(m)
        if any(len(r) != n for r in m):
            raise ValueError(f"{self.label}: matrix is not square")
        if _matmul(m, _transpose(m)) != _identity(n):
            raise ValueError(f"{self.label}: matrix is not orthogonal")
        if _det(m) not in (-1, 1):
            raise ValueError(f"{self.label}: determinant must be +-1")

    @property
    def dim(self):
        return len(self.matrix)

    @property
    def det(self):
        return _det(self.matrix)

    @property
    def is_identity(self):
        return self.matrix == _identity(self.dim)

    @property
    def is_inversion(self):
        """True for the full coordinate inversion r -> -r."""
        return self.matrix == tuple(tuple(-v for v in row) for row in _identity(self.dim))

    def compose(self, other, label=None):
        """self after other (matrix product)."""
        return SymmetryOp(label or f"{self.label}*{other.label}",
                          _matmul(self.matrix, other.matrix))

    def order(self):
        m = self.matrix
        acc = m
        for k in range(1, 13):
            if acc == _identity(self.dim):
                return k
            acc = _matmul(acc, m)
        raise ValueError("operation order exceeds 12")

    def __str__(self):
        return self.label


@dataclass(frozen=True)
class ConjugacyClass:
    name: str
    ops: tuple

    @property
    def size(self):
        return len(self.ops)

    @property
    def representative(self):
        return self.ops[0]


class CharacterTable:
    """Conjugacy classes, irreps and integer characters of a point group."""

    def __init__(self, name, classes, irreps, characters, totally_symmetric):
        self.name = name
        self.classes = tuple(classes)
        self.irreps = tuple(irreps)
        self.characters = {
            (irr, cls.name): int(characters[i][j])
            for i, irr in enumerate(self.irreps)
            for j, cls in enumerate(self.classes)
        }
        self.totally_symmetric = totally_symmetric
        self._class_by_matrix = {
            op.matrix: cls.name for cls in self.classes for op in cls.ops
        }
        self.validate()

    # -- basic queries --------------------------------------------------

    @property
    def order(self):
        return sum(cls.size for cls in self.classes)

    @property
    def dim(self):
        return self.classes[0].ops[0].dim

    def ops(self):
        for cls in self.classes:
            yield from cls.ops

    def character(self, irrep, cls_name):
        if irrep not in self.irreps:
            raise KeyError(f"{self.name}: unknown irrep {irrep!r}")
        return self.characters[(irrep, cls_name)]

    def irrep_dim(self, irrep):
        return self.character(irrep, self.classes[0].name)

    def class_of(self, op):
        """Class name of an operation given by matrix membership."""
        try:
            return self._class_by_matrix[_mat(op.matrix if isinstance(op, SymmetryOp) else op)]
        except KeyError:
            raise KeyError(f"{self.name}: operation is not a group element") from None

    def has_op_matrix(self, matrix):
        return _mat(matrix) in self._class_by_matrix

    # -- invariants -----------------------------------------------------

    def validate(self):
        order = self.order
        if self.classes[0].representative.matrix != _identity(self.dim):
            raise ValueError(f"{self.name}: first class must be the identity")
        mats = {op.matrix for op in self.ops()}
        if len(mats) != order:
            raise ValueError(f"{self.name}: duplicate operations")
        for a in mats:
            for b in mats:
                if _matmul(a, b) not in mats:
                    raise ValueError(f"{self.name}: operations not closed under composition")
        dims = [self.irrep_dim(irr) for irr in self.irreps]
        if sum(d * d for d in dims) != order:
            raise ValueError(f"{self.name}: sum of squared irrep dimensions != group order")
        for i, gi in enumerate(self.irreps):
            for gj in self.irreps[i:]:
                dot = sum(cls.size * self.character(gi, cls.name) * self.character(gj, cls.name)
                          for cls in self.classes)
                want = order if gi == gj else 0
                if dot != want:
                    raise ValueError(f"{self.name}: rows {gi},{gj} violate orthogonality")
        if self.totally_symmetric not in self.irreps:
            raise ValueError(f"{self.name}: missing totally symmetric irrep")
        if any(self.character(self.totally_symmetric, cls.name) != 1 for cls in self.classes):
            raise ValueError(f"{self.name}: totally symmetric row must be all +1")

    def __repr__(self):
        return f"CharacterTable({self.name}, |G|={self.order})"


# ---------------------------------------------------------------------------
# built-in tables
# ---------------------------------------------------------------------------

def _op(label, rows):
    return SymmetryOp(label, _mat(rows))


def _c4v():
    e = _op("E", [[1, 0], [0, 1]])
    c4 = _op("C4", [[0, 1], [-1, 0]])         # (x,y) -> (y,-x)
    c4_3 = _op("C4^3", [[0, -1], [1, 0]])
    c2 = _op("C2", [[-1, 0], [0, -1]])
    sv = _op("sigma_v", [[-1, 0], [0, 1]])    # (x,y) -> (-x,y)
    svp = _op("sigma_v'", [[1, 0], [0, -1]])
    sd = _op("sigma_d", [[0, 1], [1, 0]])     # (x,y) -> (y,x)
    sdp = _op("sigma_d'", [[0, -1], [-1, 0]])
    classes = [
        ConjugacyClass("E", (e,)),
        ConjugacyClass("2C4", (c4, c4_3)),
        ConjugacyClass("C2", (c2,)),
        ConjugacyClass("2sigma_v", (sv, svp)),
        ConjugacyClass("2sigma_d", (sd, sdp)),
    ]
    chars = [
        [1, 1, 1, 1, 1],     # A1
        [1, 1, 1, -1, -1],   # A2
        [1, -1, 1, 1, -1],   # B1
        [1, -1, 1, -1, 1],   # B2
        [2, 0, -2, 0, 0],    # E
    ]
    return CharacterTable("C4v", classes, ["A1", "A2", "B1", "B2", "E"], chars, "A1")


def _c2v_modified():
    # the C2v realization whose reflections are the coordinate swaps, so that
    # xy is totally symmetric
    e = _op("E", [[1, 0], [0, 1]])
    c2 = _op("C2", [[-1, 0], [0, -1]])
    sd = _op("sigma_d", [[0, 1], [1, 0]])
    sdp = _op("sigma_d'", [[0, -1], [-1, 0]])
    classes = [ConjugacyClass(n, (o,)) for n, o in
               [("E", e), ("C2", c2), ("sigma_d", sd), ("sigma_d'", sdp)]]
    chars = [[1, 1, 1, 1], [1, 1, -1, -1], [1, -1, 1, -1], [1, -1, -1, 1]]
    return CharacterTable("C2v_modified", classes, ["A1", "A2", "B1", "B2"], chars, "A1")


def _c2v():
    e = _op("E", [[1, 0], [0, 1]])
    c2 = _op("C2", [[-1, 0], [0, -1]])
    sv = _op("sigma_v", [[-1, 0], [0, 1]])
    svp = _op("sigma_v'", [[1, 0], [0, -1]])
    classes = [ConjugacyClass(n, (o,)) for n, o in
               [("E", e), ("C2", c2), ("sigma_v", sv), ("sigma_v'", svp)]]
    chars = [[1, 1, 1, 1], [1, 1, -1, -1], [1, -1, 1, -1], [1, -1, -1, 1]]
    return CharacterTable("C2v", classes, ["A1", "A2", "B1", "B2"], chars, "A1")


def _c2():
    e = _op("E", [[1, 0], [0, 1]])
    c2 = _op("C2", [[-1, 0], [0, -1]])
    classes = [ConjugacyClass("E", (e,)), ConjugacyClass("C2", (c2,))]
    return CharacterTable("C2", classes, ["A", "B"], [[1, 1], [1, -1]], "A")


def _cs():
    e = _op("E", [[1, 0], [0, 1]])
    s = _op("sigma", [[1, 0], [0, -1]])  # (x,y) -> (x,-y)
    classes = [ConjugacyClass("E", (e,)), ConjugacyClass("sigma", (s,))]
    return CharacterTable("Cs", classes, ["A'", "A''"], [[1, 1], [1, -1]], "A'")


def _ci():
    e = _op("E", [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    inv = _op("i", [[-1, 0, 0], [0, -1, 0], [0, 0, -1]])
    classes = [ConjugacyClass("E", (e,)), ConjugacyClass("i", (inv,))]
    return CharacterTable("Ci", classes, ["Ag", "Au"], [[1, 1], [1, -1]], "Ag")


def _c2h():
    # realization adapted to a perturbation along z(x+y): the C2 axis lies
    # along (1,-1,0) and the mirror is the x=y plane
    e = _op("E", [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    c2 = _op("C2", [[0, -1, 0], [-1, 0, 0], [0, 0, -1]])   # (x,y,z)->(-y,-x,-z)
    inv = _op("i", [[-1, 0, 0], [0, -1, 0], [0, 0, -1]])
    sh = _op("sigma_h", [[0, 1, 0], [1, 0, 0], [0, 0, 1]])  # (x,y,z)->(y,x,z)
    classes = [ConjugacyClass(n, (o,)) for n, o in
               [("E", e), ("C2", c2), ("i", inv), ("sigma_h", sh)]]
    chars = [[1, 1, 1, 1], [1, -1, 1, -1], [1, 1, -1, -1], [1, -1, -1, 1]]
    return CharacterTable("C2h", classes, ["Ag", "Bg", "Au", "Bu"], chars, "Ag")


def _c2h_z():
    # conventional realization with the C2 axis along z
    e = _op("E", [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    c2 = _op("C2", [[-1, 0, 0], [0, -1, 0], [0, 0, 1]])
    inv = _op("i", [[-1, 0, 0], [0, -1, 0], [0, 0, -1]])
    sh = _op("sigma_h", [[1, 0, 0], [0, 1, 0], [0, 0, -1]])
    classes = [ConjugacyClass(n, (o,)) for n, o in
               [("E", e), ("C2", c2), ("i", inv), ("sigma_h", sh)]]
    chars = [[1, 1, 1, 1], [1, -1, 1, -1], [1, 1, -1, -1], [1, -1, -1, 1]]
    return CharacterTable("C2h_z", classes, ["Ag", "Bg", "Au", "Bu"], chars, "Ag")


_OH_CLASS_ORDER = ["E", "8C3", "6C2", "6C4", "3C2", "i", "6S4", "8S6", "3sigma_h", "6sigma_d"]

_OH_CHARS = {
    "A1g": [1, 1, 1, 1, 1, 1, 1, 1, 1, 1],
    "A2g": [1, 1, -1, -1, 1, 1, -1, 1, 1, -1],
    "Eg":  [2, -1, 0, 0, 2, 2, 0, -1, 2, 0],
    "T1g": [3, 0, -1, 1, -1, 3, 1, 0, -1, -1],
    "T2g": [3, 0, 1, -1, -1, 3, -1, 0, -1, 1],
    "A1u": [1, 1, 1, 1, 1, -1, -1, -1, -1, -1],
    "A2u": [1, 1, -1, -1, 1, -1, 1, -1, -1, 1],
    "Eu":  [2, -1, 0, 0, 2, -2, 0, 1, -2, 0],
    "T1u": [3, 0, -1, 1, -1, -3, -1, 0, 1, 1],
    "T2u": [3, 0, 1, -1, -1, -3, 1, 0, 1, -1],
}


def _oh_class_name(matrix):
    op = SymmetryOp("?", matrix)
    order = op.order()
    diag = all(matrix[i][j] == 0 for i in range(3) for j in range(3) if i != j)
    if op.det == 1:
        if order == 1:
            return "E"
        if order == 3:
            return "8C3"
        if order == 4:
            return "6C4"
        return "3C2" if diag else "6C2"
    if _trace(matrix) == -3:
        return "i"
    if order == 4:
        return "6S4"
    if order == 6:
        return "8S6"
    return "3sigma_h" if diag else "6sigma_d"


def _oh():
    gens = [
        _mat([[0, 1, 0], [-1, 0, 0], [0, 0, 1]]),    # C4 about z
        _mat([[0, 1, 0], [0, 0, 1], [1, 0, 0]]),     # C3 about the (1,1,1) diagonal
        _mat([[-1, 0, 0], [0, -1, 0], [0, 0, -1]]),  # inversion
    ]
    elements = {_identity(3)}
    frontier = list(elements)
    while frontier:
        nxt = []
        for m in frontier:
            for g in gens:
                prod = _matmul(g, m)
                if prod not in elements:
                    elements.add(prod)
                    nxt.append(prod)
        frontier = nxt
    if len(elements) != 48:
        raise AssertionError(f"O_h generation produced {len(elements)} elements")
    buckets: dict[str, list] = {name: [] for name in _OH_CLASS_ORDER}
    for m in sorted(elements):
        buckets[_oh_class_name(m)].append(m)
    # conjugacy must agree with the structural naming
    for name, mats in buckets.items():
        expect = int(name[0]) if name[0].isdigit() else 1
        if len(mats) != expect:
            raise AssertionError(f"O_h class {name} has size {len(mats)}")
        sample = set(mats)
        closed = {_matmul(_matmul(g, mats[0]), _transpose(g)) for g in elements}
        if closed != sample:
            raise AssertionError(f"O_h class {name} is not a conjugacy class")
    classes = [
        ConjugacyClass(name, tuple(
            SymmetryOp(f"{name}#{k}", m) for k, m in enumerate(buckets[name])))
        for name in _OH_CLASS_ORDER
    ]
    irreps = list(_OH_CHARS)
    chars = [_OH_CHARS[irr] for irr in irreps]
    return CharacterTable("Oh", classes, irreps, chars, "A1g")


_BUILDERS = {
    "C2": _c2,
    "Cs": _cs,
    "Ci": _ci,
    "C2v": _c2v,
    "C2v_modified": _c2v_modified,
    "C4v": _c4v,
    "C2h": _c2h,
    "C2h_z": _c2h_z,
    "Oh": _oh,
}

_CACHE: dict[str, CharacterTable] = {}


def builtin_table(name):
    """Return a built-in character table by group name."""
    if name not in _BUILDERS:
        raise KeyError(
            f"unknown group {name!r}; supported groups: {', '.join(sorted(_BUILDERS))}")
    if name not in _CACHE:
        _CACHE[name] = _BUILDERS[name]()
    return _CACHE[name]


def builtin_names():
    return sorted(_BUILDERS)


# ---------------------------------------------------------------------------
# polynomial algebra under the group
# ---------------------------------------------------------------------------

def transform_polynomial(op: SymmetryOp, p: PolynomialOperator):
    """Conjugate a multiplicative/kinetic operator by a point-group operation."""
    return p.substituted(op.matrix)


def classify_polynomial(p: PolynomialOperator, table: CharacterTable):
    """Project a polynomial onto every irrep of the table.

    Returns a dict irrep -> nonzero component; the components sum back to the
    input exactly.
    """
    if p.is_zero:
        raise ValueError("cannot classify the zero polynomial")
    if p.dim != table.dim:
        raise ValueError("polynomial dimension does not match the group")
    order = table.order
    out = {}
    total = PolynomialOperator.zero(p.dim)
    for irr in table.irreps:
        d = table.irrep_dim(irr)
        comp = PolynomialOperator.zero(p.dim)
        for cls in table.classes:
            chi = table.character(irr, cls.name)
            if chi == 0:
                continue
            for op in cls.ops:
                comp = comp + transform_polynomial(op, p).scaled(chi)
        comp = comp.scaled(Fraction(d, order))
        if not comp.is_zero:
            out[irr] = comp
            total = total + comp
    if total != p:
        raise AssertionError("irrep components do not reassemble the input polynomial")
    return out


def decompose_product(table: CharacterTable, irreps):
    """Multiplicities of each irrep in a tensor product of irreps."""
    for irr in irreps:
        if irr not in table.irreps:
            raise KeyError(f"{table.name}: unknown irrep {irr!r}")
    order = table.order
    out = Counter()
    for target in table.irreps:
        acc = 0
        for cls in table.classes:
            prod = 1
            for irr in irreps:
                prod *= table.character(irr, cls.name)
            acc += cls.size * table.character(target, cls.name) * prod
        mult, rem = divmod(acc, order)
        if rem:
            raise AssertionError("non-integer multiplicity in product decomposition")
        if mult:
            out[target] = mult
    return out


def first_order_selection_rule(table: CharacterTable, level_irrep, perturbation_irrep):
    """True iff level x level x perturbation contains the totally symmetric irrep."""
    dec = decompose_product(table, [level_irrep, level_irrep, perturbation_irrep])
    return dec.get(table.totally_symmetric, 0) > 0


# ---------------------------------------------------------------------------
# branching
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BranchingMap:
    parent: CharacterTable
    sub: CharacterTable
    map: dict

    def __getitem__(self, parent_irrep):
        return self.map[parent_irrep]


def branch(parent: CharacterTable, sub: CharacterTable):
    """Decompose each parent irrep over the subgroup.

    The embedding is the concrete-matrix identity: every subgroup operation
    must literally be a parent operation (distinct embeddings of the same
    abstract subgroup are therefore distinct tables).
    """
    for op in sub.ops():
        if not parent.has_op_matrix(op.matrix):
            raise ValueError(
                f"embedding not closed: subgroup op {op.label!r} of {sub.name} "
                f"is not an operation of {parent.name}")
    out = {}
    for irr in parent.irreps:
        restricted = {
            cls.name: parent.character(irr, parent.class_of(cls.representative))
            for cls in sub.classes
        }
        images = Counter()
        for sirr in sub.irreps:
            acc = sum(cls.size * sub.character(sirr, cls.name) * restricted[cls.name]
                      for cls in sub.classes)
            mult, rem = divmod(acc, sub.order)
            if rem:
                raise AssertionError("non-integer branching multiplicity")
            if mult:
                images[sirr] = mult
        if sum(m * sub.irrep_dim(s) for s, m in images.items()) != parent.irrep_dim(irr):
            raise AssertionError(f"branching of {irr} does not preserve dimension")
        out[irr] = images
    return BranchingMap(parent, sub, out)


# ---------------------------------------------------------------------------
# plain-text report
# ---------------------------------------------------------------------------

def format_character_table(table: CharacterTable):
    """Render the table in the usual layout for human diffing."""
    header = [table.name] + [cls.name for cls in table.classes]
    rows = [[irr] + [str(table.character(irr, cls.name)) for cls in table.classes]
            for irr in table.irreps]
    widths = [max(len(r[j]) for r in [header] + rows) for j in range(len(header))]
    lines = ["  ".join(h.ljust(widths[j]) for j, h in enumerate(header))]
    lines.append("-" * len(lines[0]))
    for r in rows:
        lines.append("  ".join(v.rjust(widths[j]) if j else v.ljust(widths[0])
                               for j, v in enumerate(r)))
    return "\n".join(lines) + "\n"
