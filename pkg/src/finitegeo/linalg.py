"""Exact dense linear algebra over the rationals.

Matrices are lists of lists of Fraction, row major.  Everything here is
plain Gaussian elimination; sizes in this package stay small enough
(a few hundred rows) that no sparse or floating-point machinery is needed.
"""

from fractions import Fraction

from .errors import Infeasible

Matrix = list[list[Fraction]]
Vector = list[Fraction]


def _as_fraction_rows(rows) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def rref(rows) -> tuple[Matrix, list[int], int]:
    """Reduced row echelon form.

    Returns (R, pivots, rank) where pivots[i] is the column of the
    leading 1 in row i of R.
    """
    m = _as_fraction_rows(rows)
    if not m:
        return [], [], 0
    nrows = len(m)
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, nrows):
            if m[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        inv = Fraction(1) / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                factor = m[i][c]
                m[i] = [a - factor * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m, pivots, r


def kernel_basis(rows) -> list[Vector]:
    """Basis of the right null space of the matrix, one vector per free column."""
    if not rows:
        return []
    ncols = len(rows[0])
    R, pivots, rank = rref(rows)
    pivot_set = set(pivots)
    free_cols = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free_cols:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -R[i][fc]
        basis.append(v)
    return basis


def span_basis(vectors) -> list[Vector]:
    """Canonical basis for the span of the given vectors.

    The nonzero rows of the RREF of the matrix whose rows are the vectors.
    Independent of input order and scaling, so subspace equality reduces
    to a plain list comparison.
    """
    R, _, rank = rref(vectors)
    return [row[:] for row in R[:rank]]


def transpose(rows) -> Matrix:
    if not rows:
        return []
    return [[Fraction(rows[i][j]) for i in range(len(rows))] for j in range(len(rows[0]))]


def image_basis(rows) -> list[Vector]:
    """Canonical basis of the column space (the image of the matrix)."""
    return span_basis(transpose(rows))


def matvec(rows: Matrix, v: Vector) -> Vector:
    return [sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in rows]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if not a or not b:
        return []
    ncols = len(b[0])
    bt = [[b[k][j] for k in range(len(b))] for j in range(ncols)]
    return [
        [sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt]
        for row in a
    ]


def identity_matrix(n: int) -> Matrix:
    return [
        [Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)
    ]


def solve_affine(rows, rhs) -> tuple[Vector, list[Vector]]:
    """Solve A x = b exactly.

    Returns (particular_solution, kernel_basis_of_A).  Raises Infeasible
    when the system has no solution.  With an empty kernel the particular
    solution is the unique one.
    """
    a = _as_fraction_rows(rows)
    b = [Fraction(x) for x in rhs]
    if not a:
        if any(x != 0 for x in b):
            raise Infeasible("no columns but nonzero right-hand side")
        return [], []
    ncols = len(a[0])
    aug = [row + [bv] for row, bv in zip(a, b)]
    R, pivots, rank = rref(aug)
    if ncols in pivots:
        raise Infeasible("inconsistent linear system")
    x = [Fraction(0)] * ncols
    for i, pc in enumerate(pivots):
        x[pc] = R[i][ncols]
    return x, kernel_basis(a)


class SubspaceReducer:
    """Incremental echelon form for membership tests against a growing span.

    add(v) reduces v against the rows collected so far and absorbs any
    nonzero remainder; contains(v) checks membership without absorbing.
    """

    def __init__(self, dim: int):
        self.dim = dim
        self.rows: list[Vector] = []
        self.lead: list[int] = []

    def _reduce(self, v: Vector) -> Vector:
        v = [Fraction(x) for x in v]
        for row, lc in zip(self.rows, self.lead):
            if v[lc] != 0:
                factor = v[lc]
                v = [a - factor * b for a, b in zip(v, row)]
        return v

    def add(self, v) -> bool:
        """Absorb v into the span.  Returns True if the rank grew."""
        v = self._reduce(v)
        for c, x in enumerate(v):
            if x != 0:
                inv = Fraction(1) / x
                v = [y * inv for y in v]
                self.rows.append(v)
                self.lead.append(c)
                return True
        return False

    def contains(self, v) -> bool:
        return all(x == 0 for x in self._reduce(v))

    @property
    def rank(self) -> int:
        return len(self.rows)
