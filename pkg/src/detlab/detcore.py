"""Exact determinants over rationals and polynomials.

Entries of a :class:`Matrix` are either all exact scalars (``int`` /
``Fraction``) or all :class:`~detlab.algebra.MultiPoly`.  Indexing is 0-based.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

from .algebra import MultiPoly, as_scalar
from .errors import MatrixIndexError, NotEvenError, SizeLimitError
from .report import FAIL, PASS, CheckResult

PERMUTATION_LIMIT = 9
COFACTOR_LIMIT = 4


class Matrix:
    """Immutable square matrix."""

    __slots__ = ("rows", "n")

    def __init__(self, rows):
        rows = tuple(tuple(r) for r in rows)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("matrix must be square")
        self.rows = rows
        self.n = n

    @classmethod
    def from_function(cls, n, f):
        return cls([[f(i, j) for j in range(n)] for i in range(n)])

    @classmethod
    def identity(cls, n):
        return cls.from_function(n, lambda i, j: int(i == j))

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __iter__(self):
        return iter(self.rows)

    def __len__(self):
        return self.n

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.n == other.n and all(
            a == b for ra, rb in zip(self.rows, other.rows) for a, b in zip(ra, rb))

    __hash__ = None

    def __repr__(self):
        return f"Matrix({[[str(e) for e in r] for r in self.rows]})"

    @property
    def is_polynomial(self):
        return any(isinstance(e, MultiPoly) for r in self.rows for e in r)

    def map(self, f):
        return Matrix([[f(e) for e in r] for r in self.rows])

    def transpose(self):
        return Matrix(zip(*self.rows)) if self.n else self

    def submatrix(self, rows, cols):
        return Matrix([[self.rows[i][j] for j in cols] for i in rows])

    def minor(self, del_row, del_col):
        """Matrix with row ``del_row`` and column ``del_col`` removed."""
        if not (0 <= del_row < self.n and 0 <= del_col < self.n):
            raise MatrixIndexError(f"({del_row}, {del_col}) outside {self.n}x{self.n}")
        keep_r = [i for i in range(self.n) if i != del_row]
        keep_c = [j for j in range(self.n) if j != del_col]
        return self.submatrix(keep_r, keep_c)

    def first_difference(self, other):
        """First (i, j) where the entries differ, or ``None``."""
        if self.n != other.n:
            return ("size", self.n, other.n)
        for i in range(self.n):
            for j in range(self.n):
                if self.rows[i][j] != other.rows[i][j]:
                    return (i, j)
        return None


def minor(M, del_row, del_col):
    return M.minor(del_row, del_col)


def _one_like(M):
    for r in M.rows:
        for e in r:
            if isinstance(e, MultiPoly):
                return MultiPoly.const(1, e.variables)
    return 1


def exact_div(a, b):
    """``a / b`` where the quotient is known to lie in the entry ring."""
    if isinstance(a, MultiPoly) or isinstance(b, MultiPoly):
        return MultiPoly.coerce(a).exact_div(b)
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        if not r:
            return q
    return as_scalar(Fraction(a) / b)


def det_fraction_free(M):
    """Bareiss elimination with row pivoting.

    Every division is exact; for polynomial entries a nonzero remainder would
    raise ``NonDivisibleError``.  Small polynomial matrices go through
    cofactor expansion instead, which is cheaper at that size.
    """
    n = M.n
    if n == 0:
        return 1
    if M.is_polynomial and n <= COFACTOR_LIMIT:
        return det_cofactor(M)
    a = [list(r) for r in M.rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if not a[k][k]:
            for r in range(k + 1, n):
                if a[r][k]:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0 * _one_like(M)
        piv = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                num = piv * row_i[j] - aik * row_k[j]
                row_i[j] = exact_div(num, prev) if prev != 1 else num
            row_i[k] = 0
        prev = piv
    det = a[n - 1][n - 1]
    return det if sign > 0 else -det


def det_cofactor(M):
    """Laplace expansion along the first row."""
    n = M.n
    if n == 0:
        return 1
    if n == 1:
        return M.rows[0][0]
    if n == 2:
        (a, b), (c, d) = M.rows
        return a * d - b * c
    total = 0
    for j in range(n):
        e = M.rows[0][j]
        if not e:
            continue
        sub = det_cofactor(M.minor(0, j))
        total = total + e * sub if j % 2 == 0 else total - e * sub
    if isinstance(total, int) and total == 0:
        return 0 * _one_like(M)
    return total


def permutation_sign(perm):
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def det_permutation(M):
    """Sum over the symmetric group of signed products ``a[i][pi(i)]``."""
    n = M.n
    if n > PERMUTATION_LIMIT:
        raise SizeLimitError(f"n={n} exceeds {PERMUTATION_LIMIT} for permutation expansion")
    total = 0 * _one_like(M)
    for perm in permutations(range(n)):
        term = 1
        for i, j in enumerate(perm):
            term = term * M.rows[i][j]
            if not term:
                break
        if term:
            total = total + term if permutation_sign(perm) > 0 else total - term
    return total


@dataclass(frozen=True)
class CondensationResult:
    value: object
    fallback: bool
    zero_minor: tuple | None = None  # (size, i, j) of the first vanishing divisor


def det_condensation_numeric(M):
    """Dodgson condensation on connected minors, scalar entries only.

    Falls back to :func:`det_fraction_free` (and says so) when an interior
    connected minor used as a divisor vanishes.
    """
    n = M.n
    if n == 0:
        return CondensationResult(1, False)
    if M.is_polynomial:
        raise TypeError("condensation evaluator takes scalar entries")
    prev = [[1] * (n + 1) for _ in range(n + 1)]
    cur = [list(r) for r in M.rows]
    for size in range(1, n):
        m = n - size
        nxt = [[0] * m for _ in range(m)]
        for i in range(m):
            for j in range(m):
                d = prev[i + 1][j + 1] if size > 1 else 1
                if not d:
                    return CondensationResult(det_fraction_free(M), True, (size - 1, i + 1, j + 1))
                num = cur[i][j] * cur[i + 1][j + 1] - cur[i][j + 1] * cur[i + 1][j]
                nxt[i][j] = exact_div(num, d)
        prev, cur = cur, nxt
    return CondensationResult(cur[0][0], False)


def det(M):
    """Default determinant."""
    return det_fraction_free(M)


# ---------------------------------------------------------------------------
# rational linear algebra


def rref(rows, ncols):
    """Reduced row echelon form over Q; returns (rows, pivot columns)."""
    a = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(a):
            break
        p = next((i for i in range(r, len(a)) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        row_r = [x * inv for x in a[r]]
        a[r] = row_r
        nz = [k for k in range(c, ncols) if row_r[k]]
        for i in range(len(a)):
            if i != r:
                f = a[i][c]
                if f:
                    row_i = a[i]
                    for k in nz:
                        row_i[k] -= f * row_r[k]
        pivots.append(c)
        r += 1
    return a[:r], pivots


def nullspace(rows, ncols):
    """Basis of the right kernel ``{v : rows @ v = 0}`` over Q."""
    if not rows:
        return [[Fraction(int(i == k)) for i in range(ncols)] for k in range(ncols)]
    red, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


# ---------------------------------------------------------------------------
# Toeplitz determinants of even symbols


def _seq(u):
    u = {int(k): as_scalar(v) for k, v in dict(u).items()}
    for k, v in u.items():
        if u.get(-k, 0) != v:
            raise NotEvenError(f"u[{k}] = {v} but u[{-k}] = {u.get(-k, 0)}")
    return lambda k: u.get(k, 0)


def _toeplitz_hankel(u, size, shift, sign):
    return Matrix.from_function(size, lambda i, j: u(j - i) + sign * u(j + i + shift))


def verify_toeplitz_splitting(u, n):
    """Split ``E_N = det[u_{j-i}]`` for an even sequence into Toeplitz+Hankel factors.

    Checks, for ``N = 2n+1`` and ``N = 2n``::

        E_{2n+1} = 1/2 det[u_{j-i} - u_{j+i+2}]_n  det[u_{j-i} + u_{j+i}]_{n+1}
        E_{2n}   =     det[u_{j-i} - u_{j+i+1}]_n  det[u_{j-i} + u_{j+i+1}]_n

    ``u`` maps integers to values (missing keys are zero).  The details also
    record whether the variant with ``u_{j+i}`` in the last factor of the
    even case holds; it generally does not.
    """
    f = _seq(u)
    toeplitz = lambda size: det_fraction_free(Matrix.from_function(size, lambda i, j: f(j - i)))
    e_odd = toeplitz(2 * n + 1)
    e_even = toeplitz(2 * n)
    odd_rhs = Fraction(1, 2) * det_fraction_free(_toeplitz_hankel(f, n, 2, -1)) \
        * det_fraction_free(_toeplitz_hankel(f, n + 1, 0, 1))
    minus = det_fraction_free(_toeplitz_hankel(f, n, 1, -1))
    even_rhs = minus * det_fraction_free(_toeplitz_hankel(f, n, 1, 1))
    variant = minus * det_fraction_free(_toeplitz_hankel(f, n, 0, 1))
    details = {
        "n": n,
        "E_odd": e_odd, "odd_rhs": as_scalar(odd_rhs),
        "E_even": e_even, "even_rhs": even_rhs,
        "even_variant_rhs": variant, "even_variant_holds": variant == e_even,
    }
    ok_odd = e_odd == odd_rhs
    ok_even = e_even == even_rhs
    if ok_odd and ok_even:
        return CheckResult(PASS, details)
    which = "odd" if not ok_odd else "even"
    return CheckResult(FAIL, details, {"identity": which, "n": n}, "SPLITTING_FAIL")
