"""Holonomic ansatz for ``det A_n(m, x)`` at integer specializations.

Row ``n`` of a kernel table holds the normalized kernel vector
``(c_{n,1}, ..., c_{n,n})`` of the top ``n-1`` rows of ``A_n``, where

    a_{i,j} = binom(m+x, m-i+j) - binom(m+x, m-i-j+1),   1 <= i, j <= n.

Entries with ``j > n`` are zero.  The module guesses recurrences from such
tables, checks the two known rank-2 recurrences on them, and rebuilds
``det A_n`` from ``t_n = sum_j a_{n,j} c_{n,j}``.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import lcm

from .algebra import MultiPoly, as_scalar, binom_int
from .catalog import build_matrix, eval_product, tn_closed_form
from .detcore import Matrix, det, nullspace
from .errors import DegenerateKernelError, GammaPoleError, InsufficientDataError, PoleError
from .report import DEGENERATE, FAIL, PASS, SKIPPED_POLE, CheckResult, combine

VARS = ("n", "j")


def a_entry(m, x, i, j):
    """1-based entry of ``A_n(m, x)``."""
    return binom_int(m + x, m - i + j) - binom_int(m + x, m - i - j + 1)


def a_matrix(m, x, n):
    return build_matrix("T", n, m=m, x=x)


@dataclass(frozen=True)
class KernelTable:
    m: int
    x: int
    rows: tuple  # rows[n-1] = (c_{n,1}, ..., c_{n,n})

    @property
    def N(self):
        return len(self.rows)

    def __call__(self, n, j):
        if not 1 <= n <= self.N:
            raise KeyError((n, j))
        if j < 1 or j > n:
            return 0
        return self.rows[n - 1][j - 1]

    def known(self, n):
        return 1 <= n <= self.N

    def with_entry(self, n, j, value):
        rows = [list(r) for r in self.rows]
        rows[n - 1][j - 1] = value
        return KernelTable(self.m, self.x, tuple(tuple(r) for r in rows))


def compute_kernel_table(m, x, N):
    """Kernel vectors normalized to ``c_{n,n} = 1`` for ``n = 1..N``."""
    rows = [(1,)]
    for n in range(2, N + 1):
        top = [[a_entry(m, x, i, j) for j in range(1, n + 1)] for i in range(1, n)]
        basis = nullspace(top, n)
        if len(basis) != 1 or not basis[0][-1]:
            raise DegenerateKernelError(f"kernel at n={n} has dimension {len(basis)}",
                                        n=n, dimension=len(basis), m=m, x=x)
        v = basis[0]
        rows.append(tuple(as_scalar(c / v[-1]) for c in v))
    return KernelTable(m, x, tuple(rows))


def kernel_via_minors(m, x, n):
    """``c_{n,j} = (-1)^{n+j} det A_n^{(n,j)} / det A_{n-1}``."""
    A = a_matrix(m, x, n)
    prev = det(a_matrix(m, x, n - 1)) if n > 1 else 1
    if not prev:
        raise DegenerateKernelError(f"det A_{n - 1} vanishes", n=n)
    return tuple(as_scalar(Fraction((-1) ** (n + j) * det(A.minor(n - 1, j - 1))) / prev)
                 for j in range(1, n + 1))


# ---------------------------------------------------------------------------
# recurrences


@dataclass(frozen=True)
class Recurrence:
    """``sum_k coeff_k(n, j) * c(n + dn_k, j + dj_k) = 0``."""

    support: tuple  # ((dn, dj), ...)
    coefficients: tuple  # MultiPoly over ("n", "j")

    def __post_init__(self):
        if not any(self.coefficients):
            raise ValueError("recurrence needs a nonzero coefficient")

    def apply(self, seq, n, j):
        total = 0
        for (dn, dj), c in zip(self.support, self.coefficients):
            v = seq(n + dn, j + dj)
            if v:
                total += c.evaluate({"n": n, "j": j}) * v
        return as_scalar(total)

    def involved(self, seq, n, j):
        return [seq(n + dn, j + dj) for dn, dj in self.support]

    def coefficient_vector(self, degree):
        out = []
        for c in self.coefficients:
            if c.degree("n") > degree or c.degree("j") > degree:
                raise ValueError("coefficient degree exceeds the ansatz")
            out += [c.coefficient((p, q)) for p in range(degree + 1) for q in range(degree + 1)]
        return out

    def __str__(self):
        return " + ".join(f"({c}) c[n+{dn},j+{dj}]" for (dn, dj), c in zip(self.support, self.coefficients))


def _symbols(m=None, x=None):
    n, j = MultiPoly.var("n", VARS), MultiPoly.var("j", VARS)
    mm = MultiPoly.var("m") if m is None else m
    xx = MultiPoly.var("x") if x is None else x
    return n, j, mm, xx


def _spec(poly, m, x):
    vals = {k: v for k, v in (("m", m), ("x", x)) if v is not None and k in poly.variables}
    out = poly.evaluate(vals) if vals else poly
    if not isinstance(out, MultiPoly):
        return MultiPoly.const(out, VARS)
    return out.with_variables(VARS) if set(out.variables) <= set(VARS) else out


def known_recurrences(m=None, x=None):
    """The two rank-2 recurrences for ``c_{n,j}``, optionally specialized."""
    n, j, m_, x_ = _symbols(m, x)
    p10 = j * (j - n - 1) * (m_ + n) * (2 * n + x_ - 1) * (2 * n + x_)
    p01 = (2 * j - 1) * n * (j - m_) * (2 * n + x_) * (j - n - x_ + 1)
    p00 = n * (j + n + x_ - 1) * (4 * j ** 2 * n - (m_ ** 2 + 4 * n ** 2 - m_) * j - 2 * m_ * n
                                  + (2 * j ** 2 - 4 * j * n - m_) * x_ - j * x_ ** 2)
    q02 = j * (j - m_ + 1) * (j + n + 1) * (j - n - x_ + 2)
    q01 = (2 * j ** 4 + 4 * j ** 3 - j ** 2 * m_ ** 2 - 2 * j ** 2 * n ** 2 - 2 * j ** 2 * n * x_
           + 2 * j ** 2 * n - j ** 2 * x_ ** 2 + 2 * j ** 2 * x_ + 2 * j ** 2 - j * m_ ** 2
           - 2 * j * n ** 2 - 2 * j * n * x_ + 2 * j * n - j * x_ ** 2 + 2 * j * x_
           - m_ * n ** 2 - m_ * n * x_ + m_ * n)
    q00 = (j + 1) * (j + m_) * (j - n) * (j + n + x_ - 1)
    fix = lambda p: _spec(p, m, x)
    return (Recurrence(((1, 0), (0, 1), (0, 0)), (fix(p10), fix(p01), fix(p00))),
            Recurrence(((0, 2), (0, 1), (0, 0)), (fix(q02), fix(q01), fix(q00))))


def tn_recurrence_coefficients(n, m, x):
    """``(lead, trail)`` with ``lead * t_{n+1} + trail * t_n = 0``."""
    lead = (m + n) * (2 * n + x - 1) * (2 * n + x + 1) * (2 * n + x) ** 2 * (m - n - x)
    trail = n * (n + x) * (m - 2 * n - x - 1) * (m - 2 * n - x) * (m + 2 * n + x - 1) * (m + 2 * n + x)
    return lead, trail


def recurrence_points(table, support):
    """``(n, j)`` where every shifted entry is known and not all are zero."""
    max_dn = max(dn for dn, _ in support)
    max_dj = max(dj for _, dj in support)
    pts = []
    for n in range(1, table.N - max_dn + 1):
        for j in range(1, n + max_dj + 2):
            if any(table(n + dn, j + dj) for dn, dj in support):
                pts.append((n, j))
    return pts


def guess_recurrence(table, support, degree=4, margin=1.5):
    """Nullspace of the ansatz ``sum_k sum_{p,q<=degree} u_kpq n^p j^q c(n+dn_k, j+dj_k)``.

    Returns a basis of solutions as :class:`Recurrence` objects (possibly
    empty).  Raises ``InsufficientDataError`` unless the system has at least
    ``margin`` times as many equations as unknowns.
    """
    support = tuple(tuple(s) for s in support)
    monos = [(p, q) for p in range(degree + 1) for q in range(degree + 1)]
    unknowns = len(support) * len(monos)
    pts = recurrence_points(table, support)
    if len(pts) < margin * unknowns:
        raise InsufficientDataError(f"{len(pts)} equations for {unknowns} unknowns",
                                    equations=len(pts), unknowns=unknowns)
    rows = []
    for n, j in pts:
        vals = [table(n + dn, j + dj) for dn, dj in support]
        row = [v * n ** p * j ** q for v in vals for p, q in monos]
        den = lcm(*(Fraction(e).denominator for e in row))
        rows.append([int(e * den) for e in row])
    out = []
    for vec in nullspace(rows, unknowns):
        den = lcm(*(c.denominator for c in vec))
        vec = [int(c * den) for c in vec]
        coeffs = []
        for k in range(len(support)):
            chunk = vec[k * len(monos):(k + 1) * len(monos)]
            coeffs.append(MultiPoly(VARS, {pq: c for pq, c in zip(monos, chunk)}))
        out.append(Recurrence(support, tuple(coeffs)))
    return out


def in_span(basis, rec, degree=4):
    """Whether ``rec`` is a linear combination of the guessed ``basis``."""
    from .detcore import rref

    if not basis:
        return False
    vecs = [b.coefficient_vector(degree) for b in basis]
    target = rec.coefficient_vector(degree)
    ncols = len(target)
    rank = len(rref(vecs, ncols)[1])
    return len(rref(vecs + [target], ncols)[1]) == rank


def annihilates(rec, table):
    violations = []
    for n, j in recurrence_points(table, rec.support):
        r = rec.apply(table, n, j)
        if r:
            violations.append({"n": n, "j": j, "residual": r})
    return violations


def unroll(m, x, N):
    """The sequence defined by the two recurrences and
    ``c_{1,1} = 1, c_{1,2} = 0, c_{2,2} = 1``."""
    rec1, rec2 = known_recurrences(m, x)
    p10, p01, p00 = rec1.coefficients
    q02, q01, q00 = rec2.coefficients
    rows = [[1]]
    ev = lambda poly, n, j: poly.evaluate({"n": n, "j": j})
    get = lambda n, j: rows[n - 1][j - 1] if 1 <= j <= len(rows[n - 1]) else 0
    for N_ in range(2, N + 1):
        row = []
        for j in range(1, N_):
            lead = ev(p10, N_ - 1, j)
            if not lead:
                raise DegenerateKernelError(f"unrolling stalls at c[{N_},{j}]", n=N_, j=j)
            rhs = -(ev(p01, N_ - 1, j) * get(N_ - 1, j + 1) + ev(p00, N_ - 1, j) * get(N_ - 1, j))
            row.append(as_scalar(Fraction(rhs) / lead))
        if N_ == 2:
            row.append(1)
        else:
            c = lambda j: row[j - 1]
            lead = ev(q02, N_, N_ - 2)
            if lead:
                val = -(ev(q01, N_, N_ - 2) * c(N_ - 1) + ev(q00, N_, N_ - 2) * c(N_ - 2))
                row.append(as_scalar(Fraction(val) / lead))
            elif ev(q01, N_, N_ - 1):
                val = -ev(q00, N_, N_ - 1) * c(N_ - 1)
                row.append(as_scalar(Fraction(val) / ev(q01, N_, N_ - 1)))
            else:
                raise DegenerateKernelError(f"unrolling stalls at c[{N_},{N_}]", n=N_, j=N_)
        rows.append(row)
    return KernelTable(m, x, tuple(tuple(r) for r in rows))


# ---------------------------------------------------------------------------
# verifiers


def _table_or_degenerate(m, x, N):
    try:
        return compute_kernel_table(m, x, N), None
    except DegenerateKernelError as exc:
        return None, CheckResult(DEGENERATE, {"m": m, "x": x, "N": N, **exc.info},
                                 exc.info, exc.code)


def verify_paper_recurrences(m, x, N, table=None):
    """Both recurrences, specialized at ``(m, x)``, annihilate the table."""
    if table is None:
        table, bad = _table_or_degenerate(m, x, N)
        if bad:
            return bad
    initial = {"c11": table(1, 1), "c12": 0, "c22": table(2, 2) if table.N >= 2 else None}
    results = []
    details = {"m": m, "x": x, "N": table.N, "initial": initial}
    for name, rec in zip(("first", "second"), known_recurrences(m, x)):
        v = annihilates(rec, table)
        details[name] = {"points": len(recurrence_points(table, rec.support)), "violations": len(v)}
        results.append(CheckResult(PASS) if not v else
                       CheckResult(FAIL, {}, {"recurrence": name, **v[0]}, "RECURRENCE_VIOLATION"))
        if v:
            details[name]["first_violations"] = v[:5]
    return combine(results, details)


def verify_unrolling(m, x, N, table=None):
    """Unrolling the recurrences reproduces the kernel table exactly."""
    if table is None:
        table, bad = _table_or_degenerate(m, x, N)
        if bad:
            return bad
    try:
        seq = unroll(m, x, table.N)
    except DegenerateKernelError as exc:
        return CheckResult(DEGENERATE, {"m": m, "x": x, **exc.info}, exc.info, exc.code)
    for n in range(1, table.N + 1):
        for j in range(1, n + 1):
            if seq(n, j) != table(n, j):
                return CheckResult(FAIL, {"m": m, "x": x, "N": table.N},
                                   {"n": n, "j": j, "unrolled": seq(n, j), "kernel": table(n, j)},
                                   "UNROLL_MISMATCH")
    return CheckResult(PASS, {"m": m, "x": x, "N": table.N})


def s_parts(m, x, seq, i, n):
    first = sum(binom_int(m + x, m - i + j) * seq(n, j) for j in range(1, n + 1))
    second = sum(binom_int(m + x, m - i - j + 1) * seq(n, j) for j in range(1, n + 1))
    return as_scalar(first), as_scalar(second)


def t_value(m, x, seq, n):
    first, second = s_parts(m, x, seq, n, n)
    return as_scalar(first - second)


def verify_identities(m, x, N):
    """``c_{n,n} = 1`` and ``s_{i,n} = 0`` for ``i < n``, on the unrolled sequence.

    When unrolling is impossible at this specialization the kernel table is
    used instead (and the details say so).
    """
    try:
        seq, source = unroll(m, x, N), "unrolled"
    except DegenerateKernelError:
        seq, bad = _table_or_degenerate(m, x, N)
        if bad:
            return bad
        source = "kernel"
    details = {"m": m, "x": x, "N": N, "source": source, "t": {}}
    for n in range(1, N + 1):
        if seq(n, n) != 1:
            return CheckResult(FAIL, details, {"identity": "diagonal", "n": n, "c_nn": seq(n, n)},
                               "IDENTITY_FAIL")
        for i in range(1, n):
            first, second = s_parts(m, x, seq, i, n)
            if first != second:
                return CheckResult(FAIL, details, {"identity": "s", "i": i, "n": n,
                                                   "first_sum": first, "second_sum": second},
                                   "IDENTITY_FAIL")
        t = t_value(m, x, seq, n)
        details["t"][n] = t
        try:
            closed = tn_closed_form(n, m, x)
            if t != closed:
                return CheckResult(FAIL, details, {"identity": "t_n", "n": n, "t": t, "closed": closed},
                                   "IDENTITY_FAIL")
        except GammaPoleError:
            pass
    return CheckResult(PASS, details)


def verify_tn_and_det(m, x, N, det_limit=10):
    """``t_n`` against the Gamma closed form and its first-order recurrence,
    and ``prod t_i = det A_n = rhs.conjecture1`` for ``n <= det_limit``."""
    table, bad = _table_or_degenerate(m, x, N)
    if bad:
        return bad
    t = {n: t_value(m, x, table, n) for n in range(1, N + 1)}
    details = {"m": m, "x": x, "N": N, "t": t, "gamma_poles": []}
    for n in range(1, N + 1):
        try:
            closed = tn_closed_form(n, m, x)
        except GammaPoleError as exc:
            details["gamma_poles"].append({"n": n, **exc.info})
            continue
        if closed != t[n]:
            return CheckResult(FAIL, details, {"check": "closed_form", "n": n, "t": t[n],
                                               "closed": closed}, "TN_MISMATCH")
    for n in range(1, N):
        lead, trail = tn_recurrence_coefficients(n, m, x)
        if lead * t[n + 1] + trail * t[n]:
            return CheckResult(FAIL, details, {"check": "recurrence", "n": n}, "TN_RECURRENCE_FAIL")
    running = 1
    for n in range(1, min(N, det_limit) + 1):
        running *= t[n]
        d = det(a_matrix(m, x, n))
        try:
            rhs = eval_product("rhs.conjecture1", {"n": n, "m": m, "x": x})
        except PoleError:
            rhs = eval_product("rhs.conjecture1", {"n": n, "m": m, "x": x}, limit="x")
        if not running == d == rhs:
            return CheckResult(FAIL, details, {"check": "det", "n": n, "prod_t": running,
                                               "det": d, "rhs": rhs}, "DET_MISMATCH")
    telescoping = telescoping_check(m, x, min(N, det_limit))
    details["telescoping"] = telescoping.status
    if telescoping.status == FAIL:
        return CheckResult(FAIL, details, telescoping.witness, telescoping.code)
    if details["gamma_poles"] and len(details["gamma_poles"]) == N:
        return CheckResult(SKIPPED_POLE, details)
    return CheckResult(PASS, details)


def telescoping_check(m, x, N):
    """``prod_{j=1}^m t_i(j)/t_i(j-1) = t_i(m)/t_i(0)`` with each ratio equal
    to the single-factor product ``(x+i-j)(x+2i+j-2)/((x+2i-j)(i+j-1))``."""
    for i in range(1, N + 1):
        try:
            vals = [tn_closed_form(i, j, x) for j in range(m + 1)]
        except GammaPoleError:
            continue
        prod = Fraction(1)
        for j in range(1, m + 1):
            ratio = Fraction(vals[j]) / vals[j - 1]
            factor = Fraction((x + i - j) * (x + 2 * i + j - 2), (x + 2 * i - j) * (i + j - 1))
            if ratio != factor:
                return CheckResult(FAIL, {}, {"i": i, "j": j, "ratio": ratio, "factor": factor},
                                   "TELESCOPING_FAIL")
            prod *= ratio
        if prod != Fraction(vals[m]) / vals[0]:
            return CheckResult(FAIL, {}, {"i": i, "prod": prod}, "TELESCOPING_FAIL")
    return CheckResult(PASS)


def xm_coefficient(m, n, j):
    """Explicit kernel entry at ``x = m``."""
    if j == n:
        return 1
    return as_scalar(Fraction((-1) ** (n - j) * binom_int(2 * n - 1, n - j) * binom_int(n + m - j - 1, n - j),
                              binom_int(2 * n + m - 2, n - j)))


def verify_xm_special(m, N):
    """Explicit ``c_{n,j}`` at ``x = m`` and its three-equation system."""
    if m < 1:
        raise ValueError("m must be positive")
    table, bad = _table_or_degenerate(m, m, N)
    if bad:
        return bad
    explicit = KernelTable(m, m, tuple(tuple(xm_coefficient(m, n, j) for j in range(1, n + 1))
                                       for n in range(1, N + 1)))
    details = {"m": m, "N": N}
    for n in range(1, N + 1):
        for j in range(1, n + 1):
            if explicit(n, j) != table(n, j):
                return CheckResult(FAIL, details, {"n": n, "j": j, "explicit": explicit(n, j),
                                                   "kernel": table(n, j)}, "XM_MISMATCH")
    b = lambda n: eval_product("rhs.cigler", {"n": n, "m": m})
    for n in range(1, N + 1):
        if explicit(n, n) != 1:
            return CheckResult(FAIL, details, {"equation": 1, "n": n}, "XM_SYSTEM_FAIL")
        for i in range(1, n):
            s = sum(a_entry(m, m, i, j) * explicit(n, j) for j in range(1, n + 1))
            if s:
                return CheckResult(FAIL, details, {"equation": 2, "i": i, "n": n, "sum": s},
                                   "XM_SYSTEM_FAIL")
        s = as_scalar(sum(a_entry(m, m, n, j) * explicit(n, j) for j in range(1, n + 1)))
        ratio = as_scalar(Fraction(b(n)) / b(n - 1))
        if s != ratio:
            return CheckResult(FAIL, details, {"equation": 3, "n": n, "sum": s, "b_ratio": ratio},
                               "XM_SYSTEM_FAIL")
    return CheckResult(PASS, details)


def verify_guessing(m, x, N, degree=4, supports=None):
    """Guess on the table with the known supports; the known recurrences must
    lie in the span and every guessed recurrence must annihilate the data."""
    table, bad = _table_or_degenerate(m, x, N)
    if bad:
        return bad
    supports = supports or (((1, 0), (0, 1), (0, 0)), ((0, 2), (0, 1), (0, 0)))
    known = {rec.support: rec for rec in known_recurrences(m, x)}
    details = {"m": m, "x": x, "N": N, "degree": degree, "supports": {}}
    for support in supports:
        support = tuple(tuple(s) for s in support)
        basis = guess_recurrence(table, support, degree)
        info = {"dimension": len(basis)}
        for rec in basis:
            v = annihilates(rec, table)
            if v:
                return CheckResult(FAIL, details, {"support": support, **v[0]}, "GUESS_NOT_ANNIHILATING")
        if support in known:
            info["contains_known_recurrence"] = in_span(basis, known[support], degree)
            if not info["contains_known_recurrence"]:
                return CheckResult(FAIL, details, {"support": support}, "KNOWN_RECURRENCE_NOT_FOUND")
        details["supports"][str(list(support))] = info
    return CheckResult(PASS, details)
