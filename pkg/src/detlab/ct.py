"""Constant-term extraction and the constant-term identities.

Integrands are products of Laurent polynomial factors raised to concrete
nonnegative powers, expanded exactly.  No support pruning is applied; a
term-count budget (``DETLAB_BUDGET`` overrides the default) guards the
expansion instead.
"""

import os
import random
from dataclasses import dataclass
from math import factorial

from .algebra import MultiPoly, phi_poly
from .catalog import build_matrix, eval_product
from .detcore import det
from .errors import BudgetExceededError, PoleError
from .report import BUDGET_EXCEEDED, FAIL, PASS, CheckResult

DEFAULT_BUDGET = 5 * 10 ** 7


def default_budget():
    env = os.environ.get("DETLAB_BUDGET")
    return int(float(env)) if env else DEFAULT_BUDGET


@dataclass(frozen=True)
class CTExpression:
    """``prod base**exponent`` over ``variables``."""

    variables: tuple
    factors: tuple  # ((MultiPoly, int), ...)

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "factors", tuple(
            (MultiPoly.coerce(b, self.variables).with_variables(self.variables), int(e))
            for b, e in self.factors))
        for _, e in self.factors:
            if e < 0:
                raise ValueError("factor exponents must be nonnegative")

    def estimate_terms(self):
        """Upper bound on the expanded term count: the support box volume."""
        lo = [0] * len(self.variables)
        hi = [0] * len(self.variables)
        for base, e in self.factors:
            if not base:
                return 0
            for k, (a, b) in enumerate(base.support_box()):
                lo[k] += a * e
                hi[k] += b * e
        total = 1
        for a, b in zip(lo, hi):
            total *= b - a + 1
        return total

    def permuted(self, perm):
        """Same integrand with variable ``k`` replaced by ``perm[k]``."""
        mapping = {v: self.variables[perm[k]] for k, v in enumerate(self.variables)}
        return CTExpression(self.variables, tuple(
            (b.rename(mapping).with_variables(self.variables), e) for b, e in self.factors))

    def expand(self, budget=None):
        budget = default_budget() if budget is None else budget
        est = self.estimate_terms()
        if est > budget:
            raise BudgetExceededError(f"estimated {est} terms exceeds budget {budget}",
                                      estimate=est, budget=budget)
        powers = [b ** e for b, e in self.factors if e]
        powers.sort(key=len)
        out = MultiPoly.const(1, self.variables)
        for p in powers:
            out = out * p
        return out


def constant_term(e, budget=None):
    """Coefficient of the all-zero monomial of the expanded product."""
    if isinstance(e, MultiPoly):
        return e.constant_term()
    return e.expand(budget).constant_term()


def _vars(n, name="t", start=0):
    return tuple(f"{name}{k}" for k in range(start, start + n))


# ---------------------------------------------------------------------------
# integrands


def ct_main_integrand(n, m, x):
    """``prod (1+t_i)^(x+m) (t_i-1) t_i^(1-x-2n) prod_{i<j} (t_i-t_j)^2 (1-t_i t_j)``."""
    if x + m < 0:
        raise ValueError("x + m must be nonnegative")
    vs = _vars(n)
    t = [MultiPoly.var(v, vs) for v in vs]
    fs = []
    for k in range(n):
        mono = MultiPoly.monomial(vs, [1 - x - 2 * n if q == k else 0 for q in range(n)])
        fs += [(1 + t[k], x + m), (t[k] - 1, 1), (mono, 1)]
    for i in range(n):
        for j in range(i + 1, n):
            fs += [(t[i] - t[j], 2), (1 - t[i] * t[j], 1)]
    return CTExpression(vs, fs)


def t_presym_integrand(n, m, x):
    """Before symmetrization: its constant term is ``det T_{n,m}(x)``.

    ``prod (1+t_i)^(x+m) (t_i-1) t_i^-(x+n+i) prod_{i<j} (t_i-t_j)(1-t_i t_j)``.
    """
    vs = _vars(n)
    t = [MultiPoly.var(v, vs) for v in vs]
    fs = []
    for k in range(n):
        mono = MultiPoly.monomial(vs, [-(x + n + k) if q == k else 0 for q in range(n)])
        fs += [(1 + t[k], x + m), (t[k] - 1, 1), (mono, 1)]
    for i in range(n):
        for j in range(i + 1, n):
            fs += [(t[i] - t[j], 1), (1 - t[i] * t[j], 1)]
    return CTExpression(vs, fs)


def b_presym_integrand(n, m, x):
    """Its constant term is ``det B_{n,m}(x)``.

    ``prod (1+t_i)^(x+m) (t_i-1) t_i^-(x+n) (2+t_i+1/t_i)^i prod_{i<j} (t_i-t_j)``.
    """
    vs = _vars(n)
    t = [MultiPoly.var(v, vs) for v in vs]
    fs = []
    for k in range(n):
        mono = MultiPoly.monomial(vs, [-(x + n) if q == k else 0 for q in range(n)])
        fs += [(1 + t[k], x + m), (t[k] - 1, 1), (mono, 1), (2 + t[k] + t[k] ** -1, k)]
    for i in range(n):
        for j in range(i + 1, n):
            fs += [(t[i] - t[j], 1)]
    return CTExpression(vs, fs)


def morris_integrand(a, b, c, m):
    """``prod (1+t_i)^a (1+1/t_i)^b prod_{i != j} (1 - t_j/t_i)^m``."""
    vs = _vars(c)
    t = [MultiPoly.var(v, vs) for v in vs]
    fs = []
    for k in range(c):
        fs += [(1 + t[k], a), (1 + t[k] ** -1, b)]
    for i in range(c):
        for j in range(c):
            if i != j:
                fs.append((1 - t[j] * t[i] ** -1, m))
    return CTExpression(vs, fs)


def bcn_integrand(alpha, beta, n):
    """``prod (1-t_i)^a (1-1/t_i)^a (1-t_i^2)^b (1-1/t_i^2)^b`` times, for
    ``i < j``, ``(1-t_j/t_i)(1-t_i/t_j)(1-t_i t_j)(1-1/(t_i t_j))``."""
    vs = _vars(n, start=1)
    t = [MultiPoly.var(v, vs) for v in vs]
    fs = []
    for k in range(n):
        inv = t[k] ** -1
        fs += [(1 - t[k], alpha), (1 - inv, alpha), (1 - t[k] ** 2, beta), (1 - inv ** 2, beta)]
    for i in range(n):
        for j in range(i + 1, n):
            ti, tj = t[i], t[j]
            fs += [(1 - tj * ti ** -1, 1), (1 - ti * tj ** -1, 1),
                   (1 - ti * tj, 1), (1 - (ti * tj) ** -1, 1)]
    return CTExpression(vs, fs)


# ---------------------------------------------------------------------------
# verifiers


def _budgeted(fn):
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except BudgetExceededError as exc:
            return CheckResult(BUDGET_EXCEEDED, {"args": list(args), **kwargs, **exc.info},
                               {"estimate": exc.info.get("estimate")}, exc.code)
    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    wrapper.__wrapped__ = fn
    return wrapper


def _compare(lhs, rhs, details, code):
    details = {**details, "lhs": lhs, "rhs": rhs}
    if lhs == rhs:
        return CheckResult(PASS, details)
    return CheckResult(FAIL, details, {k: v for k, v in details.items()}, code)


def symmetrize_check(e, trials=10, seed=0):
    """CT is unchanged under random permutations of the variables."""
    if len(e.variables) > 5:
        raise ValueError("symmetrize_check supports at most 5 variables")
    rng = random.Random(seed)
    base = constant_term(e)
    seen = []
    for _ in range(trials):
        perm = list(range(len(e.variables)))
        rng.shuffle(perm)
        val = constant_term(e.permuted(perm))
        seen.append(perm)
        if val != base:
            return CheckResult(FAIL, {"ct": base}, {"perm": perm, "ct_permuted": val}, "NOT_INVARIANT")
    return CheckResult(PASS, {"ct": base, "permutations": seen})


def _rhs_with_limit(formula, params, var):
    """Exact value, or the removable-singularity limit in ``var`` at a pole point."""
    try:
        return eval_product(formula, params), False
    except PoleError:
        return eval_product(formula, params, limit=var), True


@_budgeted
def verify_ct_main(n, m, x, budget=None):
    """CT of the symmetrized integrand equals ``n!`` times the conjectured product."""
    if x < 0:
        raise ValueError("x must be a nonnegative integer")
    lhs = constant_term(ct_main_integrand(n, m, x), budget)
    rhs, via_limit = _rhs_with_limit("rhs.ct_main", {"n": n, "m": m, "x": x}, "x")
    return _compare(lhs, rhs, {"n": n, "m": m, "x": x, "rhs_via_limit": via_limit}, "CT_MISMATCH")


@_budgeted
def verify_det_via_ct(n, m, x, family="T", budget=None):
    """``det(family at x) = CT(common integrand) / n!``, plus the pre-symmetrized form."""
    if family not in ("T", "B"):
        raise ValueError("family must be 'T' or 'B'")
    d = det(build_matrix(family, n, m=m, x=x))
    sym = constant_term(ct_main_integrand(n, m, x), budget)
    pre = t_presym_integrand if family == "T" else b_presym_integrand
    pre_ct = constant_term(pre(n, m, x), budget)
    details = {"n": n, "m": m, "x": x, "family": family, "det": d,
               "ct_symmetrized_over_nfact": sym / factorial(n), "ct_presymmetrized": pre_ct}
    ok = d * factorial(n) == sym and d == pre_ct
    if ok:
        return CheckResult(PASS, details)
    return CheckResult(FAIL, details, details, "CT_MISMATCH")


@_budgeted
def verify_morris(a, b, c, m, budget=None):
    """Morris constant term (root system A) against its factorial product."""
    if c < 1:
        raise ValueError("c must be positive")
    lhs = constant_term(morris_integrand(a, b, c, m), budget)
    rhs = eval_product("rhs.morris", {"a": a, "b": b, "c": c, "m": m})
    details = {"a": a, "b": b, "c": c, "m": m}
    if m != 1:
        details["note"] = "verified here; a proof is only known for m = 1"
    return _compare(lhs, rhs, details, "CT_MISMATCH")


@_budgeted
def verify_bcn(alpha, beta, n, budget=None):
    """BC_n constant term against its factorial product."""
    if n < 1:
        raise ValueError("n must be positive")
    lhs = constant_term(bcn_integrand(alpha, beta, n), budget)
    rhs = eval_product("rhs.bcn", {"alpha": alpha, "beta": beta, "n": n})
    return _compare(lhs, rhs, {"alpha": alpha, "beta": beta, "n": n}, "CT_MISMATCH")


def phi_exponents(n):
    """``{s: CT_y(y^-s phi_n(y))}`` on the window ``1-n <= s <= 3n-2``."""
    phi = phi_poly(n)
    y = MultiPoly.var("y")
    return {s: constant_term(y ** (-s) * phi) for s in range(1 - n, 3 * n - 1)}, phi


def verify_phi_factorization(n):
    """``det T_{n,n}(x) = n!^-n prod binom(n+i, i)^-1 prod_s (x+s)^{e_s}`` in ``x``."""
    if not 1 <= n <= 6:
        raise ValueError("n must be in 1..6")
    exps, phi = phi_exponents(n)
    (lo, hi), = phi.support_box()
    details = {"n": n, "exponents": exps, "phi": phi,
               "phi_integral": phi.coefficients_integral(),
               "support_in_window": 1 - n <= lo and hi <= 3 * n - 2}
    if not details["support_in_window"]:
        return CheckResult(FAIL, details, {"support": [lo, hi]}, "SUPPORT_OUTSIDE_WINDOW")
    negative = {s: e for s, e in exps.items() if e < 0}
    if negative:
        return CheckResult(FAIL, details, {"negative": negative}, "NEGATIVE_EXPONENT")
    x = MultiPoly.var("x")
    rhs = MultiPoly.const(1, ("x",))
    for s, e in exps.items():
        rhs = rhs * (x + s) ** int(e)
    scale = factorial(n) ** n
    for i in range(n):
        scale *= factorial(n + i) // (factorial(n) * factorial(i))
    lhs = det(build_matrix("T", n, m=n))
    details["degree"] = lhs.degree("x")
    details["exponent_sum"] = sum(exps.values())
    if lhs * scale == rhs:
        return CheckResult(PASS, details)
    return CheckResult(FAIL, details, {"det": lhs, "scaled_factorization": rhs.exact_div(scale)},
                       "FACTORIZATION_FAIL")
