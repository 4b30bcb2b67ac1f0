"""Named point checks.

Every entry of :data:`CHECKS` maps a parameter dict to a
:class:`~detlab.report.CheckResult`.  Suites and the command line only talk to
this registry.
"""

import random
from dataclasses import dataclass
from fractions import Fraction

from . import combinatorics, ct, dodgson, holonomic
from .algebra import as_scalar, binom_int, phi_poly
from .catalog import build_matrix, eval_product
from .detcore import (Matrix, det, det_condensation_numeric, det_fraction_free, det_permutation,
                      verify_toeplitz_splitting)
from .errors import (BudgetExceededError, ConfigError, DegenerateKernelError,
                     DetlabError, PoleError)
from .report import BUDGET_EXCEEDED, DEGENERATE, FAIL, PASS, SKIPPED_POLE, CheckResult


def _cross(d, num, den, details, code="FORMULA_MISMATCH"):
    details = {**details, "det": d}
    if d * den == num:
        return CheckResult(PASS, details)
    return CheckResult(FAIL, details, {**details, "numerator": num, "denominator": den}, code)


def check_conjecture1(n, m, x=None):
    """``det T_{n,m}(x)`` against the conjectured product; symbolic when ``x`` is omitted."""
    if x is None:
        num, den = eval_product("rhs.conjecture1", {"n": n, "m": m}, symbolic="x")
        return _cross(det(build_matrix("T", n, m=m)), num, den, {"n": n, "m": m, "x": "symbolic"})
    d = det(build_matrix("T", n, m=m, x=x))
    try:
        rhs = eval_product("rhs.conjecture1", {"n": n, "m": m, "x": x})
        via_limit = False
    except PoleError:
        rhs = eval_product("rhs.conjecture1", {"n": n, "m": m, "x": x}, limit="x")
        via_limit = True
    details = {"n": n, "m": m, "x": x, "det": d, "rhs": rhs, "rhs_via_limit": via_limit}
    if d == rhs:
        return CheckResult(PASS, details)
    return CheckResult(FAIL, details, details, "FORMULA_MISMATCH")


def check_t_equals_b(n, m, x=None):
    """``det T_{n,m}(x) = det B_{n,m}(x)``."""
    T = det(build_matrix("T", n, m=m, x=x))
    B = det(build_matrix("B", n, m=m, x=x))
    details = {"n": n, "m": m, "x": "symbolic" if x is None else x, "det_T": T, "det_B": B}
    if T == B:
        return CheckResult(PASS, details)
    return CheckResult(FAIL, details, details, "DET_MISMATCH")


def check_cigler(n, m):
    """``det A_{n,m}`` against the Cigler product and the conjecture at ``x = m``."""
    d = det(build_matrix("A", n, m=m))
    cigler = eval_product("rhs.cigler", {"n": n, "m": m})
    conj = eval_product("rhs.conjecture1", {"n": n, "m": m, "x": m})
    details = {"n": n, "m": m, "det": d, "cigler": cigler, "conjecture_at_x_eq_m": conj}
    if d == cigler == conj:
        return CheckResult(PASS, details)
    return CheckResult(FAIL, details, details, "FORMULA_MISMATCH")


def check_ttilde(a, c):
    """``det Ttilde_c(a, b)`` against its product, symbolic in ``b``."""
    num, den = eval_product("rhs.ttilde", {"c": c, "a": a}, symbolic="b")
    return _cross(det(build_matrix("Ttilde", c, a=a)), num, den, {"a": a, "c": c, "b": "symbolic"})


def check_supercatalan(n, a, b):
    d = det(build_matrix("SuperCatalan", n, a=a, b=b))
    rhs = eval_product("rhs.super_catalan", {"n": n, "a": a, "b": b})
    details = {"n": n, "a": a, "b": b, "det": d, "rhs": rhs}
    if d == rhs:
        return CheckResult(PASS, details)
    return CheckResult(FAIL, details, details, "FORMULA_MISMATCH")


def check_condensation(claim, n, a, b):
    """Shift check, functional equation and base cases at one grid point."""
    return dodgson.verify_claim(claim, [(n, a, b)])


def check_condensation_mutation(claim="D", n=3, a=1, b=0):
    """Passes when the claim with one exponent bumped is rejected with a witness."""
    bad = dodgson.get_claim(claim).mutated()
    r = dodgson.functional_eq_point(bad, n, a, b)
    if r.status == SKIPPED_POLE:
        return r
    base = dodgson.verify_base_cases(bad, [{"a": a, "b": b}])
    caught = r.status == FAIL or base.status == FAIL
    details = {"claim": bad.id, "n": n, "a": a, "b": b,
               "functional_eq": r.status, "base_cases": base.status,
               "witness": r.witness or base.witness}
    if caught and details["witness"]:
        return CheckResult(PASS, details)
    return CheckResult(FAIL, details, {"n": n, "a": a, "b": b}, "MUTATION_NOT_DETECTED")


def check_phi_integral(n):
    phi = phi_poly(n)
    details = {"n": n, "phi": phi}
    if phi.coefficients_integral():
        return CheckResult(PASS, details)
    return CheckResult(FAIL, details, details, "NOT_INTEGRAL")


def random_rational_matrix(seed, n):
    rng = random.Random(seed)
    return Matrix.from_function(n, lambda i, j: as_scalar(Fraction(rng.randint(-9, 9), rng.randint(1, 6))))


def check_concordance(seed, n=None):
    """Three determinant algorithms agree on a seeded random rational matrix.

    ``n`` defaults to ``1 + seed % 6``.
    """
    n = 1 + seed % 6 if n is None else n
    M = random_rational_matrix(seed, n)
    cond = det_condensation_numeric(M)
    values = {"fraction_free": det_fraction_free(M), "permutation": det_permutation(M),
              "condensation": cond.value}
    details = {"seed": seed, "n": n, **values, "condensation_fallback": cond.fallback}
    if len(set(values.values())) == 1:
        return CheckResult(PASS, details)
    return CheckResult(FAIL, details, details, "ORACLE_DISAGREE")


def random_even_sequence(seed, support=6):
    rng = random.Random(seed)
    u = {}
    for k in range(support + 1):
        v = as_scalar(Fraction(rng.randint(-5, 5), rng.randint(1, 3)))
        u[k] = u[-k] = v
    return u


def check_toeplitz_random(seed, n=None, support=6):
    """Toeplitz splitting for a seeded random even sequence; ``n`` defaults to ``1 + seed % 4``."""
    n = 1 + seed % 4 if n is None else n
    return verify_toeplitz_splitting(random_even_sequence(seed, support), n)


def check_toeplitz_binomial(a, n):
    u = {k: binom_int(2 * a, a - k) for k in range(-a, a + 1)}
    return verify_toeplitz_splitting(u, n)


def check_macmahon(a, b, c, enumerate_limit=4):
    return combinatorics.verify_macmahon_triangle((a, b, c), enumerate_limit)


def check_lgv(a, b, c):
    """Both path counts against the plane partition count and their determinants."""
    box = (a, b, c)
    values = {
        "plane_partitions": combinatorics.count_plane_partitions(box),
        "lgv_toeplitz": combinatorics.count_lgv_paths(box, "toeplitz"),
        "lgv_shifted": combinatorics.count_lgv_paths(box, "shifted"),
        "toeplitz_det": det(build_matrix("MacMahonToeplitz", c, a=a, b=b)) if c else 1,
        "binomial_det": det(build_matrix("SymmetricBinomial", c, a=a, b=b)) if c else 1,
    }
    details = {"a": a, "b": b, "c": c, **values}
    if len(set(values.values())) == 1:
        return CheckResult(PASS, details)
    return CheckResult(FAIL, details, values, "COUNT_MISMATCH")


def check_guess(m, x, N, degree=4):
    return holonomic.verify_guessing(m, x, N, degree)


@dataclass(frozen=True)
class Check:
    id: str
    fn: object
    required: tuple
    optional: tuple = ()
    fixed: dict = None
    budget: bool = False
    doc: str = ""

    def describe(self):
        return self.doc or (self.fn.__doc__ or "").strip().splitlines()[0]


def _c(id, fn, required, optional=(), fixed=None, budget=False, doc=""):
    return Check(id, fn, tuple(required), tuple(optional), fixed or {}, budget, doc)


CHECKS = {c.id: c for c in [
    _c("conjecture1", check_conjecture1, ("n", "m"), ("x",)),
    _c("t_equals_b", check_t_equals_b, ("n", "m"), ("x",)),
    _c("cigler", check_cigler, ("n", "m")),
    _c("ttilde", check_ttilde, ("a", "c")),
    _c("supercatalan", check_supercatalan, ("n", "a", "b")),
    *[_c(f"condensation.{k}", check_condensation, ("n", "a", "b"), fixed={"claim": k},
         doc=f"condensation proof object for the {k} claim at one point")
      for k in ("D", "U", "SymmetricBinomial", "SuperCatalan")],
    _c("condensation.mutation", check_condensation_mutation, (), ("claim", "n", "a", "b")),
    _c("ct.main", ct.verify_ct_main, ("n", "m", "x"), budget=True,
       doc="CT of the symmetrized integrand equals n! times the product"),
    _c("ct.det", ct.verify_det_via_ct, ("n", "m", "x"), ("family",), budget=True,
       doc="det T or det B via constant terms"),
    _c("ct.morris", ct.verify_morris, ("a", "b", "c", "m"), budget=True,
       doc="Morris constant term identity"),
    _c("ct.bcn", ct.verify_bcn, ("alpha", "beta", "n"), budget=True, doc="BC_n constant term identity"),
    _c("ct.phi", ct.verify_phi_factorization, ("n",), doc="exponent factorization of det T_{n,n}(x)"),
    _c("phi.integral", check_phi_integral, ("n",), doc="phi_n has integer coefficients"),
    _c("holonomic.recurrences", holonomic.verify_paper_recurrences, ("m", "x", "N"),
       doc="both rank-2 recurrences annihilate the kernel table"),
    _c("holonomic.unroll", holonomic.verify_unrolling, ("m", "x", "N"),
       doc="the recurrences and initial values reproduce the kernel table"),
    _c("holonomic.identities", holonomic.verify_identities, ("m", "x", "N"),
       doc="c_nn = 1 and s_in = 0 on the unrolled sequence"),
    _c("holonomic.tn", holonomic.verify_tn_and_det, ("m", "x", "N"),
       doc="t_n closed form, its recurrence and prod t_i = det A_n"),
    _c("holonomic.guess", check_guess, ("m", "x", "N"), ("degree",),
       doc="guessing recovers the known recurrences"),
    _c("holonomic.xm", holonomic.verify_xm_special, ("m", "N"), doc="explicit kernel at x = m"),
    _c("toeplitz.random", check_toeplitz_random, ("seed",), ("n", "support"),
       doc="Toeplitz splitting for a seeded random even sequence"),
    _c("toeplitz.binomial", check_toeplitz_binomial, ("a", "n"),
       doc="Toeplitz splitting for u_k = binom(2a, a-k)"),
    _c("macmahon", check_macmahon, ("a", "b", "c"), ("enumerate_limit",),
       doc="MacMahon determinants, product and brute counts"),
    _c("oracle.lgv", check_lgv, ("a", "b", "c"), doc="plane partition and path counts"),
    _c("oracle.concordance", check_concordance, ("seed",), ("n",),
       doc="three determinant algorithms agree"),
]}


def get_check(check_id):
    try:
        return CHECKS[check_id]
    except KeyError:
        raise ConfigError(f"unknown check id {check_id!r}", location=check_id) from None


def validate_params(check, params):
    missing = [p for p in check.required if p not in params]
    extra = [p for p in params if p not in check.required + check.optional]
    if missing or extra:
        raise ConfigError(f"{check.id}: missing {missing}, unexpected {extra}", location=check.id)


def run_check(check_id, params, budget=None):
    """Run one registered check; known error kinds become statuses."""
    check = get_check(check_id)
    validate_params(check, params)
    kwargs = {**check.fixed, **params}
    if check.budget and budget is not None:
        kwargs["budget"] = budget
    try:
        return check.fn(**kwargs)
    except PoleError as exc:
        return CheckResult(SKIPPED_POLE, {"reason": str(exc)}, exc.info or None, exc.code)
    except BudgetExceededError as exc:
        return CheckResult(BUDGET_EXCEEDED, {"reason": str(exc)}, exc.info or None, exc.code)
    except DegenerateKernelError as exc:
        return CheckResult(DEGENERATE, {"reason": str(exc)}, exc.info or None, exc.code)
    except (DetlabError, ValueError) as exc:
        # bad parameters for this check are a failure of the record, not of the run
        code = getattr(exc, "code", "INVALID_PARAMETERS")
        return CheckResult(FAIL, {"reason": str(exc)}, {"error": str(exc)}, code)
