"""Matrix families and their closed-form determinant evaluations.

Every family is built with 0-based indices ``i, j = 0..n-1``.  Where a family
has a free parameter (``x`` for ``T`` and ``B``, ``b`` for ``Ttilde``),
passing ``None`` for it builds the matrix symbolically, with polynomial
entries in that parameter.

Closed forms are :class:`ProductFormula` objects registered under stable
string ids (``"rhs.conjecture1"``, ``"rhs.macmahon"``, ...).
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .algebra import MultiPoly, as_scalar, binom_int, binom_poly, binom_value
from .detcore import Matrix
from .errors import BadSpecError, GammaPoleError, PoleError

__all__ = [
    "FAMILIES",
    "FORMULAS",
    "MatrixFamilySpec",
    "ProductFormula",
    "Factor",
    "Block",
    "build_matrix",
    "eval_product",
    "tn_closed_form",
    "super_catalan",
]


# ---------------------------------------------------------------------------
# matrix families


@dataclass(frozen=True)
class _Family:
    name: str
    params: tuple
    symbolic: str | None  # name of the parameter that may be left symbolic
    doc: str


FAMILIES = {
    f.name: f for f in [
        _Family("A", ("m",), None, "binom(2m, j-i+m) - binom(2m, m-i-j-1)"),
        _Family("T", ("m", "x"), "x", "binom(x+m, j-i+m) - binom(x+m, m-i-j-1)"),
        _Family("B", ("m", "x"), "x", "binom(x+m+2i, i-j+m) - binom(x+m+2i, i-j+m-1)"),
        _Family("D", ("a", "b"), None, "binom(2i+2a, i-j+a-b) - binom(2i+2a, i-j+a-b-1)"),
        _Family("U", ("a", "b"), None,
                "binom(2b, j-i+b-a) - binom(2b, a+b+i+j+1)  (1-based: a+b+i+j-1)"),
        _Family("Ttilde", ("a", "b"), "b", "u(i-j) + u(i+j+1),  u(k) = binom(a+b, a-k)"),
        _Family("MacMahonToeplitz", ("a", "b"), None, "binom(a+b, a-i+j)"),
        _Family("SymmetricBinomial", ("a", "b"), None, "binom(i+j+a+b, i+a)"),
        _Family("SuperCatalan", ("a", "b"), None, "S(i+1+a, j+1+b)"),
    ]
}


@dataclass(frozen=True)
class MatrixFamilySpec:
    family: str
    n: int
    params: dict = field(default_factory=dict)

    def validate(self):
        fam = FAMILIES.get(self.family)
        if fam is None:
            raise BadSpecError(f"unknown family {self.family!r}")
        if not isinstance(self.n, int) or self.n < 1:
            raise BadSpecError(f"n must be a positive integer, got {self.n!r}")
        extra = set(self.params) - set(fam.params)
        if extra:
            raise BadSpecError(f"family {self.family} takes {fam.params}, got extra {sorted(extra)}")
        for p in fam.params:
            v = self.params.get(p)
            if v is None:
                if p != fam.symbolic:
                    raise BadSpecError(f"family {self.family} needs parameter {p}")
            elif p != fam.symbolic and not isinstance(v, int):
                raise BadSpecError(f"parameter {p} must be an integer, got {v!r}")
        return fam


def super_catalan(i, j):
    """``(2i)! (2j)! / (2 i! j! (i+j)!)``."""
    return as_scalar(Fraction(factorial(2 * i) * factorial(2 * j),
                              2 * factorial(i) * factorial(j) * factorial(i + j)))


def build_matrix(family, n=None, **params):
    """Build a family member; accepts a :class:`MatrixFamilySpec` or keywords.

    ``build_matrix("T", 3, m=2)`` is symbolic in ``x``;
    ``build_matrix("T", 3, m=2, x=5)`` has rational entries.
    """
    spec = family if isinstance(family, MatrixFamilySpec) else MatrixFamilySpec(family, n, params)
    fam = spec.validate()
    p = {k: spec.params.get(k) for k in fam.params}
    n = spec.n
    name = fam.name

    if name in ("A", "T"):
        m = p["m"]
        x = m if name == "A" else p["x"]
        if x is None:
            entry = lambda i, j: binom_poly("x", m, j - i + m) - binom_poly("x", m, m - i - j - 1)
        else:
            top = as_scalar(x) + m
            entry = lambda i, j: binom_value(top, j - i + m) - binom_value(top, m - i - j - 1)
    elif name == "B":
        m, x = p["m"], p["x"]
        if x is None:
            entry = lambda i, j: (binom_poly("x", m + 2 * i, i - j + m)
                                  - binom_poly("x", m + 2 * i, i - j + m - 1))
        else:
            x = as_scalar(x)
            entry = lambda i, j: (binom_value(x + m + 2 * i, i - j + m)
                                  - binom_value(x + m + 2 * i, i - j + m - 1))
    elif name == "D":
        a, b = p["a"], p["b"]
        entry = lambda i, j: (binom_int(2 * i + 2 * a, i - j + a - b)
                              - binom_int(2 * i + 2 * a, i - j + a - b - 1))
    elif name == "U":
        a, b = p["a"], p["b"]
        entry = lambda i, j: (binom_int(2 * b, j - i + b - a)
                              - binom_int(2 * b, a + b + i + j + 1))
    elif name == "Ttilde":
        a, b = p["a"], p["b"]
        if b is None:
            u = lambda k: binom_poly("b", a, a - k)
        else:
            u = lambda k: binom_value(as_scalar(b) + a, a - k)
        entry = lambda i, j: u(i - j) + u(i + j + 1)
    elif name == "MacMahonToeplitz":
        a, b = p["a"], p["b"]
        entry = lambda i, j: binom_int(a + b, a - i + j)
    elif name == "SymmetricBinomial":
        a, b = p["a"], p["b"]
        entry = lambda i, j: binom_int(i + j + a + b, i + a)
    elif name == "SuperCatalan":
        a, b = p["a"], p["b"]
        entry = lambda i, j: super_catalan(i + 1 + a, j + 1 + b)
    else:  # pragma: no cover - FAMILIES and this switch move together
        raise BadSpecError(name)
    return Matrix.from_function(n, entry)


# ---------------------------------------------------------------------------
# product formulas


@lru_cache(maxsize=None)
def _compile(text):
    # sum of signed terms; each term a product of integer constants and names
    terms = []
    s = text.replace(" ", "").replace("-", "+-")
    for tok in filter(None, s.split("+")):
        coef, names = 1, []
        neg = tok.startswith("-")
        for f in tok.lstrip("-").split("*"):
            if f.lstrip("-").isdigit():
                coef *= int(f)
            else:
                names.append(f)
        terms.append((-coef if neg else coef, tuple(names)))
    return tuple(terms)


def _eval_expr(terms, env, symbolic=None):
    total = 0
    poly = None
    for coef, names in terms:
        val = coef
        sym_power = 0
        for nm in names:
            if nm == symbolic:
                sym_power += 1
            else:
                val = val * env[nm]
        if sym_power:
            mono = MultiPoly.var(symbolic) ** sym_power * val
            poly = mono if poly is None else poly + mono
        else:
            total = total + val
    if poly is None:
        return total
    return poly + total


@dataclass(frozen=True)
class Factor:
    """``kind`` is ``lin`` (the value), ``fact`` (its factorial), ``sign``
    (``(-1)^value``), ``sign_binom2`` (``(-1)^binom(value, 2)``) or ``pow2``
    (``2^value``); ``power`` is its exponent."""

    kind: str
    expr: str
    power: int = 1

    @property
    def terms(self):
        return _compile(self.expr)


@dataclass(frozen=True)
class Block:
    """Nested product ``prod_{idx=lo}^{hi}`` over ``ranges`` (outermost first).

    With ``signed=True`` the innermost range follows the convention
    ``prod_{k=lo}^{hi} f(k) = 1 / prod_{k=hi+1}^{lo-1} f(k)`` when
    ``hi < lo - 1``, which keeps ``lo..hi`` products multiplicative in ``hi``.
    """

    ranges: tuple
    factors: tuple
    signed: bool = False


@dataclass(frozen=True)
class ProductFormula:
    id: str
    params: tuple
    blocks: tuple
    prefactors: tuple = ()
    doc: str = ""

    def evaluate(self, symbolic=None, limit=None, **params):
        return eval_product(self, params, symbolic=symbolic, limit=limit)


def _factor_value(f, env, symbolic):
    v = _eval_expr(f.terms, env, symbolic)
    if f.kind == "lin":
        return v
    if isinstance(v, MultiPoly):
        raise BadSpecError(f"{f.kind} factor {f.expr} cannot be symbolic")
    if f.kind == "fact":
        if v < 0:
            raise PoleError(f"factorial of negative integer {v} in {f.expr}", expr=f.expr, env=dict(env))
        return factorial(v)
    if f.kind == "sign":
        return -1 if v % 2 else 1
    if f.kind == "sign_binom2":
        return -1 if (v * (v - 1) // 2) % 2 else 1
    if f.kind == "pow2":
        return Fraction(2) ** v
    raise BadSpecError(f"unknown factor kind {f.kind}")


def _range_points(ranges, env, signed):
    """Yield (env, orientation) for each point of the nested ranges."""
    if not ranges:
        yield env, 1
        return
    (idx, lo, hi), rest = ranges[0], ranges[1:]
    lo_v = _eval_expr(_compile(lo), env)
    hi_v = _eval_expr(_compile(hi), env)
    innermost = not rest
    if hi_v >= lo_v - 1 or not (signed and innermost):
        for k in range(lo_v, hi_v + 1):
            yield from _range_points(rest, {**env, idx: k}, signed)
    else:
        for k in range(hi_v + 1, lo_v):
            for e, o in _range_points(rest, {**env, idx: k}, signed):
                yield e, -o


def _accumulate(formula, env, symbolic):
    variables = (symbolic,) if symbolic else ()
    num = MultiPoly.const(1, variables) if symbolic else 1
    den = MultiPoly.const(1, variables) if symbolic else 1

    def take(f, e, orient):
        nonlocal num, den
        v = _factor_value(f, e, symbolic)
        p = f.power * orient
        if p > 0:
            num = num * v ** p
        elif p < 0:
            den = den * v ** -p

    for f in formula.prefactors:
        take(f, env, 1)
    for block in formula.blocks:
        for e, orient in _range_points(block.ranges, env, block.signed):
            for f in block.factors:
                take(f, e, orient)
    return num, den


def eval_product(formula, params, symbolic=None, limit=None):
    """Evaluate a registered product formula.

    Numeric mode returns an exact scalar and raises ``PoleError`` if a
    denominator factor vanishes.  With ``symbolic="x"`` (``x`` omitted from
    ``params``) returns ``(numerator, denominator)`` polynomials in ``x``,
    fully multiplied out.  With ``limit="x"`` the numeric value at the given
    ``x`` is the limit of the rational function, obtained by dividing
    ``(x - x0)`` out of both sides while both vanish.
    """
    if isinstance(formula, str):
        try:
            formula = FORMULAS[formula]
        except KeyError:
            raise BadSpecError(f"unknown formula {formula!r}") from None
    params = {k: as_scalar(v) for k, v in params.items() if v is not None}
    if limit is not None:
        x0 = params.pop(limit)
        num, den = eval_product(formula, params, symbolic=limit)
        return _limit(num, den, limit, x0)
    expected = set(formula.params) - ({symbolic} if symbolic else set())
    if set(params) != expected:
        raise BadSpecError(f"{formula.id} takes {sorted(expected)}, got {sorted(params)}")
    num, den = _accumulate(formula, params, symbolic)
    if symbolic:
        if not den:
            raise PoleError(f"{formula.id}: denominator vanishes identically", params=params)
        return num, den
    if not den:
        raise PoleError(f"{formula.id}: denominator factor vanishes at {params}", params=params)
    return as_scalar(Fraction(num) / den)


def _limit(num, den, var, x0):
    lin = MultiPoly.var(var) - x0
    while not den.evaluate({var: x0}):
        if num.evaluate({var: x0}):
            raise PoleError(f"genuine pole at {var}={x0}")
        num, den = num.exact_div(lin), den.exact_div(lin)
    return as_scalar(Fraction(num.evaluate({var: x0})) / den.evaluate({var: x0}))


def _conj_block(x, upper, lin_shift="-2", den_shift=""):
    return Block(
        ranges=(("i", "1", "n"), ("j", "1", upper)),
        factors=(
            Factor("lin", f"{x}+i-j"),
            Factor("lin", f"{x}+2*i+j{lin_shift}"),
            Factor("lin", f"{x}+2*i-j{den_shift}", -1),
            Factor("lin", "i+j-1", -1),
        ),
        signed=True,
    )


_cigler_block = Block(
    ranges=(("i", "1", "m-1"), ("j", "i", "m-1")),
    factors=(Factor("lin", "2*n+i+j"), Factor("lin", "i+j", -1)),
)

FORMULAS = {
    f.id: f for f in [
        ProductFormula("rhs.conjecture1", ("n", "m", "x"), (_conj_block("x", "m"),),
                       doc="prod_{i<=n} prod_{j<=m} (x+i-j)(x+2i+j-2)/((x+2i-j)(i+j-1))"),
        ProductFormula("rhs.d_family", ("n", "a", "b"), (_conj_block("a+b", "a-b"),),
                       doc="conjecture1 with x=a+b, m=a-b"),
        ProductFormula("rhs.u_family", ("n", "a", "b"), (_conj_block("a+b", "b-a"),),
                       doc="conjecture1 with x=a+b, m=b-a"),
        ProductFormula("rhs.cigler", ("n", "m"), (_cigler_block,),
                       doc="prod_{1<=i<=j<=m-1} (2n+i+j)/(i+j)"),
        ProductFormula("rhs.ttilde", ("c", "a", "b"), (Block(
            ranges=(("i", "1", "c"), ("j", "1", "a")),
            factors=(Factor("lin", "b+i-j"), Factor("lin", "b+2*i+j-1"),
                     Factor("lin", "b+2*i-j-1", -1), Factor("lin", "i+j-1", -1)),
            signed=True),),
            doc="prod_{i<=c} prod_{j<=a} (b+i-j)(b+2i+j-1)/((b+2i-j-1)(i+j-1))"),
        ProductFormula("rhs.macmahon", ("a", "b", "c"), (Block(
            ranges=(("i", "0", "a-1"), ("j", "0", "b-1"), ("k", "0", "c-1")),
            factors=(Factor("lin", "i+j+k+2"), Factor("lin", "i+j+k+1", -1))),),
            doc="plane partitions in an a x b x c box"),
        ProductFormula("rhs.super_catalan", ("n", "a", "b"), (Block(
            ranges=(("i", "1", "n"),),
            factors=(Factor("fact", "2*a+2*i"), Factor("fact", "2*b+2*i"), Factor("fact", "i"),
                     Factor("fact", "a+i", -1), Factor("fact", "b+i", -1),
                     Factor("fact", "a+b+n+i", -1))),),
            prefactors=(Factor("sign_binom2", "n"), Factor("pow2", "n", -1), Factor("fact", "n", -1)),
            doc="super Catalan determinant det[S(i+a, j+b)]_{i,j=1..n}"),
        ProductFormula("rhs.morris", ("a", "b", "c", "m"), (Block(
            ranges=(("l", "0", "c-1"),),
            factors=(Factor("fact", "a+b+l*m"), Factor("fact", "l*m+m"),
                     Factor("fact", "a+l*m", -1), Factor("fact", "b+l*m", -1),
                     Factor("fact", "m", -1))),),
            doc="Morris constant term identity for the root system A"),
        ProductFormula("rhs.bcn", ("alpha", "beta", "n"), (Block(
            ranges=(("i", "1", "n"),),
            factors=(Factor("fact", "2*beta+2*i-2"), Factor("fact", "2*alpha+2*beta+2*i-2"),
                     Factor("fact", "i"), Factor("fact", "beta+i-1", -1),
                     Factor("fact", "alpha+beta+i-1", -1),
                     Factor("fact", "alpha+2*beta+n+i-2", -1))),),
            doc="BC_n constant term identity"),
        ProductFormula("rhs.ct_main", ("n", "m", "x"), (_conj_block("x", "m"),),
                       prefactors=(Factor("fact", "n"),),
                       doc="n! times rhs.conjecture1"),
        ProductFormula("rhs.tn", ("n", "m", "x"), (), prefactors=(
            Factor("fact", "n-1"), Factor("fact", "n+x-1"), Factor("fact", "2*n+x-m-1"),
            Factor("fact", "2*n+x+m-2"), Factor("fact", "n+m-1", -1), Factor("fact", "n+x-m-1", -1),
            Factor("fact", "2*n+x-1", -1), Factor("fact", "2*n+x-2", -1)),
            doc="Gamma-ratio closed form of t_n = det A_n / det A_{n-1}"),
    ]
}

def tn_closed_form(n, m, x):
    """``Gamma(n)Gamma(n+x)Gamma(2n+x-m)Gamma(2n+x+m-1) /
    (Gamma(n+m)Gamma(n+x-m)Gamma(2n+x)Gamma(2n+x-1))`` at integers."""
    args = {"n": n, "n+x": n + x, "2n+x-m": 2 * n + x - m, "2n+x+m-1": 2 * n + x + m - 1,
            "n+m": n + m, "n+x-m": n + x - m, "2n+x": 2 * n + x, "2n+x-1": 2 * n + x - 1}
    bad = {k: v for k, v in args.items() if v <= 0}
    if bad:
        raise GammaPoleError(f"Gamma argument(s) not positive: {bad}", arguments=bad)
    return eval_product("rhs.tn", {"n": n, "m": m, "x": x})
