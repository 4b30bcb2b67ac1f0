"""Exact rationals, sparse multivariate Laurent polynomials and binomials.

Scalars are plain ``int`` or :class:`fractions.Fraction`; both are exact and a
``Fraction`` is always in lowest terms.  Coefficients of a :class:`MultiPoly`
may be either kind (``Fraction(3) == 3`` and they hash alike), so integer
computations never pay for rational arithmetic.

Binomial convention, used everywhere in the package: ``binom(u, k)`` is zero
when ``k < 0`` and otherwise the falling factorial ``u(u-1)...(u-k+1)/k!``.
For integer ``u >= 0`` this also gives zero when ``k > u``.
"""

from fractions import Fraction
from math import comb, factorial
from numbers import Rational

from .errors import NonDivisibleError

__all__ = [
    "Fraction",
    "MultiPoly",
    "as_scalar",
    "binom_int",
    "binom_value",
    "binom_poly",
    "poly_arith",
    "phi_poly",
]

# exponents in scope stay in the hundreds; anything past this is a bug
MAX_EXPONENT = 1 << 20


def as_scalar(value):
    """Coerce to an exact scalar, collapsing integral fractions to ``int``."""
    if isinstance(value, bool):
        return int(value)
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    if isinstance(value, Rational):
        return as_scalar(Fraction(value.numerator, value.denominator))
    if isinstance(value, str):
        return as_scalar(Fraction(value))
    raise TypeError(f"not an exact scalar: {value!r}")


def _check_exponents(exps):
    for e in exps:
        if not -MAX_EXPONENT < e < MAX_EXPONENT:
            raise OverflowError(f"Laurent exponent {e} out of range")


class MultiPoly:
    """Immutable sparse Laurent polynomial with rational coefficients.

    ``terms`` maps exponent tuples (one entry per name in ``variables``,
    negative entries allowed) to nonzero coefficients.  Operands over
    different variable lists are aligned on the union of names, keeping
    the left operand's order first.
    """

    __slots__ = ("variables", "terms", "_hash")

    def __init__(self, variables, terms=None):
        self.variables = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise ValueError(f"repeated variable in {self.variables}")
        k = len(self.variables)
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != k:
                raise ValueError(f"exponent {exps} does not match {self.variables}")
            if c:
                clean[exps] = as_scalar(c)
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, variables, terms):
        # trusted constructor: terms already clean
        p = object.__new__(cls)
        p.variables = variables
        p.terms = terms
        p._hash = None
        return p

    # -- constructors -----------------------------------------------------

    @classmethod
    def var(cls, name, variables=None):
        variables = tuple(variables) if variables is not None else (name,)
        exps = tuple(1 if v == name else 0 for v in variables)
        if name not in variables:
            raise ValueError(f"{name} not in {variables}")
        return cls._raw(variables, {exps: 1})

    @classmethod
    def const(cls, c, variables=()):
        variables = tuple(variables)
        c = as_scalar(c)
        return cls._raw(variables, {(0,) * len(variables): c} if c else {})

    @classmethod
    def monomial(cls, variables, exps, coeff=1):
        exps = tuple(exps)
        _check_exponents(exps)
        return cls(variables, {exps: coeff})

    @classmethod
    def coerce(cls, value, variables=()):
        if isinstance(value, MultiPoly):
            return value
        return cls.const(value, variables)

    # -- structure --------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return not self.terms or set(self.terms) == {(0,) * len(self.variables)}

    def constant_term(self):
        return self.terms.get((0,) * len(self.variables), 0)

    def coefficient(self, exps):
        if isinstance(exps, dict):
            exps = tuple(exps.get(v, 0) for v in self.variables)
        return self.terms.get(tuple(exps), 0)

    def _index(self, name):
        try:
            return self.variables.index(name)
        except ValueError:
            raise KeyError(name) from None

    def degree(self, name=None):
        """Largest exponent of ``name`` (total degree if omitted); -inf for 0."""
        if not self.terms:
            return float("-inf")
        if name is None:
            return max(sum(e) for e in self.terms)
        if name not in self.variables:
            return 0
        i = self._index(name)
        return max(e[i] for e in self.terms)

    def min_degree(self, name):
        if not self.terms:
            return float("inf")
        if name not in self.variables:
            return 0
        i = self._index(name)
        return min(e[i] for e in self.terms)

    def support_box(self):
        """Per-variable (min, max) exponent pairs."""
        if not self.terms:
            return []
        cols = list(zip(*self.terms))
        return [(min(c), max(c)) for c in cols]

    def coefficients_integral(self):
        return all(isinstance(as_scalar(c), int) for c in self.terms.values())

    def leading(self):
        exps = max(self.terms)
        return exps, self.terms[exps]

    # -- alignment --------------------------------------------------------

    def with_variables(self, variables):
        """Re-express over ``variables`` (a superset of the used names)."""
        variables = tuple(variables)
        if variables == self.variables:
            return self
        pos = {v: i for i, v in enumerate(variables)}
        idx = []
        for i, v in enumerate(self.variables):
            if v in pos:
                idx.append(pos[v])
            elif any(e[i] for e in self.terms):
                raise ValueError(f"variable {v} is used and cannot be dropped")
            else:
                idx.append(None)
        k = len(variables)
        terms = {}
        for exps, c in self.terms.items():
            new = [0] * k
            for e, j in zip(exps, idx):
                if j is not None:
                    new[j] = e
            terms[tuple(new)] = c
        return MultiPoly._raw(variables, terms)

    def _align(self, other):
        if not isinstance(other, MultiPoly):
            return self, MultiPoly.const(as_scalar(other), self.variables)
        if other.variables == self.variables:
            return self, other
        union = self.variables + tuple(v for v in other.variables if v not in self.variables)
        return self.with_variables(union), other.with_variables(union)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        try:
            a, b = self._align(other)
        except TypeError:
            return NotImplemented
        terms = dict(a.terms)
        for exps, c in b.terms.items():
            s = terms.get(exps, 0) + c
            if s:
                terms[exps] = s
            else:
                terms.pop(exps, None)
        return MultiPoly._raw(a.variables, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        try:
            a, b = self._align(other)
        except TypeError:
            return NotImplemented
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            try:
                c = as_scalar(other)
            except TypeError:
                return NotImplemented
            if not c:
                return MultiPoly._raw(self.variables, {})
            return MultiPoly._raw(self.variables, {e: v * c for e, v in self.terms.items()})
        a, b = self._align(other)
        if len(a.terms) < len(b.terms):
            a, b = b, a
        terms = {}
        get = terms.get
        for eb, cb in b.terms.items():
            for ea, ca in a.terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                terms[e] = get(e, 0) + ca * cb
        terms = {e: c for e, c in terms.items() if c}
        if terms:
            _check_exponents(max(terms))
            _check_exponents(min(terms))
        return MultiPoly._raw(a.variables, terms)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            if len(self.terms) != 1:
                raise NonDivisibleError("only monomials are units in a Laurent ring")
            (exps, c), = self.terms.items()
            return MultiPoly._raw(self.variables,
                                  {tuple(e * k for e in exps): as_scalar(Fraction(1) / c ** -k)})
        result = MultiPoly.const(1, self.variables)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def exact_div(self, other):
        """Quotient in the Laurent ring; raises ``NonDivisibleError`` otherwise.

        Division by lex-leading terms.  In a Laurent ring every quotient term
        lies between ``lead(a)/lead(b)`` and ``trail(a)/trail(b)`` in the
        (translation invariant) lex order, which bounds the loop.
        """
        if not isinstance(other, MultiPoly):
            c = as_scalar(other)
            if not c:
                raise ZeroDivisionError("division by zero polynomial")
            inv = Fraction(1) / c
            return MultiPoly._raw(self.variables,
                                  {e: as_scalar(v * inv) for e, v in self.terms.items()})
        if not other.terms:
            raise ZeroDivisionError("division by zero polynomial")
        a, b = self._align(other)
        if not a.terms:
            return a
        if len(b.terms) == 1:
            (eb, cb), = b.terms.items()
            inv = Fraction(1) / cb
            return MultiPoly._raw(a.variables, {
                tuple(x - y for x, y in zip(ea, eb)): as_scalar(ca * inv)
                for ea, ca in a.terms.items()})
        lead_b, lead_c = b.leading()
        inv_lead = Fraction(1) / lead_c
        trail_b = min(b.terms)
        floor = tuple(x - y for x, y in zip(min(a.terms), trail_b))
        rem = dict(a.terms)
        quot = {}
        bterms = list(b.terms.items())
        while rem:
            er = max(rem)
            q_exp = tuple(x - y for x, y in zip(er, lead_b))
            if q_exp < floor:
                raise NonDivisibleError("remainder is nonzero", dividend=str(self), divisor=str(other))
            q_c = as_scalar(rem[er] * inv_lead)
            quot[q_exp] = q_c
            for eb, cb in bterms:
                e = tuple(x + y for x, y in zip(q_exp, eb))
                s = rem.get(e, 0) - q_c * cb
                if s:
                    rem[e] = as_scalar(s)
                else:
                    rem.pop(e, None)
        return MultiPoly._raw(a.variables, quot)

    def __floordiv__(self, other):
        return self.exact_div(other)

    def __rfloordiv__(self, other):
        return MultiPoly.const(other, self.variables).exact_div(self)

    # -- comparison -------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            if other.variables == self.variables:
                return self.terms == other.terms
            a, b = self._align(other)
            return a.terms == b.terms
        try:
            c = as_scalar(other)
        except TypeError:
            return NotImplemented
        if not c:
            return not self.terms
        return self.is_constant() and self.constant_term() == c

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.constant_term())
            else:
                used = sorted(v for i, v in enumerate(self.variables)
                              if any(e[i] for e in self.terms))
                self._hash = hash(frozenset(self.with_variables(used).terms.items()))
        return self._hash

    # -- substitution -----------------------------------------------------

    def evaluate(self, values):
        """Substitute scalars for some or all variables.

        Returns a scalar when every variable is bound, otherwise a polynomial
        over the remaining variables (in their original order).
        """
        bound = [(i, as_scalar(values[v])) for i, v in enumerate(self.variables) if v in values]
        free = [i for i, v in enumerate(self.variables) if v not in values]
        for i, val in bound:
            if val == 0 and any(e[i] < 0 for e in self.terms):
                raise ZeroDivisionError(f"negative power of {self.variables[i]} at 0")
        terms = {}
        for exps, c in self.terms.items():
            for i, val in bound:
                e = exps[i]
                if e >= 0:
                    c = c * val ** e
                else:
                    c = c * Fraction(1, 1) / val ** -e
            key = tuple(exps[i] for i in free)
            terms[key] = terms.get(key, 0) + c
        if not free:
            return as_scalar(terms.get((), 0))
        return MultiPoly(tuple(self.variables[i] for i in free), terms)

    def substitute(self, mapping):
        """Substitute polynomials (or scalars) for variables."""
        out = MultiPoly.const(0, tuple(v for v in self.variables if v not in mapping))
        for exps, c in self.terms.items():
            term = MultiPoly.const(c, out.variables)
            for v, e in zip(self.variables, exps):
                if not e:
                    continue
                factor = MultiPoly.coerce(mapping[v]) if v in mapping else MultiPoly.var(v)
                term = term * factor ** e
            out = out + term
        return out

    def rename(self, mapping):
        return MultiPoly._raw(tuple(mapping.get(v, v) for v in self.variables), self.terms)

    # -- rendering --------------------------------------------------------

    def to_str(self):
        """Canonical text: lex-descending monomials, ``^`` powers, ``p/q`` coefficients."""
        if not self.terms:
            return "0"
        parts = []
        for exps in sorted(self.terms, reverse=True):
            c = self.terms[exps]
            mono = "*".join(v if e == 1 else f"{v}^{e}"
                            for v, e in zip(self.variables, exps) if e)
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{mag}*{mono}"
            else:
                body = str(mag)
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    __str__ = to_str

    def __repr__(self):
        return f"MultiPoly({list(self.variables)}, {self.to_str()!r})"


# ---------------------------------------------------------------------------
# binomials


def binom_int(n, k):
    """``binom(n, k)`` for integers, any sign of ``n``; zero for ``k < 0``."""
    if k < 0:
        return 0
    if n >= 0:
        return comb(n, k) if k <= n else 0
    # (-1)^k binom(k-n-1, k)
    return (-1) ** k * comb(k - n - 1, k)


def binom_value(u, k):
    """``binom(u, k)`` for an exact rational ``u`` by the falling factorial."""
    u = as_scalar(u)
    if isinstance(u, int):
        return binom_int(u, k)
    if k < 0:
        return 0
    num = Fraction(1)
    for l in range(k):
        num *= u - l
    return as_scalar(num / factorial(k))


def binom_poly(param, offset, k, variables=None):
    """``binom(param + offset, k)`` as a polynomial of degree ``k`` in ``param``."""
    variables = tuple(variables) if variables is not None else (param,)
    if k < 0:
        return MultiPoly.const(0, variables)
    t = MultiPoly.var(param, variables)
    out = MultiPoly.const(1, variables)
    for l in range(k):
        out = out * (t + (offset - l))
    return out.exact_div(factorial(k))


def poly_arith(a, b, op):
    """Dispatch for ``add``, ``sub``, ``mul`` and ``exact_div``."""
    if op == "add":
        return MultiPoly.coerce(a) + b
    if op == "sub":
        return MultiPoly.coerce(a) - b
    if op == "mul":
        return MultiPoly.coerce(a) * b
    if op == "exact_div":
        return MultiPoly.coerce(a).exact_div(b)
    raise ValueError(f"unknown op {op!r}")


def phi_poly(n, var="y"):
    """The Laurent polynomial whose coefficients give the factor multiplicities
    of ``det T_{n,n}(x)``:

        (1 + y^n - y^(n+1) + y^(2n)) (1 - y^n)^2 / (y^(n-1) (1 + y) (1 - y)^2)

    Computed by exact division; ``NonDivisibleError`` would mean the
    quotient is not a Laurent polynomial.
    """
    if n < 1:
        raise ValueError("n must be positive")
    y = MultiPoly.var(var)
    num = (1 + y ** n - y ** (n + 1) + y ** (2 * n)) * (1 - y ** n) ** 2
    den = y ** (n - 1) * (1 + y) * (1 - y) ** 2
    return num.exact_div(den)
