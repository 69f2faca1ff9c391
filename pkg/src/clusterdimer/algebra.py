"""Exact multivariate Laurent-polynomial and rational-function arithmetic.

Everything is built on `fractions.Fraction`, so all computations are exact.
The value types are:

  Monomial          sign * prod(var^exponent) with rational exponents
  LaurentPoly       sum of rational coefficients times integer-exponent monomials
  RationalFunction  Monomial * LaurentPoly / LaurentPoly in a canonical form

Rational exponents are confined to the monomial prefactor of a
RationalFunction; polynomial bodies always carry integer exponents.  Sums of
values whose prefactors differ by non-integer exponents (such as x^(1/2) + x)
are not representable and raise ValueError; they never arise in the intended
computations, where a whole expression is rescaled by one common monomial.

Canonical form of a RationalFunction:
  * numerator and denominator share no monomial factor (per-variable minimum
    exponent is zero in each),
  * the denominator's lexicographically leading term has coefficient +1,
  * exact polynomial division is attempted, so a denominator that divides the
    numerator (or vice versa) is always cancelled.
Common non-monomial factors are otherwise left in place; equality testing is
exact regardless, by cross multiplication.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

Key = tuple[tuple[str, int], ...]

RESERVED_SPECTRAL = ("lambda", "mu")


def _fr(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class Monomial:
    """Signed monomial with rational exponents, e.g. -x^(2/3)*y^(-1)."""

    __slots__ = ("sign", "exps", "_hash")

    def __init__(self, exps: Mapping[str, Fraction] | Iterable[tuple[str, Fraction]] = (), sign: int = 1):
        if sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        items = exps.items() if isinstance(exps, Mapping) else exps
        cleaned = tuple(sorted((v, _fr(e)) for v, e in items if _fr(e) != 0))
        self.sign = sign
        self.exps = cleaned
        self._hash = hash((sign, cleaned))

    @staticmethod
    def one() -> "Monomial":
        return Monomial()

    @staticmethod
    def var(name: str, exp=1) -> "Monomial":
        return Monomial(((name, _fr(exp)),))

    def exponent(self, name: str) -> Fraction:
        for v, e in self.exps:
            if v == name:
                return e
        return Fraction(0)

    def variables(self) -> list[str]:
        return [v for v, _ in self.exps]

    def is_one(self) -> bool:
        return self.sign == 1 and not self.exps

    def is_integral(self) -> bool:
        return all(e.denominator == 1 for _, e in self.exps)

    def __mul__(self, other: "Monomial") -> "Monomial":
        d = dict(self.exps)
        for v, e in other.exps:
            d[v] = d.get(v, Fraction(0)) + e
        return Monomial(d, self.sign * other.sign)

    def inverse(self) -> "Monomial":
        return Monomial({v: -e for v, e in self.exps}, self.sign)

    def __truediv__(self, other: "Monomial") -> "Monomial":
        return self * other.inverse()

    def pow(self, k) -> "Monomial":
        k = _fr(k)
        if self.sign == -1:
            if k.denominator != 1:
                raise ValueError("fractional power of a negative monomial")
            sign = -1 if k.numerator % 2 else 1
        else:
            sign = 1
        return Monomial({v: e * k for v, e in self.exps}, sign)

    def __eq__(self, other) -> bool:
        return isinstance(other, Monomial) and self.sign == other.sign and self.exps == other.exps

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Monomial({render_monomial(self)!r})"


def render_monomial(m: Monomial) -> str:
    parts = []
    for v, e in m.exps:
        if e == 1:
            parts.append(v)
        elif e.denominator == 1:
            parts.append(f"{v}^{e.numerator}" if e >= 0 else f"{v}^({e.numerator})")
        else:
            parts.append(f"{v}^({e.numerator}/{e.denominator})")
    body = "*".join(parts) if parts else "1"
    return "-" + body if m.sign < 0 else body


class LaurentPoly:
    """Sparse Laurent polynomial: dict from integer-exponent keys to Fractions."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Key, Fraction] | None = None):
        self.terms: dict[Key, Fraction] = {}
        if terms:
            for k, c in terms.items():
                c = _fr(c)
                if c != 0:
                    self.terms[k] = c

    @staticmethod
    def zero() -> "LaurentPoly":
        return LaurentPoly()

    @staticmethod
    def const(c) -> "LaurentPoly":
        c = _fr(c)
        return LaurentPoly({(): c} if c != 0 else {})

    @staticmethod
    def var(name: str, exp: int = 1) -> "LaurentPoly":
        return LaurentPoly({((name, exp),): Fraction(1)})

    @staticmethod
    def from_monomial_key(key: Key, coeff=1) -> "LaurentPoly":
        return LaurentPoly({key: _fr(coeff)})

    def is_zero(self) -> bool:
        return not self.terms

    def is_const(self) -> bool:
        return all(k == () for k in self.terms)

    def const_value(self) -> Fraction:
        if self.is_zero():
            return Fraction(0)
        if not self.is_const():
            raise ValueError("not a constant polynomial")
        return self.terms[()]

    def variables(self) -> set[str]:
        out: set[str] = set()
        for k in self.terms:
            out.update(v for v, _ in k)
        return out

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, Fraction(0)) + c
            if s == 0:
                out.pop(k, None)
            else:
                out[k] = s
        res = LaurentPoly()
        res.terms = out
        return res

    def __neg__(self) -> "LaurentPoly":
        res = LaurentPoly()
        res.terms = {k: -c for k, c in self.terms.items()}
        return res

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        out: dict[Key, Fraction] = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                k = _mul_keys(k1, k2)
                s = out.get(k, Fraction(0)) + c1 * c2
                if s == 0:
                    out.pop(k, None)
                else:
                    out[k] = s
        res = LaurentPoly()
        res.terms = out
        return res

    def scale(self, c) -> "LaurentPoly":
        c = _fr(c)
        res = LaurentPoly()
        if c != 0:
            res.terms = {k: c * v for k, v in self.terms.items()}
        return res

    def shift(self, key: Key) -> "LaurentPoly":
        """Multiply by the monomial with the given integer-exponent key."""
        res = LaurentPoly()
        res.terms = {_mul_keys(k, key): c for k, c in self.terms.items()}
        return res

    def content_key(self) -> Key:
        """Per-variable minimum exponent over all terms (the monomial content)."""
        if self.is_zero():
            return ()
        allvars = self.variables()
        mins = {v: min(dict(k).get(v, 0) for k in self.terms) for v in allvars}
        return tuple(sorted((v, e) for v, e in mins.items() if e != 0))

    def leading_key(self) -> Key:
        return max(self.terms, key=_lex_sort_key)

    def leading_coeff(self) -> Fraction:
        return self.terms[self.leading_key()]

    def diff(self, name: str) -> "LaurentPoly":
        out: dict[Key, Fraction] = {}
        for k, c in self.terms.items():
            d = dict(k)
            e = d.get(name, 0)
            if e == 0:
                continue
            d[name] = e - 1
            nk = tuple(sorted((v, x) for v, x in d.items() if x != 0))
            s = out.get(nk, Fraction(0)) + c * e
            if s == 0:
                out.pop(nk, None)
            else:
                out[nk] = s
        res = LaurentPoly()
        res.terms = out
        return res

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentPoly) and self.terms == other.terms

    def __repr__(self):
        return f"LaurentPoly({render(RationalFunction.from_poly(self))!r})"


def _mul_keys(k1: Key, k2: Key) -> Key:
    d = dict(k1)
    for v, e in k2:
        d[v] = d.get(v, 0) + e
    return tuple(sorted((v, e) for v, e in d.items() if e != 0))


def _lex_sort_key(k: Key):
    # Lexicographic on variable names, then exponents; fixes the leading term.
    return tuple((v, e) for v, e in k)


def exact_div(num: LaurentPoly, den: LaurentPoly) -> LaurentPoly | None:
    """Exact quotient num/den as a polynomial, or None when den does not divide.

    Both arguments must have nonnegative exponents (call after content
    extraction).  Standard single-divisor reduction in lex order.
    """
    if den.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    if num.is_zero():
        return LaurentPoly.zero()
    lead = den.leading_key()
    lead_c = den.terms[lead]
    lead_d = dict(lead)
    rem = LaurentPoly(dict(num.terms))
    quot: dict[Key, Fraction] = {}
    while not rem.is_zero():
        rk = rem.leading_key()
        rc = rem.terms[rk]
        rd = dict(rk)
        qd = {}
        ok = True
        for v, e in lead_d.items():
            q = rd.get(v, 0) - e
            if q < 0:
                ok = False
                break
            qd[v] = q
        if not ok:
            return None
        for v, e in rd.items():
            if v not in lead_d and e != 0:
                qd[v] = e
        if any(e < 0 for e in qd.values()):
            return None
        qk = tuple(sorted((v, e) for v, e in qd.items() if e != 0))
        qc = rc / lead_c
        quot[qk] = qc
        rem = rem - den.shift(qk).scale(qc)
    return LaurentPoly(quot)


class RationalFunction:
    """Canonical ratio prefactor * numerator / denominator; see module docstring."""

    __slots__ = ("pref", "num", "den")

    def __init__(self, pref: Monomial, num: LaurentPoly, den: LaurentPoly):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            self.pref = Monomial.one()
            self.num = LaurentPoly.zero()
            self.den = LaurentPoly.const(1)
            return
        sign_c = Fraction(pref.sign)
        pref = Monomial(dict(pref.exps))
        nc = num.content_key()
        dc = den.content_key()
        num = num.shift(_neg_key(nc))
        den = den.shift(_neg_key(dc))
        pref = pref * Monomial({v: Fraction(e) for v, e in nc}) * Monomial({v: Fraction(-e) for v, e in dc})
        if not den.is_const():
            q = exact_div(num, den)
            if q is not None:
                num, den = q, LaurentPoly.const(1)
            else:
                q = exact_div(den, num)
                if q is not None:
                    num, den = LaurentPoly.const(1), q
        lc = den.leading_coeff()
        num = num.scale(sign_c / lc)
        den = den.scale(1 / lc)
        # Re-extract content the cancellations may have exposed.
        nc = num.content_key()
        dc = den.content_key()
        if nc or dc:
            num = num.shift(_neg_key(nc))
            den = den.shift(_neg_key(dc))
            pref = pref * Monomial({v: Fraction(e) for v, e in nc}) * Monomial({v: Fraction(-e) for v, e in dc})
        self.pref = pref
        self.num = num
        self.den = den

    # -- constructors ------------------------------------------------------
    @staticmethod
    def const(c) -> "RationalFunction":
        return RationalFunction(Monomial.one(), LaurentPoly.const(c), LaurentPoly.const(1))

    @staticmethod
    def var(name: str, exp=1) -> "RationalFunction":
        e = _fr(exp)
        return RationalFunction(Monomial.var(name, e), LaurentPoly.const(1), LaurentPoly.const(1))

    @staticmethod
    def from_monomial(m: Monomial) -> "RationalFunction":
        return RationalFunction(Monomial(dict(m.exps)), LaurentPoly.const(m.sign), LaurentPoly.const(1))

    @staticmethod
    def from_poly(p: LaurentPoly) -> "RationalFunction":
        return RationalFunction(Monomial.one(), p, LaurentPoly.const(1))

    # -- predicates --------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.pref.is_one() and self.num == LaurentPoly.const(1) and self.den == LaurentPoly.const(1)

    def is_monomial(self) -> bool:
        return len(self.num.terms) == 1 and self.den == LaurentPoly.const(1)

    def as_monomial(self) -> Monomial:
        """The value as a signed monomial with the coefficient required to be +-1."""
        if not self.is_monomial():
            raise ValueError("not a monomial")
        (key, c), = self.num.terms.items()
        if c not in (1, -1):
            raise ValueError(f"monomial has non-unit coefficient {c}")
        return self.pref * Monomial({v: Fraction(e) for v, e in key}, 1 if c > 0 else -1)

    def as_monomial_with_coeff(self) -> tuple[Fraction, Monomial]:
        if not self.is_monomial():
            raise ValueError("not a monomial")
        (key, c), = self.num.terms.items()
        return c, self.pref * Monomial({v: Fraction(e) for v, e in key})

    def variables(self) -> set[str]:
        out = set(self.pref.variables())
        out |= self.num.variables()
        out |= self.den.variables()
        return out

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other) -> "RationalFunction":
        other = _coerce(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        d = self.pref / other.pref
        if not d.is_integral():
            raise ValueError(f"sum not representable: prefactors {render_monomial(self.pref)} vs {render_monomial(other.pref)}")
        dk = tuple((v, int(e)) for v, e in d.exps)
        n = self.num.shift(dk) * other.den + other.num * self.den
        return RationalFunction(other.pref, n, self.den * other.den)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(self.pref, -self.num, self.den)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other) -> "RationalFunction":
        other = _coerce(other)
        return RationalFunction(self.pref * other.pref, self.num * other.num, self.den * other.den)

    def __rmul__(self, other):
        return self.__mul__(other)

    def inverse(self) -> "RationalFunction":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RationalFunction(self.pref.inverse(), self.den, self.num)

    def __truediv__(self, other):
        return self * _coerce(other).inverse()

    def __rtruediv__(self, other):
        return _coerce(other) * self.inverse()

    def __pow__(self, k: int) -> "RationalFunction":
        if not isinstance(k, int):
            raise TypeError("only integer powers of rational functions")
        if k < 0:
            return self.inverse() ** (-k)
        out = RationalFunction.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def __eq__(self, other) -> bool:
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        if self.is_zero():
            return other.is_zero()
        if other.is_zero():
            return False
        d = self.pref / other.pref
        if not d.is_integral():
            return False
        dk = tuple((v, int(e)) for v, e in d.exps)
        return self.num.shift(dk) * other.den == other.num * self.den

    def __hash__(self):
        # Canonical-enough hash: full reduction is not guaranteed, so hash
        # only by zero-ness; exact __eq__ does the real work in dict use.
        return 0 if self.is_zero() else 1

    # -- calculus and substitution ------------------------------------------
    def diff(self, name: str) -> "RationalFunction":
        """Exact partial derivative, honoring rational prefactor exponents."""
        base = RationalFunction(
            self.pref,
            self.num.diff(name) * self.den - self.num * self.den.diff(name),
            self.den * self.den,
        )
        e = self.pref.exponent(name)
        if e != 0:
            base = base + RationalFunction.const(e) * self / RationalFunction.var(name)
        return base

    def substitute(self, bindings: Mapping[str, "RationalFunction"]) -> "RationalFunction":
        """Substitute variables by rational functions, exactly.

        A variable appearing with a non-integer exponent in the prefactor may
        only be bound to a monomial value.
        """
        pref_static = {}
        acc = RationalFunction.const(1)
        for v, e in self.pref.exps:
            if v not in bindings:
                pref_static[v] = e
                continue
            b = bindings[v]
            if e.denominator == 1:
                acc = acc * (b ** int(e))
            else:
                acc = acc * RationalFunction.from_monomial(b.as_monomial().pow(e))
        acc = acc * RationalFunction.from_monomial(Monomial(pref_static))
        num_val = _subst_poly(self.num, bindings)
        den_val = _subst_poly(self.den, bindings)
        return acc * num_val / den_val

    def eval_rational(self, point: Mapping[str, Fraction]) -> Fraction:
        """Debug evaluator at a rational point (integer exponents only)."""
        if not self.pref.is_integral():
            raise ValueError("cannot evaluate fractional exponents at a rational point")
        out = Fraction(self.pref.sign)
        for v, e in self.pref.exps:
            out *= _fr(point[v]) ** int(e)
        n = sum((c * _eval_key(k, point) for k, c in self.num.terms.items()), Fraction(0))
        d = sum((c * _eval_key(k, point) for k, c in self.den.terms.items()), Fraction(0))
        return out * n / d

    def __repr__(self):
        return f"RF({render(self)!r})"


def _neg_key(k: Key) -> Key:
    return tuple((v, -e) for v, e in k)


def product_power_equal(factors1: list[tuple["RationalFunction", int]], factors2: list[tuple["RationalFunction", int]]) -> bool:
    """Exact equality of two products prod f^k without canonicalizing the
    intermediate quotients (no division attempts; cross-multiplied compare)."""
    p1, n1, d1 = _accumulate_product(factors1)
    p2, n2, d2 = _accumulate_product(factors2)
    d = p1 / p2
    if not d.is_integral():
        return False
    dk = tuple((v, int(e)) for v, e in d.exps)
    lhs = n1.shift(dk) * d2
    rhs = n2 * d1
    if d.sign < 0:
        rhs = -rhs
    return lhs == rhs


def _accumulate_product(factors):
    pref = Monomial.one()
    num = LaurentPoly.const(1)
    den = LaurentPoly.const(1)
    for f, k in factors:
        if k == 0:
            continue
        if f.is_zero():
            raise ZeroDivisionError("zero factor in product")
        pref = pref * f.pref.pow(k)
        a, b = (f.num, f.den) if k > 0 else (f.den, f.num)
        num = num * _poly_pow(a, abs(k))
        den = den * _poly_pow(b, abs(k))
        nc, dc = num.content_key(), den.content_key()
        if nc or dc:
            num = num.shift(_neg_key(nc))
            den = den.shift(_neg_key(dc))
            pref = pref * Monomial({v: Fraction(e) for v, e in nc}) * Monomial({v: Fraction(-e) for v, e in dc})
    return pref, num, den


def _poly_pow(p: LaurentPoly, k: int) -> LaurentPoly:
    out = LaurentPoly.const(1)
    base = p
    while k:
        if k & 1:
            out = out * base
        k >>= 1
        if k:
            base = base * base
    return out


def monomial_ratio(a: RationalFunction, b: RationalFunction) -> Monomial | None:
    """The signed monomial m with a == m*b, or None.

    Avoids constructing the quotient (whose canonicalization would attempt a
    polynomial division); cost is two polynomial products plus a dictionary
    comparison.
    """
    if b.is_zero():
        raise ZeroDivisionError("ratio with zero")
    if a.is_zero():
        return None
    p1 = a.num * b.den
    p2 = b.num * a.den
    k1, k2 = p1.leading_key(), p2.leading_key()
    coef = p1.terms[k1] / p2.terms[k2]
    if coef not in (1, -1):
        return None
    shift_key = _mul_keys(k1, _neg_key(k2))
    if p1 != p2.shift(shift_key).scale(coef):
        return None
    m = (a.pref / b.pref) * Monomial({v: Fraction(e) for v, e in shift_key}, 1 if coef > 0 else -1)
    return m


def _eval_key(k: Key, point: Mapping[str, Fraction]) -> Fraction:
    out = Fraction(1)
    for v, e in k:
        out *= _fr(point[v]) ** e
    return out


def _coerce(x) -> RationalFunction:
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, (int, Fraction)):
        return RationalFunction.const(x)
    if isinstance(x, Monomial):
        return RationalFunction.from_monomial(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to RationalFunction")


def _subst_poly(p: LaurentPoly, bindings: Mapping[str, RationalFunction]) -> RationalFunction:
    total = RationalFunction.const(0)
    for k, c in p.terms.items():
        term = RationalFunction.const(c)
        for v, e in k:
            b = bindings.get(v)
            if b is None:
                term = term * RationalFunction.var(v, e)
            else:
                term = term * (b ** e)
        total = total + term
    return total


# -- matrices ---------------------------------------------------------------

def mat_identity(n: int) -> list[list[RationalFunction]]:
    return [[RationalFunction.const(1 if i == j else 0) for j in range(n)] for i in range(n)]


def mat_mul(a, b) -> list[list[RationalFunction]]:
    n, m, p = len(a), len(b), len(b[0])
    assert len(a[0]) == m
    return [[sum((a[i][k] * b[k][j] for k in range(m)), RationalFunction.const(0)) for j in range(p)] for i in range(n)]


def mat_sub(a, b) -> list[list[RationalFunction]]:
    return [[a[i][j] - b[i][j] for j in range(len(a[0]))] for i in range(len(a))]


def mat_scale(a, c: RationalFunction) -> list[list[RationalFunction]]:
    return [[x * c for x in row] for row in a]


def determinant(m: list[list[RationalFunction]]) -> RationalFunction:
    """Exact determinant: cofactor expansion for n <= 4, otherwise a
    division-free expansion memoized over column subsets (well suited to the
    sparse, monomial-heavy matrices appearing here)."""
    n = len(m)
    if n == 0:
        return RationalFunction.const(1)
    if any(len(row) != n for row in m):
        raise ValueError("matrix is not square")
    if n <= 4:
        return _det_cofactor(m)
    return _det_subsets(m)


def _det_cofactor(m) -> RationalFunction:
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = RationalFunction.const(0)
    for j in range(n):
        if m[0][j].is_zero():
            continue
        sub = [[m[i][k] for k in range(n) if k != j] for i in range(1, n)]
        term = m[0][j] * _det_cofactor(sub)
        total = total + term if j % 2 == 0 else total - term
    return total


def _det_subsets(m) -> RationalFunction:
    n = len(m)
    zero = RationalFunction.const(0)
    states: dict[int, RationalFunction] = {0: RationalFunction.const(1)}
    for i in range(n):
        nxt: dict[int, RationalFunction] = {}
        for mask, val in states.items():
            for j in range(n):
                bit = 1 << j
                if mask & bit or m[i][j].is_zero():
                    continue
                below = bin(mask & (bit - 1)).count("1")
                term = val * m[i][j]
                if (i + below) % 2:
                    term = -term
                key = mask | bit
                nxt[key] = nxt.get(key, zero) + term
        states = {k: v for k, v in nxt.items() if not v.is_zero()}
        if not states:
            return zero
    return states.get((1 << n) - 1, zero)


# -- rendering and parsing ----------------------------------------------------

def render(f: RationalFunction) -> str:
    """Canonical text form; parse(render(f)) == f."""
    if f.is_zero():
        return "0"
    num_s = _render_poly_with_pref(f.num, f.pref)
    if f.den == LaurentPoly.const(1):
        return num_s
    den_s = _render_poly_with_pref(f.den, Monomial.one())
    if len(f.num.terms) > 1 or not f.pref.is_one():
        num_s = f"({num_s})"
    if len(f.den.terms) > 1:
        den_s = f"({den_s})"
    return f"{num_s}/{den_s}"


def _render_poly_with_pref(p: LaurentPoly, pref: Monomial) -> str:
    items = sorted(p.terms.items(), key=lambda kv: _lex_sort_key(kv[0]), reverse=True)
    chunks = []
    for k, c in items:
        mono = pref * Monomial({v: Fraction(e) for v, e in k})
        body = render_monomial(Monomial(dict(mono.exps)))
        neg = (c < 0) != (mono.sign < 0)
        c = abs(c)
        if body == "1":
            text = str(c)
        elif c == 1:
            text = body
        else:
            text = f"{c}*{body}"
        if not chunks:
            chunks.append(("-" if neg else "") + text)
        else:
            chunks.append((" - " if neg else " + ") + text)
    return "".join(chunks)


class _Tok:
    def __init__(self, kind, val):
        self.kind, self.val = kind, val


def _tokenize(s: str) -> list[_Tok]:
    toks = []
    i, n = 0, len(s)
    while i < n:
        ch = s[i]
        if ch.isspace():
            i += 1
        elif ch.isalpha():
            j = i + 1
            while j < n and (s[j].isalnum() or s[j] == "_"):
                j += 1
            toks.append(_Tok("name", s[i:j]))
            i = j
        elif ch.isdigit():
            j = i + 1
            while j < n and s[j].isdigit():
                j += 1
            toks.append(_Tok("int", int(s[i:j])))
            i = j
        elif ch in "+-*/^()":
            toks.append(_Tok(ch, ch))
            i += 1
        else:
            raise ValueError(f"unexpected character {ch!r} in expression")
    toks.append(_Tok("end", None))
    return toks


class _Parser:
    def __init__(self, toks):
        self.toks = toks
        self.pos = 0

    def peek(self):
        return self.toks[self.pos]

    def take(self, kind=None):
        t = self.toks[self.pos]
        if kind and t.kind != kind:
            raise ValueError(f"expected {kind}, got {t.kind}")
        self.pos += 1
        return t

    def expr(self) -> RationalFunction:
        t = self.peek()
        neg = False
        if t.kind in "+-":
            self.take()
            neg = t.kind == "-"
        out = self.term()
        if neg:
            out = -out
        while self.peek().kind in "+-":
            op = self.take().kind
            rhs = self.term()
            out = out + rhs if op == "+" else out - rhs
        return out

    def term(self) -> RationalFunction:
        out = self.factor()
        while self.peek().kind in "*/":
            op = self.take().kind
            rhs = self.factor()
            out = out * rhs if op == "*" else out / rhs
        return out

    def factor(self) -> RationalFunction:
        if self.peek().kind == "-":
            self.take()
            return -self.factor()
        base = self.atom()
        if self.peek().kind == "^":
            self.take()
            e = self.exponent()
            if e.denominator == 1:
                return base ** int(e)
            return RationalFunction.from_monomial(base.as_monomial().pow(e))
        return base

    def exponent(self) -> Fraction:
        if self.peek().kind == "(":
            self.take()
            e = self.signed_rational()
            self.take(")")
            return e
        return self.signed_rational()

    def signed_rational(self) -> Fraction:
        neg = False
        if self.peek().kind == "-":
            self.take()
            neg = True
        p = self.take("int").val
        q = 1
        if self.peek().kind == "/":
            save = self.pos
            self.take()
            if self.peek().kind == "int":
                q = self.take("int").val
            else:
                self.pos = save
        f = Fraction(p, q)
        return -f if neg else f

    def atom(self) -> RationalFunction:
        t = self.peek()
        if t.kind == "name":
            self.take()
            return RationalFunction.var(t.val)
        if t.kind == "int":
            self.take()
            return RationalFunction.const(t.val)
        if t.kind == "(":
            self.take()
            out = self.expr()
            self.take(")")
            return out
        raise ValueError(f"unexpected token {t.kind}")


def parse(text: str) -> RationalFunction:
    """Parse the expression grammar: names, integers, + - * / ^ and parentheses."""
    p = _Parser(_tokenize(text))
    out = p.expr()
    p.take("end")
    return out


RF = RationalFunction
