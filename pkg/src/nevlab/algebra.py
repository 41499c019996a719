"""Exact coefficient arithmetic for the two-field tower Q and Q(z).

Everything downstream (graded pieces, filtrations, dimension counts) relies
on this module being exact: coefficients are either `fractions.Fraction` or
:class:`RationalFunction` (a reduced quotient of univariate polynomials in z
with Fraction coefficients, monic denominator).  No floating point enters.

Multivariate homogeneous polynomials are stored sparsely as a dict mapping
exponent tuples (one entry per variable x0..xM, summing to the degree) to a
nonzero field element.  The monomial order used everywhere for vector and
matrix coordinates is graded lexicographic with x0 > x1 > ... > xM, realized
for a fixed degree as descending lexicographic order on exponent tuples.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

RATIONAL = "Q"
RATIONAL_FUNCTION = "Q(z)"


class FieldMismatch(ValueError):
    """Operands live over different coefficient fields."""


class ZeroDenominator(ZeroDivisionError):
    """A rational function was built with denominator 0."""


class PoleAtPoint(ZeroDivisionError):
    """A coefficient denominator vanishes at the requested point."""


class InhomogeneousInput(ValueError):
    """An operation requiring homogeneous input received a mixed-degree polynomial."""


# ---------------------------------------------------------------------------
# Univariate polynomials in z over Q, as tuples of Fractions (low degree first,
# no trailing zeros; the zero polynomial is the empty tuple).
# ---------------------------------------------------------------------------

def _ztrim(c: Sequence[Fraction]) -> tuple[Fraction, ...]:
    n = len(c)
    while n > 0 and c[n - 1] == 0:
        n -= 1
    return tuple(c[:n])


def _zadd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] += x
    return _ztrim(out)


def _zneg(a):
    return tuple(-x for x in a)


def _zmul(a, b):
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _ztrim(out)


def _zscale(a, s: Fraction):
    if s == 0:
        return ()
    return tuple(x * s for x in a)


def _zdivmod(a, b):
    """Exact polynomial division with remainder; b must be nonzero."""
    if not b:
        raise ZeroDenominator("division by the zero polynomial")
    a = list(a)
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    lead = b[-1]
    while len(_ztrim(a)) >= len(b):
        a = list(_ztrim(a))
        shift = len(a) - len(b)
        factor = a[-1] / lead
        q[shift] = factor
        for i, y in enumerate(b):
            a[shift + i] -= factor * y
    return _ztrim(q), _ztrim(a)


def _zgcd(a, b):
    """Monic gcd via Euclid's algorithm."""
    a, b = _ztrim(a), _ztrim(b)
    while b:
        a, b = b, _zdivmod(a, b)[1]
    if not a:
        return ()
    return _zscale(a, 1 / a[-1])


def _zeval(a, t: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * t + c
    return acc


def _zstr(a) -> str:
    if not a:
        return "0"
    parts = []
    for k in range(len(a) - 1, -1, -1):
        c = a[k]
        if c == 0:
            continue
        if k == 0:
            term = str(c)
        else:
            zk = "z" if k == 1 else f"z^{k}"
            if c == 1:
                term = zk
            elif c == -1:
                term = f"-{zk}"
            else:
                term = f"{c}*{zk}"
        parts.append(term)
    out = parts[0]
    for term in parts[1:]:
        out += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
    return out


class RationalFunction:
    """An element of Q(z): a reduced fraction of polynomials in z.

    Invariants: gcd(num, den) = 1, den is monic and nonzero, and the zero
    element is 0/1.  Instances are immutable and hashable; arithmetic coerces
    ints and Fractions.
    """

    __slots__ = ("num", "den")

    def __init__(self, num=0, den=1, _raw=False):
        if _raw:
            self.num, self.den = num, den
            return
        ncoef = self._coeffs(num)
        dcoef = self._coeffs(den)
        self.num, self.den = _rf_reduce(ncoef, dcoef)

    @staticmethod
    def _coeffs(v) -> tuple[Fraction, ...]:
        if isinstance(v, RationalFunction):
            raise TypeError("use arithmetic operators to combine rational functions")
        if isinstance(v, (int, Fraction)):
            return _ztrim((Fraction(v),))
        return _ztrim(tuple(Fraction(c) for c in v))

    # -- constructors ------------------------------------------------------
    @classmethod
    def zero(cls):
        return _RF_ZERO

    @classmethod
    def one(cls):
        return _RF_ONE

    @classmethod
    def z(cls):
        return _RF_Z

    @classmethod
    def from_fraction(cls, q) -> "RationalFunction":
        q = Fraction(q)
        if q == 0:
            return _RF_ZERO
        return cls((q,), (Fraction(1),), _raw=True)

    # -- structure ---------------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return not self.num

    @property
    def is_constant(self) -> bool:
        return len(self.num) <= 1 and len(self.den) == 1

    def constant_value(self) -> Fraction:
        if not self.is_constant:
            raise ValueError(f"not a constant: {self}")
        return self.num[0] / self.den[0] if self.num else Fraction(0)

    def evaluate(self, a) -> Fraction:
        """Value at z = a, exact; raises PoleAtPoint when the denominator vanishes."""
        a = Fraction(a)
        dv = _zeval(self.den, a)
        if dv == 0:
            raise PoleAtPoint(f"denominator of {self} vanishes at z={a}")
        return _zeval(self.num, a) / dv

    # -- arithmetic --------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, (int, Fraction)):
            return RationalFunction.from_fraction(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        n = _zadd(_zmul(self.num, o.den), _zmul(o.num, self.den))
        return _rf_make(n, _zmul(self.den, o.den))

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(_zneg(self.num), self.den, _raw=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.is_zero or o.is_zero:
            return _RF_ZERO
        return _rf_make(_zmul(self.num, o.num), _zmul(self.den, o.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o.is_zero:
            raise ZeroDenominator("division by zero in Q(z)")
        if self.is_zero:
            return _RF_ZERO
        return _rf_make(_zmul(self.num, o.den), _zmul(self.den, o.num))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        return o / self

    def __pow__(self, k: int):
        if k < 0:
            return _RF_ONE / self ** (-k)
        acc = _RF_ONE
        base = self
        while k:
            if k & 1:
                acc = acc * base
            base = base * base if k > 1 else base
            k >>= 1
        return acc

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self.num == o.num and self.den == o.den

    def __bool__(self):
        return bool(self.num)

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RationalFunction({self})"

    def __str__(self):
        if self.den == (Fraction(1),):
            return _zstr(self.num)
        return f"({_zstr(self.num)})/({_zstr(self.den)})"


def _rf_reduce(n, d):
    if not d:
        raise ZeroDenominator("rational function with zero denominator")
    if not n:
        return (), (Fraction(1),)
    g = _zgcd(n, d)
    if len(g) > 1:
        n = _zdivmod(n, g)[0]
        d = _zdivmod(d, g)[0]
    lead = d[-1]
    if lead != 1:
        n = _zscale(n, 1 / lead)
        d = _zscale(d, 1 / lead)
    return n, d


def _rf_make(n, d):
    n, d = _rf_reduce(n, d)
    return RationalFunction(n, d, _raw=True)


_RF_ZERO = RationalFunction((), (Fraction(1),), _raw=True)
_RF_ONE = RationalFunction((Fraction(1),), (Fraction(1),), _raw=True)
_RF_Z = RationalFunction((Fraction(0), Fraction(1)), (Fraction(1),), _raw=True)


def rf_canonicalize(num, den) -> RationalFunction:
    """Build the reduced, monic-denominator representative of num/den.

    `num` and `den` are coefficient sequences (low degree first) or scalars.
    """
    return RationalFunction(num, den)


def clear_denominators(row: Sequence[RationalFunction]) -> list[tuple[Fraction, ...]]:
    """Primitive polynomial representative of a Q(z)-row (same span line).

    Multiplies by the lcm of the denominators and divides out the polynomial
    gcd of the numerators, so the returned z-polynomial entries share no common
    root: the row evaluates to a nonzero vector at every point, which is what
    specializing a moving subspace needs.
    """
    lcm = (Fraction(1),)
    for v in row:
        g = _zgcd(lcm, v.den)
        lcm = _zdivmod(_zmul(lcm, v.den), g)[0]
    nums = []
    for v in row:
        factor = _zdivmod(lcm, v.den)[0]
        nums.append(_zmul(v.num, factor))
    content: tuple[Fraction, ...] = ()
    for nu in nums:
        content = _zgcd(content, nu)
        if len(content) == 1:
            break
    if len(content) > 1:
        nums = [_zdivmod(nu, content)[0] for nu in nums]
    return nums


def zpoly_eval(coeffs: Sequence[Fraction], a) -> Fraction:
    """Evaluate a z-polynomial given by low-to-high coefficients at a."""
    return _zeval(tuple(coeffs), Fraction(a))


# ---------------------------------------------------------------------------
# Field plumbing shared with the linear algebra layer.
# ---------------------------------------------------------------------------

def field_zero(field: str):
    return Fraction(0) if field == RATIONAL else _RF_ZERO


def field_one(field: str):
    return Fraction(1) if field == RATIONAL else _RF_ONE


def field_coerce(field: str, value):
    """Coerce ints/Fractions (and, over Q(z), rational functions) into `field`."""
    if field == RATIONAL:
        if isinstance(value, Fraction):
            return value
        if isinstance(value, int):
            return Fraction(value)
        if isinstance(value, RationalFunction):
            return value.constant_value()
        raise FieldMismatch(f"cannot coerce {value!r} into Q")
    if isinstance(value, RationalFunction):
        return value
    if isinstance(value, (int, Fraction)):
        return RationalFunction.from_fraction(value)
    raise FieldMismatch(f"cannot coerce {value!r} into Q(z)")


def format_scalar(value) -> str:
    """Canonical text for a field element (exact rationals print as p/q)."""
    return str(value)


# ---------------------------------------------------------------------------
# Monomials.
# ---------------------------------------------------------------------------

def monomial_basis(M: int, k: int) -> list[tuple[int, ...]]:
    """All exponent tuples of length M+1 with total k, descending lex (x0-major)."""
    if M < 0 or k < 0:
        raise ValueError("monomial_basis needs M >= 0 and k >= 0")
    out: list[tuple[int, ...]] = []

    def rec(prefix, remaining, slots):
        if slots == 1:
            out.append(prefix + (remaining,))
            return
        for i in range(remaining, -1, -1):
            rec(prefix + (i,), remaining - i, slots - 1)

    rec((), k, M + 1)
    return out


def monomial_count(M: int, k: int) -> int:
    return math.comb(k + M, M)


def monomial_mul(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(x + y for x, y in zip(a, b))


# ---------------------------------------------------------------------------
# Multivariate polynomials.
# ---------------------------------------------------------------------------

class MultiPoly:
    """Sparse multivariate polynomial over Q or Q(z).

    terms maps exponent tuples (length nvars) to nonzero coefficients; the
    zero polynomial has an empty term dict.  `degree` is the common total of
    all exponents, or None when the polynomial is zero or inhomogeneous.
    """

    __slots__ = ("nvars", "field", "terms")

    def __init__(self, nvars: int, field: str, terms: dict | None = None, _raw=False):
        self.nvars = nvars
        self.field = field
        if _raw:
            self.terms = terms or {}
            return
        clean: dict[tuple[int, ...], object] = {}
        for exp, coeff in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars or any(e < 0 for e in exp):
                raise ValueError(f"bad exponent tuple {exp} for {nvars} variables")
            c = field_coerce(field, coeff)
            if c:
                acc = clean.get(exp)
                c = c if acc is None else acc + c
                if c:
                    clean[exp] = c
                elif exp in clean:
                    del clean[exp]
        self.terms = clean

    # -- constructors ------------------------------------------------------
    @classmethod
    def zero(cls, nvars: int, field: str = RATIONAL):
        return cls(nvars, field, {}, _raw=True)

    @classmethod
    def constant(cls, nvars: int, value, field: str = RATIONAL):
        return cls(nvars, field, {(0,) * nvars: value})

    @classmethod
    def monomial(cls, nvars: int, exp: Sequence[int], coeff=1, field: str = RATIONAL):
        return cls(nvars, field, {tuple(exp): coeff})

    @classmethod
    def variable(cls, nvars: int, i: int, field: str = RATIONAL):
        exp = [0] * nvars
        exp[i] = 1
        return cls(nvars, field, {tuple(exp): 1})

    # -- structure ---------------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self):
        """Common total degree, or None when zero or inhomogeneous."""
        degs = {sum(e) for e in self.terms}
        if len(degs) == 1:
            return degs.pop()
        return None

    @property
    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def items(self):
        """Terms in descending lex order (deterministic)."""
        return sorted(self.terms.items(), key=lambda kv: kv[0], reverse=True)

    def coefficient_vector(self, basis: Sequence[tuple[int, ...]]) -> list:
        zero = field_zero(self.field)
        return [self.terms.get(exp, zero) for exp in basis]

    # -- arithmetic --------------------------------------------------------
    def _check(self, other: "MultiPoly"):
        if self.nvars != other.nvars:
            raise FieldMismatch("variable-count mismatch")
        if self.field != other.field:
            raise FieldMismatch(f"field mismatch: {self.field} vs {other.field}")

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        self._check(other)
        out = dict(self.terms)
        for exp, c in other.terms.items():
            acc = out.get(exp)
            s = c if acc is None else acc + c
            if s:
                out[exp] = s
            elif exp in out:
                del out[exp]
        return MultiPoly(self.nvars, self.field, out, _raw=True)

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.nvars, self.field,
                         {e: -c for e, c in self.terms.items()}, _raw=True)

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def __mul__(self, other: "MultiPoly") -> "MultiPoly":
        self._check(other)
        out: dict[tuple[int, ...], object] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = monomial_mul(e1, e2)
                c = c1 * c2
                acc = out.get(e)
                c = c if acc is None else acc + c
                if c:
                    out[e] = c
                elif e in out:
                    del out[e]
        return MultiPoly(self.nvars, self.field, out, _raw=True)

    def scale(self, s) -> "MultiPoly":
        s = field_coerce(self.field, s)
        if not s:
            return MultiPoly.zero(self.nvars, self.field)
        return MultiPoly(self.nvars, self.field,
                         {e: c * s for e, c in self.terms.items()}, _raw=True)

    def shift(self, exp: tuple[int, ...]) -> "MultiPoly":
        """Multiply by the monomial x^exp."""
        return MultiPoly(self.nvars, self.field,
                         {monomial_mul(e, exp): c for e, c in self.terms.items()},
                         _raw=True)

    def __pow__(self, k: int) -> "MultiPoly":
        if k < 0:
            raise ValueError("negative polynomial power")
        acc = MultiPoly.constant(self.nvars, 1, self.field)
        base = self
        while k:
            if k & 1:
                acc = acc * base
            k >>= 1
            if k:
                base = base * base
        return acc

    def __eq__(self, other):
        return (isinstance(other, MultiPoly) and self.nvars == other.nvars
                and self.field == other.field and self.terms == other.terms)

    def __hash__(self):
        return hash((self.nvars, self.field, tuple(self.items())))

    # -- field moves -------------------------------------------------------
    def lift(self) -> "MultiPoly":
        """View a Q-polynomial as a Q(z)-polynomial."""
        if self.field == RATIONAL_FUNCTION:
            return self
        return MultiPoly(self.nvars, RATIONAL_FUNCTION,
                         {e: RationalFunction.from_fraction(c)
                          for e, c in self.terms.items()}, _raw=True)

    def specialize(self, a) -> "MultiPoly":
        """Evaluate all coefficients at z = a; terms that vanish are dropped."""
        if self.field == RATIONAL:
            return self
        out = {}
        for e, c in self.terms.items():
            v = c.evaluate(a)
            if v:
                out[e] = v
        return MultiPoly(self.nvars, RATIONAL, out, _raw=True)

    def substitute_scaled_vars(self, t) -> "MultiPoly":
        """Substitute x_i -> t*x_i; for homogeneous p of degree k this is t^k * p."""
        t = field_coerce(self.field, t)
        out = {}
        for e, c in self.terms.items():
            out[e] = c * t ** sum(e)
        return MultiPoly(self.nvars, self.field, out, _raw=True)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exp, c in self.items():
            mono = "*".join(
                (f"x{i}" if p == 1 else f"x{i}^{p}")
                for i, p in enumerate(exp) if p > 0
            )
            cs = format_scalar(c)
            needs_braces = self.field == RATIONAL_FUNCTION and not (
                isinstance(c, RationalFunction) and c.is_constant)
            if needs_braces:
                cs = "{" + cs + "}"
                parts.append(f"{cs}*{mono}" if mono else cs)
            elif not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append(f"-{mono}")
            else:
                parts.append(f"{cs}*{mono}")
        out = parts[0]
        for term in parts[1:]:
            out += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
        return out

    def __repr__(self):
        return f"MultiPoly({self})"


def poly_multiply(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """Exact product; degrees add when both factors are homogeneous."""
    return p * q


def poly_specialize(p: MultiPoly, a) -> MultiPoly:
    """Specialize a Q(z)-polynomial at z = a (PoleAtPoint if a denominator vanishes)."""
    return p.specialize(a)


def normalize_degrees(Qs: Sequence[MultiPoly]) -> tuple[int, list[MultiPoly]]:
    """Raise each Q_j of degree d_j to the power d/d_j, d = lcm of the degrees.

    The outputs all have common degree d and cut out each original hypersurface
    with multiplicity d/d_j.
    """
    degs = []
    for q in Qs:
        d = q.degree
        if d is None or d < 1:
            raise InhomogeneousInput(f"hypersurface {q} is not homogeneous of degree >= 1")
        degs.append(d)
    d = math.lcm(*degs) if degs else 1
    return d, [q ** (d // dj) for q, dj in zip(Qs, degs)]
