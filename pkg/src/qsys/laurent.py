"""Exact multivariate Laurent polynomials and truncated power series.

A :class:`LaurentPoly` stores its terms as a dict from exponent tuples to
coefficients, where the tuple is aligned with a sorted tuple of
:class:`VarId` objects owned by the polynomial.  Coefficients are Python
``int`` whenever integral and :class:`fractions.Fraction` otherwise, so
equality with the rational value is preserved while the common
integer-only case stays fast.

Large products and exact divisions are delegated to FLINT's sparse
multivariate polynomials when ``python-flint`` is importable; the pure
Python path gives identical results and is used for small operands and as
a fallback.
"""

from __future__ import annotations

import heapq
import json
import operator
import random
from fractions import Fraction
from functools import total_ordering
from typing import Any, Callable, Iterable, Iterator, Mapping, Sequence

from .errors import NotDivisible, NotInvertible

try:  # optional accelerator
    import flint as _flint
except ImportError:  # pragma: no cover - exercised only without flint
    _flint = None

# Products with at least this many term pairs go through FLINT.
FLINT_THRESHOLD = 600


# ---------------------------------------------------------------------------
# variables and monomials


@total_ordering
class VarId:
    """Name of one formal variable.

    ``VarId(alpha, level)`` is the cluster variable ``R[alpha][level]``.  Other
    bases (``"y"`` for abstract path weights) share the same machinery.
    """

    __slots__ = ("alpha", "level", "base")

    def __init__(self, alpha: int, level: int = 0, base: str = "R"):
        object.__setattr__(self, "alpha", int(alpha))
        object.__setattr__(self, "level", int(level))
        object.__setattr__(self, "base", base)

    def __setattr__(self, name, value):
        raise AttributeError("VarId is immutable")

    def _key(self):
        return (self.base, self.alpha, self.level)

    def __eq__(self, other):
        return isinstance(other, VarId) and self._key() == other._key()

    def __lt__(self, other):
        return self._key() < other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"VarId({self.alpha}, {self.level}, {self.base!r})"

    def __str__(self):
        if self.base == "R":
            return f"R[{self.alpha}][{self.level}]"
        if self.level == 0:
            return f"{self.base}[{self.alpha}]"
        return f"{self.base}[{self.alpha},{self.level}]"

    def json_key(self) -> str:
        if self.base == "R":
            return f"{self.alpha}.{self.level}"
        return f"{self.base}:{self.alpha}.{self.level}"

    @classmethod
    def from_json_key(cls, key: str) -> "VarId":
        base = "R"
        if ":" in key:
            base, key = key.split(":", 1)
        a, l = key.split(".")
        return cls(int(a), int(l), base)


def R(alpha: int, level: int) -> VarId:
    return VarId(alpha, level, "R")


def Y(index: int) -> VarId:
    return VarId(index, 0, "y")


class Monomial:
    """Immutable finite map VarId -> nonzero int, keys kept in sorted order."""

    __slots__ = ("items",)

    def __init__(self, exps: Mapping[VarId, int] | Iterable[tuple[VarId, int]] = ()):
        pairs = exps.items() if isinstance(exps, Mapping) else exps
        acc: dict[VarId, int] = {}
        for v, e in pairs:
            acc[v] = acc.get(v, 0) + int(e)
        self.items = tuple(sorted((v, e) for v, e in acc.items() if e))

    def __eq__(self, other):
        return isinstance(other, Monomial) and self.items == other.items

    def __hash__(self):
        return hash(self.items)

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial(self.items + other.items)

    def __pow__(self, k: int) -> "Monomial":
        return Monomial((v, e * k) for v, e in self.items)

    def exponent(self, v: VarId) -> int:
        for w, e in self.items:
            if w == v:
                return e
        return 0

    def as_dict(self) -> dict[VarId, int]:
        return dict(self.items)

    def __repr__(self):
        return f"Monomial({dict(self.items)!r})"

    def __str__(self):
        return _mono_str(self.items) or "1"


def _mono_str(items) -> str:
    parts = []
    for v, e in items:
        parts.append(str(v) if e == 1 else f"{v}^{e}")
    return "*".join(parts)


def _norm(c):
    """Canonical coefficient: int when integral, Fraction otherwise."""
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    c = Fraction(c)
    return c.numerator if c.denominator == 1 else c


def _cdiv(a, b):
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        if r == 0:
            return q
    return _norm(Fraction(a) / b)


# ---------------------------------------------------------------------------
# Laurent polynomials


class LaurentPoly:
    """Exact Laurent polynomial with rational coefficients.

    A polynomial produced by FLINT arithmetic keeps its FLINT form
    ``(variables, lowest exponents, content-free polynomial)`` and only builds
    the term dict when something asks for it, so chains of large products
    and quotients never leave FLINT.
    """

    __slots__ = ("_v", "_t", "_fl", "_hash")

    def __init__(self, vars: Sequence[VarId] = (), terms: Mapping[tuple, Any] | None = None):
        # Internal constructor; public code uses the classmethods below.
        self._v = tuple(vars)
        self._t = dict(terms) if terms else {}
        self._fl = None
        self._hash = None

    @property
    def _vars(self) -> tuple:
        if self._t is None:
            self._materialize()
        return self._v

    @property
    def _terms(self) -> dict:
        if self._t is None:
            self._materialize()
        return self._t

    def _materialize(self):
        fvars, lows, poly = self._fl
        tmp = LaurentPoly._make(fvars, _from_flint(poly, lows, False))
        self._v, self._t = tmp._v, tmp._t

    @classmethod
    def _from_fl(cls, fvars: tuple, lows: tuple, poly, normalize: bool = True) -> "LaurentPoly":
        if poly.is_zero():
            return cls.zero()
        if normalize:
            # term_content carries the integer gcd too; strip only the monomial
            shift = poly.term_content().monoms()[0]
            if any(shift):
                poly = poly / poly.context().from_dict({tuple(shift): 1})
                lows = tuple(l + int(x) for l, x in zip(lows, shift))
        p = cls.__new__(cls)
        p._v = None
        p._t = None
        p._fl = (fvars, tuple(lows), poly)
        p._hash = None
        return p

    def lift(self, fvars: Sequence[VarId]) -> "LaurentPoly":
        """Copy backed by FLINT over the given variable tuple (integer coefficients only)."""
        fvars = tuple(fvars)
        if _flint is None or not self.has_integer_coefficients():
            return self
        if self._fl is not None and self._fl[0] == fvars:
            return self
        missing = set(self._vars) - set(fvars)
        if missing:
            raise ValueError(f"variables {sorted(missing)} not in the target tuple")
        d = self._embedded(fvars)
        if not d:
            return self
        lows, shifted = _shift(d, len(fvars))
        ctx = _flint_ctx(len(fvars), False)
        return LaurentPoly._from_fl(fvars, tuple(lows), ctx.from_dict(shifted), normalize=False)

    def _same_fl(self, other: "LaurentPoly") -> bool:
        return self._fl is not None and other._fl is not None and self._fl[0] == other._fl[0]

    # construction -----------------------------------------------------

    @classmethod
    def _make(cls, vars: tuple, terms: dict) -> "LaurentPoly":
        """Drop zero coefficients and variables that no term uses."""
        terms = {e: c for e, c in terms.items() if c}
        if vars and terms:
            used = [any(e[i] for e in terms) for i in range(len(vars))]
            if not all(used):
                keep = [i for i, u in enumerate(used) if u]
                vars = tuple(vars[i] for i in keep)
                terms = {tuple(e[i] for i in keep): c for e, c in terms.items()}
        elif not terms:
            vars = ()
        p = cls.__new__(cls)
        p._v = vars
        p._t = terms
        p._fl = None
        p._hash = None
        return p

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls._make((), {})

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls.constant(1)

    @classmethod
    def constant(cls, c) -> "LaurentPoly":
        c = _norm(c)
        return cls._make((), {(): c} if c else {})

    @classmethod
    def var(cls, v: VarId, power: int = 1) -> "LaurentPoly":
        if power == 0:
            return cls.one()
        return cls._make((v,), {(power,): 1})

    @classmethod
    def monomial(cls, exps: Mapping[VarId, int] | Monomial, coeff=1) -> "LaurentPoly":
        items = exps.items if isinstance(exps, Monomial) else Monomial(exps).items
        vars = tuple(v for v, _ in items)
        return cls._make(vars, {tuple(e for _, e in items): _norm(coeff)})

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[Mapping[VarId, int] | Monomial, Any]]) -> "LaurentPoly":
        out = cls.zero()
        for m, c in terms:
            out = out + cls.monomial(m, c)
        return out

    @classmethod
    def coerce(cls, x) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, VarId):
            return cls.var(x)
        if isinstance(x, (int, Fraction)):
            return cls.constant(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to LaurentPoly")

    # inspection -------------------------------------------------------

    @property
    def variables(self) -> tuple[VarId, ...]:
        return self._vars

    def __len__(self):
        if self._t is None:
            return len(self._fl[2])
        return len(self._t)

    def is_zero(self) -> bool:
        return len(self) == 0

    def is_monomial(self) -> bool:
        return len(self) == 1

    def is_constant(self) -> bool:
        return not self._vars

    def constant_value(self):
        if not self._vars:
            return self._terms.get((), 0)
        raise ValueError("not a constant")

    def terms(self) -> list[tuple[Monomial, Any]]:
        """Terms in canonical order (descending lexicographic exponents)."""
        out = []
        for e in sorted(self._terms, reverse=True):
            out.append((Monomial(zip(self._vars, e)), self._terms[e]))
        return out

    def __iter__(self) -> Iterator[tuple[Monomial, Any]]:
        return iter(self.terms())

    def coefficients(self) -> list:
        return [c for _, c in self.terms()]

    def exponent_range(self, v: VarId) -> tuple[int, int]:
        if v not in self._vars:
            return (0, 0)
        i = self._vars.index(v)
        es = [e[i] for e in self._terms]
        return (min(es), max(es))

    def single_term(self) -> tuple[Monomial, Any]:
        if len(self._terms) != 1:
            raise ValueError("not a monomial")
        return self.terms()[0]

    def is_nonneg(self) -> bool:
        if self._fl is not None:
            return all(c > 0 for c in self._fl[2].coeffs())
        return all(c > 0 for c in self._terms.values())

    def has_integer_coefficients(self) -> bool:
        if self._t is None:
            return True
        return all(isinstance(c, int) for c in self._terms.values())

    # alignment helpers ------------------------------------------------

    def _embedded(self, vars: tuple) -> dict:
        if vars == self._vars:
            return self._terms
        pos = [vars.index(v) for v in self._vars]
        n = len(vars)
        out = {}
        for e, c in self._terms.items():
            full = [0] * n
            for i, x in zip(pos, e):
                full[i] = x
            out[tuple(full)] = c
        return out

    @staticmethod
    def _union(a: "LaurentPoly", b: "LaurentPoly") -> tuple:
        if a._vars == b._vars:
            return a._vars
        return tuple(sorted(set(a._vars) | set(b._vars)))

    # arithmetic -------------------------------------------------------

    def __add__(self, other):
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if self._same_fl(other):
            fvars, l1, p1 = self._fl
            _, l2, p2 = other._fl
            low = tuple(min(a, b) for a, b in zip(l1, l2))
            ctx = p1.context()
            total = _fl_shift(ctx, p1, l1, low) + _fl_shift(ctx, p2, l2, low)
            return LaurentPoly._from_fl(fvars, low, total)
        vars = LaurentPoly._union(self, other)
        out = dict(self._embedded(vars))
        for e, c in other._embedded(vars).items():
            out[e] = _norm(out.get(e, 0) + c)
        return LaurentPoly._make(vars, out)

    __radd__ = __add__

    def __neg__(self):
        if self._fl is not None:
            fvars, lows, poly = self._fl
            return LaurentPoly._from_fl(fvars, lows, -poly, normalize=False)
        return LaurentPoly._make(self._vars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return LaurentPoly.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return LaurentPoly.zero()
            if self._fl is not None and isinstance(other, int):
                fvars, lows, poly = self._fl
                return LaurentPoly._from_fl(fvars, lows, poly * other, normalize=False)
            return LaurentPoly._make(self._vars, {e: _norm(c * other) for e, c in self._terms.items()})
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        if self._same_fl(other):
            fvars, l1, p1 = self._fl
            _, l2, p2 = other._fl
            # products of content-free polynomials are content-free
            return LaurentPoly._from_fl(fvars, tuple(a + b for a, b in zip(l1, l2)), p1 * p2, normalize=False)
        if self.is_zero() or other.is_zero():
            return LaurentPoly.zero()
        if not other._vars:
            return self * other._terms[()]
        if not self._vars:
            return other * self._terms[()]
        vars = LaurentPoly._union(self, other)
        a = self._embedded(vars)
        b = other._embedded(vars)
        if _flint is not None and len(a) * len(b) >= FLINT_THRESHOLD:
            return LaurentPoly._make(vars, _flint_mul(len(vars), a, b))
        return LaurentPoly._make(vars, _py_mul(a, b))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = LaurentPoly.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def inverse(self) -> "LaurentPoly":
        """Inverse of a monomial; anything else is not a Laurent polynomial."""
        if len(self._terms) != 1:
            raise NotInvertible("only monomials are invertible Laurent polynomials")
        (e, c), = self._terms.items()
        return LaurentPoly._make(self._vars, {tuple(-x for x in e): _cdiv(1, c)})

    def divexact(self, other) -> "LaurentPoly":
        other = LaurentPoly.coerce(other)
        if not other._terms:
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return self
        if self._same_fl(other):
            fvars, l1, p1 = self._fl
            _, l2, p2 = other._fl
            # both sides content-free: Laurent divisibility is polynomial divisibility
            try:
                q = p1 / p2
            except Exception as exc:
                raise NotDivisible("inexact Laurent division") from exc
            return LaurentPoly._from_fl(fvars, tuple(a - b for a, b in zip(l1, l2)), q, normalize=False)
        if other.is_constant():
            c = other.constant_value()
            return self * _cdiv(1, c)
        if len(other._terms) == 1:
            return self * other.inverse()
        vars = LaurentPoly._union(self, other)
        a = self._embedded(vars)
        b = other._embedded(vars)
        if _flint is not None and len(a) * len(b) >= FLINT_THRESHOLD:
            q = _flint_div(len(vars), a, b)
        else:
            q = _py_div(a, b)
        return LaurentPoly._make(vars, q)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * _cdiv(1, other)
        return self.divexact(other)

    def __rtruediv__(self, other):
        return LaurentPoly.coerce(other).divexact(self)

    # comparison -------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            if self._same_fl(other):
                return self._fl[1] == other._fl[1] and self._fl[2] == other._fl[2]
            return self._vars == other._vars and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            if not other:
                return not self._terms
            return not self._vars and self._terms.get(()) == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._vars, frozenset(self._terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    # evaluation and substitution -------------------------------------

    def evaluate(self, values: Mapping[VarId, Any]):
        """Exact value at a point; missing variables raise KeyError."""
        if self._fl is not None and len(self._fl[2]) > 64:
            return _fl_evaluate(self._fl, values)
        vals = [Fraction(values[v]) for v in self._vars]
        total = Fraction(0)
        for e, c in self._terms.items():
            term = Fraction(c)
            for x, k in zip(vals, e):
                if k:
                    term *= x ** k
            total += term
        return _norm(total)

    def rename(self, mapping: Mapping[VarId, VarId]) -> "LaurentPoly":
        out = LaurentPoly.zero()
        new_vars = [mapping.get(v, v) for v in self._vars]
        acc: dict[tuple, Any] = {}
        order = tuple(sorted(set(new_vars)))
        pos = [order.index(v) for v in new_vars]
        for e, c in self._terms.items():
            full = [0] * len(order)
            for i, x in zip(pos, e):
                full[i] += x
            key = tuple(full)
            acc[key] = _norm(acc.get(key, 0) + c)
        out = LaurentPoly._make(order, acc)
        return out

    def subs(self, mapping: Mapping[VarId, "LaurentPoly"]) -> "LaurentPoly":
        """Substitute Laurent polynomials for variables.

        Negative powers of a substituted variable require its image to be a
        monomial; otherwise :class:`NotInvertible` is raised.
        """
        if not any(v in mapping for v in self._vars):
            return self
        cache: dict[tuple[VarId, int], LaurentPoly] = {}

        def power(v, k):
            key = (v, k)
            if key not in cache:
                cache[key] = LaurentPoly.coerce(mapping[v]) ** k
            return cache[key]

        total = LaurentPoly.zero()
        for e, c in self._terms.items():
            fixed = {}
            term = LaurentPoly.constant(c)
            for v, k in zip(self._vars, e):
                if not k:
                    continue
                if v in mapping:
                    term = term * power(v, k)
                else:
                    fixed[v] = k
            total = total + term * LaurentPoly.monomial(fixed)
        return total

    # formatting -------------------------------------------------------

    def denominator_monomial(self) -> "LaurentPoly":
        exps = {}
        for i, v in enumerate(self._vars):
            low = min(e[i] for e in self._terms)
            if low < 0:
                exps[v] = -low
        return LaurentPoly.monomial(exps)

    def pretty(self) -> str:
        if not self._terms:
            return "0"
        den = self.denominator_monomial()
        num = self * den
        body = _poly_str(num)
        if den == 1:
            return body
        dstr = _mono_str(den.single_term()[0].items)
        if len(num) > 1:
            body = f"({body})"
        return f"{body}/{dstr}" if len(den.single_term()[0].items) == 1 else f"{body}/({dstr})"

    def __str__(self):
        return self.pretty()

    def __repr__(self):
        return f"LaurentPoly<{self.pretty()}>"

    def to_json_obj(self) -> dict:
        terms = []
        for m, c in self.terms():
            c = Fraction(c)
            cs = str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
            terms.append({"c": cs, "m": [[v.json_key(), e] for v, e in m.items]})
        return {"terms": terms}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json_obj(cls, obj: Mapping) -> "LaurentPoly":
        out = cls.zero()
        for t in obj["terms"]:
            exps = {VarId.from_json_key(k): int(e) for k, e in t["m"]}
            out = out + cls.monomial(exps, Fraction(t["c"]))
        return out

    @classmethod
    def from_json(cls, text: str) -> "LaurentPoly":
        return cls.from_json_obj(json.loads(text))


def _coef_str(c) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _poly_str(p: LaurentPoly) -> str:
    out = []
    for m, c in p.terms():
        ms = _mono_str(m.items)
        if not ms:
            s = _coef_str(c)
        elif c == 1:
            s = ms
        elif c == -1:
            s = "-" + ms
        else:
            s = f"{_coef_str(c)}*{ms}"
        out.append(s)
    text = " + ".join(out)
    return text.replace("+ -", "- ")


# raw kernels -------------------------------------------------------------


def _py_mul(a: dict, b: dict) -> dict:
    if len(a) < len(b):
        a, b = b, a
    out: dict = {}
    get = out.get
    add = operator.add
    for e2, c2 in b.items():
        for e1, c1 in a.items():
            e = tuple(map(add, e1, e2))
            out[e] = get(e, 0) + c1 * c2
    return {e: _norm(c) for e, c in out.items() if c}


def _py_div(a: dict, b: dict) -> dict:
    """Exact Laurent division by lexicographic leading terms.

    Raises NotDivisible when the next quotient term leaves the box that any
    exact quotient must lie in: per variable, degrees of a product add, so
    exponents of q lie between low(a) - low(b) and high(a) - high(b).
    """
    lead_b = max(b)
    cb = b[lead_b]
    rest = [(e, c) for e, c in b.items() if e != lead_b]
    n = len(lead_b)
    floor = tuple(min(e[i] for e in a) - min(e[i] for e in b) for i in range(n))
    ceil = tuple(max(e[i] for e in a) - max(e[i] for e in b) for i in range(n))
    rem = dict(a)
    heap = [tuple(-x for x in e) for e in rem]
    heapq.heapify(heap)
    quo = {}
    while heap:
        top = heapq.heappop(heap)
        e = tuple(-x for x in top)
        c = rem.pop(e, 0)
        if not c:
            continue
        m = tuple(x - y for x, y in zip(e, lead_b))
        if any(x < lo or x > hi for x, lo, hi in zip(m, floor, ceil)):
            raise NotDivisible("inexact Laurent division")
        q = _cdiv(c, cb)
        quo[m] = q
        for eb, c2 in rest:
            k = tuple(x + y for x, y in zip(m, eb))
            if k in rem:
                v = _norm(rem[k] - q * c2)
                if v:
                    rem[k] = v
                else:
                    del rem[k]
            else:
                rem[k] = _norm(-q * c2)
                heapq.heappush(heap, tuple(-x for x in k))
    return quo


def _shift(d: dict, n: int):
    lows = [min(e[i] for e in d) for i in range(n)]
    return lows, {tuple(x - l for x, l in zip(e, lows)): c for e, c in d.items()}


_CTX_CACHE: dict = {}


def _flint_ctx(n: int, rational: bool):
    key = (n, rational)
    ctx = _CTX_CACHE.get(key)
    if ctx is None:
        cls = _flint.fmpq_mpoly_ctx if rational else _flint.fmpz_mpoly_ctx
        ctx = cls.get(("x", n), "lex")
        _CTX_CACHE[key] = ctx
    return ctx


def _to_flint(ctx, d: dict, rational: bool):
    if rational:
        d = {e: _flint.fmpq(Fraction(c).numerator, Fraction(c).denominator) for e, c in d.items()}
    return ctx.from_dict(d)


def _from_flint(p, lows, rational: bool) -> dict:
    out = {}
    for e, c in p.to_dict().items():
        key = tuple(int(x) + l for x, l in zip(e, lows))
        if rational:
            out[key] = _norm(Fraction(int(c.p), int(c.q)))
        else:
            out[key] = int(c)
    return out


def _fl_shift(ctx, poly, lows, target):
    """poly * x^(lows - target), all exponents nonnegative."""
    e = tuple(a - b for a, b in zip(lows, target))
    if not any(e):
        return poly
    return poly * ctx.from_dict({e: 1})


def _fl_evaluate(fl, values) -> Any:
    fvars, lows, poly = fl
    n = len(fvars)
    qctx = _flint_ctx(n, True)
    pts = []
    scale = Fraction(1)
    for v, low in zip(fvars, lows):
        x = Fraction(values[v])
        pts.append(_flint.fmpq(x.numerator, x.denominator))
        if low:
            scale *= x ** low
    val = _flint.fmpq_mpoly(poly, qctx)(*pts)
    return _norm(Fraction(int(val.p), int(val.q)) * scale)


def _is_rational(*ds) -> bool:
    return any(not isinstance(c, int) for d in ds for c in d.values())


def _flint_mul(n: int, a: dict, b: dict) -> dict:
    if n == 0:
        return _py_mul(a, b)
    rational = _is_rational(a, b)
    ctx = _flint_ctx(n, rational)
    la, sa = _shift(a, n)
    lb, sb = _shift(b, n)
    prod = _to_flint(ctx, sa, rational) * _to_flint(ctx, sb, rational)
    return _from_flint(prod, [x + y for x, y in zip(la, lb)], rational)


def _flint_div(n: int, a: dict, b: dict) -> dict:
    if n == 0:
        return _py_div(a, b)
    rational = _is_rational(a, b)
    ctx = _flint_ctx(n, rational)
    # Shifting both operands to have no monomial content makes Laurent
    # divisibility equivalent to polynomial divisibility.
    la, sa = _shift(a, n)
    lb, sb = _shift(b, n)
    try:
        q = _to_flint(ctx, sa, rational) / _to_flint(ctx, sb, rational)
    except Exception as exc:  # flint raises DomainError on inexact division
        raise NotDivisible("inexact Laurent division") from exc
    return _from_flint(q, [x - y for x, y in zip(la, lb)], rational)


# Functional spellings used throughout the package.

def poly_add(a, b) -> LaurentPoly:
    return LaurentPoly.coerce(a) + LaurentPoly.coerce(b)


def poly_mul(a, b) -> LaurentPoly:
    return LaurentPoly.coerce(a) * LaurentPoly.coerce(b)


def poly_divexact(a, b) -> LaurentPoly:
    return LaurentPoly.coerce(a).divexact(b)


def poly_is_nonneg(a: LaurentPoly) -> bool:
    return LaurentPoly.coerce(a).is_nonneg()


def var(alpha: int, level: int) -> LaurentPoly:
    return LaurentPoly.var(R(alpha, level))


def yvar(index: int) -> LaurentPoly:
    return LaurentPoly.var(Y(index))


def monomial_from_exponents(exps: Mapping[VarId, int]) -> LaurentPoly:
    return LaurentPoly.monomial({v: e for v, e in exps.items() if e})


# ---------------------------------------------------------------------------
# rational functions (used only where a quotient is not Laurent)


class RationalFunction:
    """num/den over Laurent polynomials; equality by cross-multiplication."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        num = LaurentPoly.coerce(num)
        den = LaurentPoly.coerce(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if den.is_monomial():
            num, den = num * den.inverse(), LaurentPoly.one()
        else:
            # move the monomial content of den into num so that denominators
            # differing by a monomial compare equal
            low = {v: den.exponent_range(v)[0] for v in den.variables}
            content = monomial_from_exponents(low)
            if not content.is_constant():
                inv = content.inverse()
                num, den = num * inv, den * inv
        self.num = num
        self.den = den

    @staticmethod
    def coerce(x) -> "RationalFunction":
        return x if isinstance(x, RationalFunction) else RationalFunction(x)

    def __add__(self, other):
        o = RationalFunction.coerce(other)
        if self.den == o.den:
            return RationalFunction(self.num + o.num, self.den)
        if self.den.is_constant() or o.den.is_constant():
            return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)
        big, small = (self, o) if len(o.den) <= len(self.den) else (o, self)
        try:
            q = big.den.divexact(small.den)
            return RationalFunction(big.num + small.num * q, big.den)
        except NotDivisible:
            pass
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        return self + (-RationalFunction.coerce(other))

    def __rsub__(self, other):
        return RationalFunction.coerce(other) - self

    def __mul__(self, other):
        o = RationalFunction.coerce(other)
        return RationalFunction(self.num * o.num, self.den * o.den).simplify()

    __rmul__ = __mul__

    def inverse(self):
        if self.num.is_zero():
            raise NotInvertible("zero has no inverse")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other):
        return (self * RationalFunction.coerce(other).inverse()).simplify()

    def __rtruediv__(self, other):
        return RationalFunction.coerce(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = RationalFunction(1)
        for _ in range(k):
            out = out * self
        return out

    def simplify(self) -> "RationalFunction":
        """Cancel the denominator when it divides the numerator exactly."""
        if self.den.is_constant():
            return self
        try:
            return RationalFunction(self.num.divexact(self.den))
        except NotDivisible:
            return self

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, LaurentPoly, VarId)):
            other = RationalFunction(LaurentPoly.coerce(other))
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        raise TypeError("RationalFunction is unhashable")

    def __bool__(self):
        return not self.num.is_zero()

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def to_laurent(self) -> LaurentPoly:
        return self.num.divexact(self.den)

    def evaluate(self, values):
        return _norm(Fraction(self.num.evaluate(values)) / Fraction(self.den.evaluate(values)))

    def __repr__(self):
        if self.den == 1:
            return f"RationalFunction<{self.num.pretty()}>"
        return f"RationalFunction<({self.num.pretty()})/({self.den.pretty()})>"


def substitute_rational(p: LaurentPoly, v: VarId, num: LaurentPoly, den: LaurentPoly) -> RationalFunction:
    """Replace ``v`` by num/den in ``p`` and return the exact rational function."""
    lo, hi = p.exponent_range(v)
    lo, hi = min(lo, 0), max(hi, 0)
    if v not in p.variables:
        return RationalFunction(p)
    i = p.variables.index(v)
    rest_vars = p.variables[:i] + p.variables[i + 1:]
    # group terms by the exponent of v
    groups: dict[int, dict] = {}
    for e, c in p._terms.items():
        groups.setdefault(e[i], {})[e[:i] + e[i + 1:]] = c
    total = LaurentPoly.zero()
    for k, terms in groups.items():
        coeff = LaurentPoly._make(rest_vars, terms)
        total = total + coeff * num ** (k - lo) * den ** (hi - k)
    return RationalFunction(total, num ** (-lo) * den ** hi)


def substitute_exact(p: LaurentPoly, v: VarId, num: LaurentPoly, den: LaurentPoly) -> LaurentPoly:
    """Replace ``v`` by num/den when the result is known to be Laurent."""
    return substitute_rational(p, v, num, den).to_laurent()


# ---------------------------------------------------------------------------
# truncated power series in t


class TruncSeries:
    """Power series sum_k coeffs[k] t^k modulo t^(order+1).

    Coefficients may be LaurentPoly, RationalFunction, int or Fraction; all
    arithmetic goes through the coefficients' own operators.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence, order: int | None = None):
        cs = list(coeffs)
        if order is not None:
            cs = cs[: order + 1] + [0] * max(0, order + 1 - len(cs))
        if not cs:
            raise ValueError("a series needs at least one coefficient")
        self.coeffs = tuple(cs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def zero(cls, order: int) -> "TruncSeries":
        return cls([0] * (order + 1))

    @classmethod
    def one(cls, order: int) -> "TruncSeries":
        return cls.constant(1, order)

    @classmethod
    def constant(cls, c, order: int) -> "TruncSeries":
        return cls([c] + [0] * order)

    @classmethod
    def t(cls, order: int, coeff=1) -> "TruncSeries":
        """coeff * t"""
        cs = [0] * (order + 1)
        if order >= 1:
            cs[1] = coeff
        return cls(cs)

    def coeff(self, k: int):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def _other(self, other) -> "TruncSeries":
        if isinstance(other, TruncSeries):
            if other.order != self.order:
                n = min(self.order, other.order)
                return TruncSeries(other.coeffs[: n + 1])
            return other
        return TruncSeries.constant(other, self.order)

    def _common(self, other):
        o = self._other(other)
        n = min(self.order, o.order)
        return self.coeffs[: n + 1], o.coeffs[: n + 1]

    def __add__(self, other):
        a, b = self._common(other)
        return TruncSeries([x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries([-x for x in self.coeffs])

    def __sub__(self, other):
        a, b = self._common(other)
        return TruncSeries([x - y for x, y in zip(a, b)])

    def __rsub__(self, other):
        return self._other(other) - self

    def __mul__(self, other):
        if not isinstance(other, TruncSeries):
            return TruncSeries([x * other for x in self.coeffs])
        a, b = self._common(other)
        n = len(a)
        out = []
        for k in range(n):
            acc = 0
            for i in range(k + 1):
                x, y = a[i], b[k - i]
                if _nonzero(x) and _nonzero(y):
                    acc = acc + x * y
            out.append(acc)
        return TruncSeries(out)

    __rmul__ = __mul__

    def shift(self, k: int = 1) -> "TruncSeries":
        """Multiply by t^k, dropping what falls beyond the order."""
        n = len(self.coeffs)
        return TruncSeries(([0] * k + list(self.coeffs))[:n])

    def inverse(self) -> "TruncSeries":
        inv0 = _invert_unit(self.coeffs[0])
        a = self.coeffs
        b = [inv0]
        for k in range(1, len(a)):
            acc = 0
            for i in range(1, k + 1):
                if _nonzero(a[i]) and _nonzero(b[k - i]):
                    acc = acc + a[i] * b[k - i]
            b.append(-(acc * inv0) if _nonzero(acc) else 0)
        return TruncSeries(b)

    def __truediv__(self, other):
        if isinstance(other, TruncSeries):
            return self * other.inverse()
        return self * _invert_unit(other)

    def __rtruediv__(self, other):
        return self._other(other) * self.inverse()

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            other = self._other(other)
        if len(other.coeffs) != len(self.coeffs):
            return False
        return all(_equal(x, y) for x, y in zip(self.coeffs, other.coeffs))

    def __hash__(self):
        raise TypeError("TruncSeries is unhashable")

    def map(self, f: Callable) -> "TruncSeries":
        return TruncSeries([f(c) for c in self.coeffs])

    def truncate(self, order: int) -> "TruncSeries":
        return TruncSeries(self.coeffs[: order + 1], order)

    def __repr__(self):
        return "TruncSeries[" + ", ".join(str(c) for c in self.coeffs) + "]"


def _nonzero(x) -> bool:
    if isinstance(x, (int, Fraction)):
        return x != 0
    return bool(x)


def _equal(x, y) -> bool:
    if isinstance(x, (int, Fraction)) and isinstance(y, (int, Fraction)):
        return x == y
    if isinstance(x, (int, Fraction)):
        x, y = y, x
    return x == y


def _invert_unit(c):
    if isinstance(c, (int, Fraction)):
        if c == 0:
            raise NotInvertible("constant term is zero")
        return _cdiv(1, c)
    if isinstance(c, LaurentPoly):
        if c.is_zero():
            raise NotInvertible("constant term is zero")
        try:
            return c.inverse()
        except NotInvertible:
            raise NotInvertible("constant term is not a Laurent monomial") from None
    if isinstance(c, RationalFunction):
        return c.inverse()
    return 1 / c


def series_inverse(s: TruncSeries) -> TruncSeries:
    return s.inverse()


def series_mul(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    return a * b


def geometric(x, order: int) -> TruncSeries:
    """1/(1 - x t) truncated at the given order."""
    cs = [1]
    for _ in range(order):
        cs.append(cs[-1] * x)
    return TruncSeries(cs)


# ---------------------------------------------------------------------------
# determinants


def bareiss_det(matrix: Sequence[Sequence[Any]]):
    """Fraction-free Bareiss elimination.

    Works over LaurentPoly (every division is an exact Laurent division) and
    over int/Fraction.  Zero pivots are handled by row swaps.
    """
    n = len(matrix)
    if n == 0:
        return 1
    if _flint is not None and n >= 3:
        fast = _flint_bareiss(matrix)
        if fast is not None:
            return fast
    a = [list(row) for row in matrix]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if not _nonzero(a[k][k]):
            swap = next((i for i in range(k + 1, n) if _nonzero(a[i][k])), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        piv = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = piv * a[i][j] - a[i][k] * a[k][j]
                a[i][j] = _exact_div(num, prev)
            a[i][k] = 0
        prev = piv
    det = a[n - 1][n - 1]
    return -det if sign < 0 else det


def _flint_bareiss(matrix):
    """Bareiss inside FLINT for integer LaurentPoly matrices, else None.

    Every entry is multiplied by one common monomial so that all entries are
    polynomials; the determinant picks up that monomial to the n-th power.
    """
    n = len(matrix)
    entries = [e for row in matrix for e in row]
    if not all(isinstance(e, LaurentPoly) for e in entries):
        return None
    if any(_is_rational(e._terms) for e in entries):
        return None
    backed = [e for e in entries if e._fl is not None]
    if backed and all(e._fl[0] == backed[0]._fl[0] for e in backed):
        vars = backed[0]._fl[0]
        entries = [e.lift(vars) if e._fl is None else e for e in entries]
        if any(e._fl is None and not e.is_zero() for e in entries):
            return None
    else:
        vars = tuple(sorted(set().union(*(e._vars for e in entries))))
        if not vars:
            return None
        entries = [e.lift(vars) for e in entries]
    k = len(vars)
    ctx = _flint_ctx(k, False)
    live = [e for e in entries if not e.is_zero()]
    if not live:
        return LaurentPoly.zero()
    lows = [min(e._fl[1][i] for e in live) for i in range(k)]
    conv = [_fl_shift(ctx, e._fl[2], e._fl[1], lows) if not e.is_zero() else ctx.from_dict({}) for e in entries]
    a = [conv[i * n:(i + 1) * n] for i in range(n)]
    sign = 1
    prev = None
    for c in range(n - 1):
        if a[c][c].is_zero():
            swap = next((i for i in range(c + 1, n) if not a[i][c].is_zero()), None)
            if swap is None:
                return LaurentPoly.zero()
            a[c], a[swap] = a[swap], a[c]
            sign = -sign
        piv = a[c][c]
        for i in range(c + 1, n):
            for j in range(c + 1, n):
                num = piv * a[i][j] - a[i][c] * a[c][j]
                if prev is not None:
                    try:
                        num = num / prev
                    except Exception as exc:
                        raise NotDivisible("Bareiss step not exact") from exc
                a[i][j] = num
        prev = piv
    det = a[n - 1][n - 1]
    out = LaurentPoly._from_fl(vars, tuple(l * n for l in lows), det)
    return -out if sign < 0 else out


def _exact_div(num, den):
    if isinstance(den, int) and den == 1:
        return num
    if isinstance(num, LaurentPoly):
        return num.divexact(den)
    if isinstance(den, LaurentPoly):
        return LaurentPoly.coerce(num).divexact(den)
    if isinstance(num, int) and isinstance(den, int):
        q, r = divmod(num, den)
        if r:
            raise NotDivisible("Bareiss step not exact")
        return q
    return _norm(Fraction(num) / Fraction(den))


def random_point(variables: Iterable[VarId], rng: random.Random) -> dict[VarId, Fraction]:
    """Random rationals in [1, 2] with a large prime denominator."""
    d = 2**31 - 1
    return {v: 1 + Fraction(rng.randint(0, d), d) for v in sorted(set(variables))}
