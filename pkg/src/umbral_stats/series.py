"""Exact-arithmetic kernel for truncated formal power series.

A :class:`TruncatedSeries` stores the coefficients of a univariate formal
power series through a finite truncation order.  Coefficients beyond the
order are *unknown*, not zero, so every operation returns a result whose
order is the largest through which all coefficients are determined by the
inputs (conservatively ``min`` of the input orders, reduced further where
an operation loses information, e.g. differentiation).

All coefficients are :class:`fractions.Fraction`; nothing here ever
rounds.  :class:`LogSeries` extends the model with a single logarithmic
generator: it represents ``A(p) + B(p) * log(p)`` for truncated series
``A`` and ``B``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Union

Rational = Fraction
RationalLike = Union[Fraction, int, str]

DEFAULT_ORDER = 16


def as_rational(value: RationalLike) -> Fraction:
    """Coerce ints, "p/q" strings, and Fractions to an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"not an exact rational: {value!r}")


class TruncatedSeries:
    """A formal power series known exactly through ``order``.

    ``coeffs[k]`` is the coefficient of ``X**k``; ``len(coeffs) == order + 1``.
    Instances are immutable.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[RationalLike]):
        cs = tuple(as_rational(c) for c in coeffs)
        if not cs:
            raise ValueError("a truncated series needs at least the constant term")
        object.__setattr__(self, "coeffs", cs)

    def __setattr__(self, name, value):
        raise AttributeError("TruncatedSeries is immutable")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int) -> Fraction:
        if not 0 <= k <= self.order:
            raise IndexError(f"coefficient {k} beyond truncation order {self.order}")
        return self.coeffs[k]

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"TruncatedSeries({[str(c) for c in self.coeffs]})"

    def __str__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                terms.append(str(c))
            elif k == 1:
                terms.append(f"{c}*X")
            else:
                terms.append(f"{c}*X^{k}")
        body = " + ".join(terms) if terms else "0"
        return f"{body} + O(X^{self.order + 1})"

    def truncate(self, order: int) -> TruncatedSeries:
        if order > self.order:
            raise ValueError(f"cannot extend order {self.order} to {order}")
        return TruncatedSeries(self.coeffs[: order + 1])

    def agrees_with(self, other: TruncatedSeries, through: int | None = None) -> bool:
        """Coefficient-wise equality through ``through`` (default: common order)."""
        n = min(self.order, other.order) if through is None else through
        if n > min(self.order, other.order):
            raise ValueError("comparison order exceeds a truncation order")
        return self.coeffs[: n + 1] == other.coeffs[: n + 1]

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: TruncatedSeries) -> TruncatedSeries:
        return add(self, other)

    def __sub__(self, other: TruncatedSeries) -> TruncatedSeries:
        return sub(self, other)

    def __mul__(self, other) -> TruncatedSeries:
        if isinstance(other, TruncatedSeries):
            return mul(self, other)
        return scale(self, as_rational(other))

    def __rmul__(self, other) -> TruncatedSeries:
        return scale(self, as_rational(other))

    def __neg__(self) -> TruncatedSeries:
        return scale(self, Fraction(-1))


def constant(value: RationalLike, order: int = 0) -> TruncatedSeries:
    c = as_rational(value)
    return TruncatedSeries([c] + [Fraction(0)] * order)


def zero(order: int) -> TruncatedSeries:
    return constant(0, order)


def one(order: int) -> TruncatedSeries:
    return constant(1, order)


def identity(order: int) -> TruncatedSeries:
    """The series X."""
    if order < 1:
        raise ValueError("identity series needs order >= 1")
    coeffs = [Fraction(0)] * (order + 1)
    coeffs[1] = Fraction(1)
    return TruncatedSeries(coeffs)


def from_function(fn, order: int) -> TruncatedSeries:
    """Series with coefficients ``fn(k)`` for k = 0..order."""
    return TruncatedSeries([as_rational(fn(k)) for k in range(order + 1)])


def add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    n = min(a.order, b.order)
    return TruncatedSeries([a.coeffs[k] + b.coeffs[k] for k in range(n + 1)])


def sub(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    n = min(a.order, b.order)
    return TruncatedSeries([a.coeffs[k] - b.coeffs[k] for k in range(n + 1)])


def scale(a: TruncatedSeries, c: RationalLike) -> TruncatedSeries:
    c = as_rational(c)
    return TruncatedSeries([c * x for x in a.coeffs])


def mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product truncated at the smaller input order."""
    n = min(a.order, b.order)
    out = [Fraction(0)] * (n + 1)
    for i in range(n + 1):
        ai = a.coeffs[i]
        if ai == 0:
            continue
        for j in range(n + 1 - i):
            bj = b.coeffs[j]
            if bj != 0:
                out[i + j] += ai * bj
    return TruncatedSeries(out)


def shift_up(a: TruncatedSeries) -> TruncatedSeries:
    """Multiply by X.  Order rises by one; no information is lost."""
    return TruncatedSeries((Fraction(0),) + a.coeffs)


def shift_down(a: TruncatedSeries) -> TruncatedSeries:
    """Divide by X; requires zero constant term.  Order drops by one."""
    if a.coeffs[0] != 0:
        raise ValueError("cannot divide by X: nonzero constant term")
    if a.order < 1:
        raise ValueError("cannot divide by X at order 0")
    return TruncatedSeries(a.coeffs[1:])


def compose(outer: TruncatedSeries, inner: TruncatedSeries) -> TruncatedSeries:
    """outer(inner(X)); inner must have zero constant term.

    Evaluated by Horner's rule in the truncated series ring; the result is
    valid through ``min(outer.order, inner.order)``.
    """
    if inner.coeffs[0] != 0:
        raise ValueError("composition requires inner series with zero constant term")
    n = min(outer.order, inner.order)
    inner_t = inner.truncate(n) if inner.order > n else inner
    acc = constant(outer.coeffs[n], n)
    for k in range(n - 1, -1, -1):
        acc = mul(acc, inner_t)
        acc = TruncatedSeries(
            (acc.coeffs[0] + outer.coeffs[k],) + acc.coeffs[1:]
        )
    return acc


def derivative(a: TruncatedSeries) -> TruncatedSeries:
    """d/dX; order drops by one."""
    if a.order == 0:
        raise ValueError("cannot differentiate an order-0 series")
    return TruncatedSeries([k * a.coeffs[k] for k in range(1, a.order + 1)])


def integrate(a: TruncatedSeries) -> TruncatedSeries:
    """Antiderivative with zero constant term, reported at the input order."""
    out = [Fraction(0)] * (a.order + 1)
    for k in range(a.order):
        out[k + 1] = a.coeffs[k] / (k + 1)
    return TruncatedSeries(out)


def integrate_extend(a: TruncatedSeries) -> TruncatedSeries:
    """Antiderivative keeping every determined coefficient (order rises by one)."""
    out = [Fraction(0)] * (a.order + 2)
    for k in range(a.order + 1):
        out[k + 1] = a.coeffs[k] / (k + 1)
    return TruncatedSeries(out)


def exp_series(a: TruncatedSeries) -> TruncatedSeries:
    """exp(a) for a series with zero constant term.

    Uses the recurrence from y' = a' y, so the cost is quadratic in the order.
    """
    if a.coeffs[0] != 0:
        raise ValueError("exp requires zero constant term")
    n = a.order
    out = [Fraction(0)] * (n + 1)
    out[0] = Fraction(1)
    for m in range(1, n + 1):
        acc = Fraction(0)
        for k in range(1, m + 1):
            if a.coeffs[k] != 0:
                acc += k * a.coeffs[k] * out[m - k]
        out[m] = acc / m
    return TruncatedSeries(out)


def log_series(a: TruncatedSeries) -> TruncatedSeries:
    """log(a) for a series with constant term 1; result has zero constant term."""
    if a.coeffs[0] != 1:
        raise ValueError("log requires constant term 1")
    n = a.order
    out = [Fraction(0)] * (n + 1)
    for m in range(1, n + 1):
        acc = m * a.coeffs[m]
        for k in range(1, m):
            if a.coeffs[m - k] != 0:
                acc -= k * out[k] * a.coeffs[m - k]
        out[m] = acc / m
    return TruncatedSeries(out)


def pow_rational(a: TruncatedSeries, r: RationalLike) -> TruncatedSeries:
    """a**r = exp(r * log a) for a series with constant term 1."""
    if a.coeffs[0] != 1:
        raise ValueError("rational power requires constant term 1")
    return exp_series(scale(log_series(a), as_rational(r)))


def reciprocal(a: TruncatedSeries) -> TruncatedSeries:
    """1/a for a series with nonzero constant term."""
    c0 = a.coeffs[0]
    if c0 == 0:
        raise ValueError("reciprocal requires nonzero constant term")
    n = a.order
    out = [Fraction(0)] * (n + 1)
    out[0] = 1 / c0
    for m in range(1, n + 1):
        acc = Fraction(0)
        for k in range(1, m + 1):
            if a.coeffs[k] != 0:
                acc += a.coeffs[k] * out[m - k]
        out[m] = -acc / c0
    return TruncatedSeries(out)


def lagrange_invert(a: TruncatedSeries) -> TruncatedSeries:
    """Compositional inverse of a delta series (a(0)=0, a'(0)!=0).

    Solves compose(a, t) = X coefficient by coefficient: writing
    t = sum t_n X^n and P[k][n] = [X^n] t^k, each new t_n is fixed by the
    X^n coefficient of sum_k a_k t^k.  Both composition roundtrips are
    verified before returning.
    """
    if a.coeffs[0] != 0:
        raise ValueError("inversion requires zero constant term")
    if a.order < 1 or a.coeffs[1] == 0:
        raise ValueError("no compositional inverse: zero linear coefficient")
    n = a.order
    a1 = a.coeffs[1]
    t = [Fraction(0)] * (n + 1)
    t[1] = 1 / a1
    # powers[k][m] = coefficient of X^m in t(X)**k, filled column by column
    powers = [[Fraction(0)] * (n + 1) for _ in range(n + 1)]
    powers[1][1] = t[1]
    for m in range(2, n + 1):
        for k in range(2, m + 1):
            acc = Fraction(0)
            prev = powers[k - 1]
            for j in range(k - 1, m):
                if prev[j] != 0 and t[m - j] != 0:
                    acc += prev[j] * t[m - j]
            powers[k][m] = acc
        acc = Fraction(0)
        for k in range(2, m + 1):
            if a.coeffs[k] != 0:
                acc += a.coeffs[k] * powers[k][m]
        t[m] = -acc / a1
        powers[1][m] = t[m]
    result = TruncatedSeries(t)
    ident = identity(n)
    if compose(a, result) != ident or compose(result, a) != ident:
        raise AssertionError("internal error: inversion roundtrip failed")
    return result


def evaluate(a: TruncatedSeries, x: RationalLike) -> Fraction:
    """Exact partial-sum evaluation sum_{k<=order} c_k x^k."""
    x = as_rational(x)
    acc = Fraction(0)
    for c in reversed(a.coeffs):
        acc = acc * x + c
    return acc


# -- log-augmented series ---------------------------------------------------


class LogSeries:
    """A(p) + B(p) * log(p) with both parts truncated at the same order."""

    __slots__ = ("plain", "logpart")

    def __init__(self, plain: TruncatedSeries, logpart: TruncatedSeries):
        n = min(plain.order, logpart.order)
        object.__setattr__(self, "plain", plain.truncate(n))
        object.__setattr__(self, "logpart", logpart.truncate(n))

    def __setattr__(self, name, value):
        raise AttributeError("LogSeries is immutable")

    @property
    def order(self) -> int:
        return self.plain.order

    def __eq__(self, other) -> bool:
        if not isinstance(other, LogSeries):
            return NotImplemented
        return self.plain == other.plain and self.logpart == other.logpart

    def __hash__(self):
        return hash((self.plain, self.logpart))

    def __repr__(self):
        return f"LogSeries(plain={self.plain!r}, logpart={self.logpart!r})"

    def __str__(self):
        return f"[{self.plain}] + [{self.logpart}] * log(p)"

    def truncate(self, order: int) -> LogSeries:
        return LogSeries(self.plain.truncate(order), self.logpart.truncate(order))

    def __add__(self, other: LogSeries) -> LogSeries:
        return LogSeries(add(self.plain, other.plain), add(self.logpart, other.logpart))

    def __sub__(self, other: LogSeries) -> LogSeries:
        return LogSeries(sub(self.plain, other.plain), sub(self.logpart, other.logpart))

    def __neg__(self) -> LogSeries:
        return LogSeries(-self.plain, -self.logpart)

    def agrees_with(self, other: LogSeries, through: int | None = None) -> bool:
        n = min(self.order, other.order) if through is None else through
        return self.plain.agrees_with(other.plain, n) and self.logpart.agrees_with(
            other.logpart, n
        )


def logseries_compose(ls: LogSeries, u: TruncatedSeries) -> LogSeries:
    """Substitute p = u(X) into A(p) + B(p) log p.

    Requires u(0) = 0 and u'(0) = 1, so that log u(X) = log X + log(u(X)/X)
    introduces no scalar log constant:  the result is
    A(u) + B(u) * log(u/X)  +  B(u) * log X.
    """
    if u.coeffs[0] != 0:
        raise ValueError("substitution requires zero constant term")
    if u.order < 1 or u.coeffs[1] != 1:
        raise ValueError(
            "substitution requires unit linear coefficient "
            "(a scalar log constant would otherwise arise)"
        )
    b_of_u = compose(ls.logpart, u)
    unit_log = log_series(shift_down(u))
    plain = add(compose(ls.plain, u), mul(b_of_u, unit_log))
    return LogSeries(plain, b_of_u)


def logseries_derivative(ls: LogSeries) -> LogSeries:
    """d/dp of A(p) + B(p) log p = A' + B/p + B' log p; needs B(0) = 0."""
    if ls.logpart.coeffs[0] != 0:
        raise ValueError("derivative requires log coefficient with zero constant term")
    plain = add(derivative(ls.plain), shift_down(ls.logpart))
    return LogSeries(plain, derivative(ls.logpart))


# -- JSON encoding -----------------------------------------------------------


def rational_to_str(c: Fraction) -> str:
    return str(c)


def series_to_json(a: TruncatedSeries) -> dict:
    return {"order": a.order, "coeffs": [str(c) for c in a.coeffs]}


def series_from_json(data: dict) -> TruncatedSeries:
    s = TruncatedSeries(data["coeffs"])
    if s.order != data["order"]:
        raise ValueError("order field does not match coefficient count")
    return s


def logseries_to_json(ls: LogSeries) -> dict:
    return {"plain": series_to_json(ls.plain), "log": series_to_json(ls.logpart)}


def logseries_from_json(data: dict) -> LogSeries:
    return LogSeries(series_from_json(data["plain"]), series_from_json(data["log"]))

