"""The space of interpolating occupation statistics.

A statistics is determined by its one-particle free energy
F(X) = sum w_n X^n / n with w_1 = 1.  Derived data cached on construction:

* the partition function z = exp(F), whose coefficients are the
  occupation numbers W_n,
* the weight function w = X F'(X) (the mean occupation as a series in
  fugacity), normalized so w = X + O(X^2),
* the compositional inverse X(w) of the weight function.

The involution swapping Bose-Einstein and Fermi-Dirac statistics sends a
weight function to its compositional inverse; series composition of
weight functions is a group law with the Boltzmann-Gibbs statistics
(w = X) as identity.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple, Sequence

from . import series as fps
from .series import (
    LogSeries,
    RationalLike,
    TruncatedSeries,
    as_rational,
    compose,
    evaluate,
    exp_series,
    lagrange_invert,
    log_series,
)
from .umbral import Polynomial


class Statistics:
    """An interpolating statistics, stored by its free energy."""

    __slots__ = ("name", "F", "w", "z", "X_of_w")

    def __init__(self, F: TruncatedSeries, name: str = "statistics"):
        if F.coeffs[0] != 0:
            raise ValueError("free energy must vanish at 0")
        if F.order < 1 or F.coeffs[1] != 1:
            raise ValueError(
                "free energy must have unit linear coefficient (normalization w_1 = 1)"
            )
        w = TruncatedSeries([k * F.coeffs[k] for k in range(F.order + 1)])
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "F", F)
        object.__setattr__(self, "w", w)
        object.__setattr__(self, "z", exp_series(F))
        # lagrange_invert verifies both composition roundtrips internally
        object.__setattr__(self, "X_of_w", lagrange_invert(w))

    def __setattr__(self, name, value):
        raise AttributeError("Statistics is immutable")

    @property
    def order(self) -> int:
        return self.F.order

    def __eq__(self, other) -> bool:
        if not isinstance(other, Statistics):
            return NotImplemented
        return self.F == other.F

    def __repr__(self):
        return f"Statistics({self.name!r}, order={self.order})"

    def cluster_coefficients(self) -> list[Fraction]:
        """w_1..w_N."""
        return list(self.w.coeffs[1:])

    def occupation_numbers(self) -> list[Fraction]:
        """W_1..W_N (W_0 = 1 is implicit)."""
        return list(self.z.coeffs[1:])


class SpectralSample(NamedTuple):
    """A point on the plane curves z = z(X) and e^Y = z(X), by partial sums."""

    X: Fraction
    z: Fraction
    Y: Fraction


def from_free_energy(F: TruncatedSeries, name: str = "statistics") -> Statistics:
    return Statistics(F, name)


def from_cluster(w_list: Sequence[RationalLike], name: str = "statistics") -> Statistics:
    """Build from cluster coefficients w_1, w_2, ...; requires w_1 = 1."""
    w = [as_rational(c) for c in w_list]
    if not w or w[0] != 1:
        raise ValueError("first cluster coefficient must be 1")
    F = TruncatedSeries([Fraction(0)] + [c / (k + 1) for k, c in enumerate(w)])
    return Statistics(F, name)


def from_weight(w: TruncatedSeries, name: str = "statistics") -> Statistics:
    """Build from the weight function w(X) = X + ...."""
    return from_cluster(w.coeffs[1:], name)


def from_occupation(
    W_list: Sequence[RationalLike], name: str = "statistics"
) -> Statistics:
    """Build from occupation numbers W_1, W_2, ...; requires W_1 = 1."""
    W = [as_rational(c) for c in W_list]
    if not W or W[0] != 1:
        raise ValueError("first occupation number must be 1")
    z = TruncatedSeries([Fraction(1)] + W)
    return Statistics(log_series(z), name)


def occupation_polynomial(stat: Statistics, k: int) -> Polynomial:
    """W_k(N): the deformed binomial coefficient, as an exact polynomial in N.

    From z(X)^N = sum_k W_k(N) X^k one gets
    W_k(N) = sum_j (N^j / j!) [X^k] F(X)^j, a polynomial of degree k.
    """
    if k > stat.order:
        raise ValueError(f"index {k} beyond truncation order {stat.order}")
    power = fps.one(k)
    Ft = stat.F.truncate(k) if stat.order > k else stat.F
    coeffs = []
    fact = Fraction(1)
    for j in range(k + 1):
        if j > 0:
            fact *= j
            power = fps.mul(power, Ft)
        coeffs.append(power.coeffs[k] / fact)
    return Polynomial(coeffs)


def occupation_recursion_holds(stat: Statistics, n1: int, n2: int, k: int) -> bool:
    """W_k(N1+N2) == sum_i W_i(N1) W_{k-i}(N2), exactly."""
    polys = [occupation_polynomial(stat, i) for i in range(k + 1)]
    lhs = polys[k](n1 + n2)
    rhs = sum(polys[i](n1) * polys[k - i](n2) for i in range(k + 1))
    return lhs == rhs


def dual(stat: Statistics) -> Statistics:
    """The statistics whose weight function is the compositional inverse
    of this one's; an involution fixing Boltzmann-Gibbs and swapping
    Bose-Einstein with Fermi-Dirac."""
    return from_weight(stat.X_of_w, name=f"dual({stat.name})")


def group_compose(v: Statistics, w: Statistics, name: str | None = None) -> Statistics:
    """Composition of weight functions: the group law with BG as identity."""
    composed = compose(v.w, w.w)
    return from_weight(composed, name or f"({v.name} o {w.name})")


def _twist(w: TruncatedSeries, m: int) -> TruncatedSeries:
    """Coefficient map w_n -> n^m w_n on X^n (leaves the normalization alone)."""
    return TruncatedSeries([(k**m) * c for k, c in enumerate(w.coeffs)])


def group_compose_m(v: Statistics, w: Statistics, m: int) -> Statistics:
    """The m-th multiplication: compose the n^m-twisted weight functions.

    m = 0 reduces to the plain composition law.
    """
    if m < 0:
        raise ValueError("twist exponent must be non-negative")
    if m == 0:
        return group_compose(v, w)
    composed = compose(_twist(v.w, m), _twist(w.w, m))
    return from_weight(composed, f"({v.name} o_{m} {w.name})")


def entropy(stat: Statistics) -> LogSeries:
    """H(X) = F(X) - w(X) log X: the Legendre transform of the free energy."""
    return LogSeries(stat.F, -stat.w)


def mean_occupation(stat: Statistics, x: RationalLike) -> Fraction:
    """Partial-sum evaluation of the weight function at a fugacity value."""
    return evaluate(stat.w, x)


def spectral_samples(
    stat: Statistics, xs: Sequence[RationalLike]
) -> list[SpectralSample]:
    """Sample (X, z(X), Y = F(X)) by exact partial sums."""
    out = []
    for x in xs:
        x = as_rational(x)
        out.append(SpectralSample(x, evaluate(stat.z, x), evaluate(stat.F, x)))
    return out


def haldane_wu_W(g: RationalLike, n: int, beta: RationalLike) -> Fraction:
    """Exclusion-principle state count with rational exclusion parameter.

    (1/n!) * prod_{j=0}^{n-1} (g + (n-1)(1-beta) - j): the falling-factorial
    form of [g + (n-1)(1-beta)]! / (n! [g - 1 - beta(n-1)]!).  beta = 0
    gives the bosonic binomial C(g+n-1, n); beta = 1 the fermionic C(g, n).
    """
    if n < 0:
        raise ValueError("particle number must be non-negative")
    g = as_rational(g)
    beta = as_rational(beta)
    top = g + (n - 1) * (1 - beta)
    acc = Fraction(1)
    for j in range(n):
        acc *= top - j
        acc /= j + 1
    return acc


def gentile_statistics(p: int, order: int) -> Statistics:
    """Maximum occupancy p per state: z = 1 + X + ... + X^p.

    p = 1 is Fermi-Dirac; as p grows the coefficients approach
    Bose-Einstein through any fixed order.
    """
    if p < 1:
        raise ValueError("maximum occupancy must be at least 1")
    W = [Fraction(1) if k <= p else Fraction(0) for k in range(1, order + 1)]
    return from_occupation(W, name=f"gentile({p})")


# -- JSON --------------------------------------------------------------------


def statistics_to_json(stat: Statistics) -> dict:
    return {
        "name": stat.name,
        "order": stat.order,
        "F": fps.series_to_json(stat.F),
        "w": fps.series_to_json(stat.w),
        "X_of_w": fps.series_to_json(stat.X_of_w),
        "W": [str(c) for c in stat.occupation_numbers()],
        "w_cluster": [str(c) for c in stat.cluster_coefficients()],
    }


def statistics_from_json(data: dict) -> Statistics:
    return Statistics(fps.series_from_json(data["F"]), name=data["name"])
