"""Basis systems and their integral structure.

Provides B-spline and Fourier basis systems on an interval, evaluation of
basis functions and derivatives, and the Gram / roughness-penalty matrices
every model in the package is assembled from.

Integration strategy: piecewise Gauss-Legendre with enough nodes per piece
to be exact for polynomial (B-spline) integrands, closed-form orthogonality
for Fourier systems over whole periods, and per-wavelength Gauss-Legendre
otherwise.  This keeps quadrature noise out of everything downstream.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.interpolate import BSpline as _SciBSpline

from .exceptions import (
    DomainMismatchError,
    InvalidBasisError,
    InvalidOperatorError,
    OutOfDomainError,
)

ENDPOINT_TOL = 1e-12
DOMAIN_MATCH_TOL = 1e-9

# Gauss-Legendre nodes per wavelength piece for trigonometric integrands.
FOURIER_GL_NODES = 64


@dataclass(frozen=True)
class Interval:
    """A closed interval [lo, hi] of time (e.g. day index within a season)."""

    lo: float
    hi: float

    def __post_init__(self):
        if not (self.lo < self.hi):
            raise InvalidBasisError(f"interval [{self.lo}, {self.hi}] is empty")

    @property
    def length(self) -> float:
        return self.hi - self.lo

    def matches(self, other: "Interval", tol: float = DOMAIN_MATCH_TOL) -> bool:
        return abs(self.lo - other.lo) <= tol and abs(self.hi - other.hi) <= tol

    def clip_times(self, times: np.ndarray, tol: float = ENDPOINT_TOL) -> np.ndarray:
        """Validate times against the domain and snap endpoint roundoff."""
        times = np.asarray(times, dtype=float)
        bad = (times < self.lo - tol) | (times > self.hi + tol)
        if bad.any():
            t = float(times[bad][0])
            raise OutOfDomainError(
                f"time {t!r} outside domain [{self.lo}, {self.hi}]"
            )
        return np.clip(times, self.lo, self.hi)


@dataclass(frozen=True)
class DiffOperator:
    """The m-th derivative operator D^m used in roughness penalties."""

    order: int = 2

    def __post_init__(self):
        if self.order < 0:
            raise InvalidOperatorError("derivative order must be >= 0")


class BasisSystem:
    """Common interface of the concrete basis families."""

    domain: Interval
    nbasis: int

    def evaluate(self, times: Sequence[float], deriv: int = 0) -> np.ndarray:
        raise NotImplementedError

    def _breakpoints(self) -> np.ndarray:
        """Partition of the domain into pieces where integrands are smooth."""
        raise NotImplementedError

    def _gl_nodes(self) -> int:
        """Gauss-Legendre nodes per piece this family needs."""
        raise NotImplementedError

    def _sort_key(self) -> tuple:
        raise NotImplementedError


@dataclass(frozen=True, eq=True)
class BSplineBasis(BasisSystem):
    """Clamped B-spline basis of a given order (order = degree + 1)."""

    domain: Interval
    nbasis: int
    order: int
    interior_knots: tuple = field(default=())

    def __post_init__(self):
        if self.order < 1:
            raise InvalidBasisError("spline order must be >= 1")
        if self.nbasis < self.order:
            raise InvalidBasisError(
                f"nbasis={self.nbasis} < order={self.order}: need at least "
                "one basis function per polynomial degree of freedom"
            )
        knots = tuple(float(k) for k in self.interior_knots)
        if len(knots) != self.nbasis - self.order:
            raise InvalidBasisError(
                f"{len(knots)} interior knots inconsistent with nbasis="
                f"{self.nbasis}, order={self.order}"
            )
        if any(b < a for a, b in zip(knots, knots[1:])):
            raise InvalidBasisError("interior knots must be nondecreasing")
        if knots and (knots[0] <= self.domain.lo or knots[-1] >= self.domain.hi):
            raise InvalidBasisError("interior knots must lie strictly inside the domain")
        object.__setattr__(self, "interior_knots", knots)

    @property
    def knot_vector(self) -> np.ndarray:
        """Full clamped knot vector with endpoint multiplicity `order`."""
        return np.r_[
            [self.domain.lo] * self.order,
            self.interior_knots,
            [self.domain.hi] * self.order,
        ]

    def _spline(self, deriv: int) -> _SciBSpline:
        base = _SciBSpline(
            self.knot_vector, np.eye(self.nbasis), self.order - 1, extrapolate=False
        )
        return base.derivative(deriv) if deriv else base

    def evaluate(self, times, deriv: int = 0) -> np.ndarray:
        if deriv < 0:
            raise InvalidOperatorError("derivative order must be >= 0")
        if deriv >= self.order:
            raise InvalidOperatorError(
                f"derivative {deriv} undefined for splines of order {self.order}"
            )
        t = self.domain.clip_times(np.atleast_1d(np.asarray(times, dtype=float)))
        out = self._spline(deriv)(t)
        return np.nan_to_num(out, copy=False)

    def _breakpoints(self) -> np.ndarray:
        return np.unique(np.r_[self.domain.lo, self.interior_knots, self.domain.hi])

    def _gl_nodes(self) -> int:
        # order nodes integrate products of two basis functions exactly:
        # degree <= 2(order-1) <= 2*order - 1.
        return self.order

    def _sort_key(self) -> tuple:
        return ("bspline", self.nbasis, self.order, self.interior_knots)


@dataclass(frozen=True, eq=True)
class FourierBasis(BasisSystem):
    """Constant plus sine/cosine pairs: {1, sin wt, cos wt, sin 2wt, ...}."""

    domain: Interval
    nbasis: int
    period: float = 0.0

    def __post_init__(self):
        if self.nbasis < 1 or self.nbasis % 2 == 0:
            raise InvalidBasisError(
                f"Fourier basis needs an odd number of functions, got {self.nbasis}"
            )
        period = float(self.period) if self.period else self.domain.length
        if period <= 0:
            raise InvalidBasisError("period must be positive")
        object.__setattr__(self, "period", period)

    @property
    def omega(self) -> float:
        return 2.0 * np.pi / self.period

    @property
    def n_harmonics(self) -> int:
        return (self.nbasis - 1) // 2

    def evaluate(self, times, deriv: int = 0) -> np.ndarray:
        if deriv < 0:
            raise InvalidOperatorError("derivative order must be >= 0")
        t = self.domain.clip_times(np.atleast_1d(np.asarray(times, dtype=float)))
        out = np.empty((t.size, self.nbasis))
        out[:, 0] = 1.0 if deriv == 0 else 0.0
        shift = deriv * np.pi / 2.0
        for j in range(1, self.n_harmonics + 1):
            w = j * self.omega
            scale = w**deriv
            out[:, 2 * j - 1] = scale * np.sin(w * t + shift)
            out[:, 2 * j] = scale * np.cos(w * t + shift)
        return out

    def whole_periods(self) -> bool:
        ratio = self.domain.length / self.period
        return abs(ratio - round(ratio)) <= 1e-9 and round(ratio) >= 1

    def _breakpoints(self) -> np.ndarray:
        # One piece per wavelength of the highest harmonic.
        q = max(self.n_harmonics, 1)
        pieces = max(1, int(np.ceil(q * self.domain.length / self.period)))
        return np.linspace(self.domain.lo, self.domain.hi, pieces + 1)

    def _gl_nodes(self) -> int:
        return FOURIER_GL_NODES

    def _sort_key(self) -> tuple:
        return ("fourier", self.nbasis, self.period, ())


def make_bspline(domain: Interval, nbasis: int, order: int = 4) -> BSplineBasis:
    """B-spline basis with equally spaced interior knots."""
    if nbasis < order:
        raise InvalidBasisError(f"nbasis={nbasis} < order={order}")
    n_interior = nbasis - order
    interior = np.linspace(domain.lo, domain.hi, n_interior + 2)[1:-1]
    return BSplineBasis(domain, nbasis, order, tuple(interior))


def make_bspline_with_knots(
    domain: Interval, interior_knots: Sequence[float], order: int = 4
) -> BSplineBasis:
    """B-spline basis with caller-chosen breakpoints (e.g. denser near peaks)."""
    knots = tuple(float(k) for k in interior_knots)
    return BSplineBasis(domain, len(knots) + order, order, knots)


def make_fourier(domain: Interval, nbasis: int, period: float | None = None) -> FourierBasis:
    """Fourier basis; period defaults to the domain length."""
    return FourierBasis(domain, nbasis, period or 0.0)


def eval_basis(basis: BasisSystem, times: Sequence[float], deriv: int = 0) -> np.ndarray:
    """Matrix of basis-function (derivative) values, one row per time."""
    return basis.evaluate(times, deriv)


def _merged_rule(a: BasisSystem, b: BasisSystem) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre points/weights on the merged smoothness partition."""
    bp = np.union1d(a._breakpoints(), b._breakpoints())
    # collapse breakpoints closer than roundoff
    keep = np.r_[True, np.diff(bp) > 1e-12 * max(1.0, abs(bp[-1]))]
    bp = bp[keep]
    m = max(a._gl_nodes(), b._gl_nodes())
    xs, ws = leggauss(m)
    left, right = bp[:-1], bp[1:]
    half = 0.5 * (right - left)
    mid = 0.5 * (left + right)
    pts = (half[:, None] * xs[None, :] + mid[:, None]).ravel()
    wts = (half[:, None] * ws[None, :]).ravel()
    return pts, wts


def _fourier_closed_form(
    rows: FourierBasis, cols: FourierBasis, deriv: int = 0
) -> np.ndarray:
    """Exact integrals of (derivative) products over whole periods."""
    L = rows.domain.length
    out = np.zeros((rows.nbasis, cols.nbasis))
    w = rows.omega

    def parts(basis, k):
        # (kind, harmonic): kind 0 = const, 1 = sin, 2 = cos
        if k == 0:
            return 0, 0
        j = (k + 1) // 2
        return (1 if k % 2 == 1 else 2), j

    for k in range(rows.nbasis):
        kind_r, j_r = parts(rows, k)
        for l in range(cols.nbasis):
            kind_c, j_c = parts(cols, l)
            if kind_r == 0 and kind_c == 0:
                out[k, l] = L if deriv == 0 else 0.0
            elif kind_r == 0 or kind_c == 0:
                out[k, l] = 0.0
            elif j_r == j_c and kind_r == kind_c:
                out[k, l] = (j_r * w) ** (2 * deriv) * L / 2.0
            else:
                out[k, l] = 0.0
    return out


def gram_matrix(rows: BasisSystem, cols: BasisSystem) -> np.ndarray:
    """Pairwise integrals of basis-function products over the shared domain."""
    if not rows.domain.matches(cols.domain):
        raise DomainMismatchError(
            f"domains {rows.domain} and {cols.domain} differ"
        )
    # Canonical orientation so gram(A, B) is exactly gram(B, A) transposed.
    if cols._sort_key() < rows._sort_key():
        return gram_matrix(cols, rows).T

    if (
        isinstance(rows, FourierBasis)
        and isinstance(cols, FourierBasis)
        and abs(rows.period - cols.period) <= 1e-12 * rows.period
        and rows.whole_periods()
    ):
        return _fourier_closed_form(rows, cols)

    pts, wts = _merged_rule(rows, cols)
    er = rows.evaluate(pts)
    ec = cols.evaluate(pts)
    g = (er * wts[:, None]).T @ ec
    if rows == cols:
        g = 0.5 * (g + g.T)
    return g


def penalty_matrix(basis: BasisSystem, op: DiffOperator = DiffOperator(2)) -> np.ndarray:
    """Integrals of products of D^m-transformed basis functions (PSD)."""
    m = op.order
    if isinstance(basis, BSplineBasis) and m >= basis.order:
        raise InvalidOperatorError(
            f"operator order {m} too high for splines of order {basis.order}"
        )
    if isinstance(basis, FourierBasis) and basis.whole_periods():
        return _fourier_closed_form(basis, basis, deriv=m)

    pts, wts = _merged_rule(basis, basis)
    ed = basis.evaluate(pts, deriv=m)
    r = (ed * wts[:, None]).T @ ed
    return 0.5 * (r + r.T)
