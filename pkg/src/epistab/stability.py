"""Matrix stability criteria.

Hurwitz stability means s(A) < 0.  The compound-matrix criterion used
throughout is the equivalence

    s(A) < 0  <=>  s(A^[2]) < 0  and  (-1)^n det(A) > 0,

together with its sufficient variant where s(A^[2]) < 0 is certified by a
fixed Lozinskii measure mu(A^[2]) < 0.  All strict-inequality verdicts use a
1e-9 dead band: quantities inside the band yield ``INCONCLUSIVE`` rather than
a guess.

Also here: diagonal-dominance predicates, determinant bracketing for
diagonally dominant matrices, a Cardano cubic solver with discriminant
classification, the Routh-Hurwitz cubic test, a Schur (discrete-time)
criterion through the second multiplicative compound, and M-matrix /
Z-pattern classification flags.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .compound import add_compound, mult_compound
from .linalg import (
    SingularMatrixError,
    as_square,
    determinant,
    eigenvalues,
    inverse,
    solve,
    spectral_abscissa,
    spectral_radius,
)
from .lozinskii import MeasureKind, measure

MARGIN = 1e-9

STABLE = "stable"
UNSTABLE = "unstable"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class Verdict:
    """Stability outcome plus the evidence that produced it."""

    outcome: str
    criterion: str
    det_sign: float | None = None
    measure_kind: str | None = None
    measure_value: float | None = None
    abscissa: float | None = None
    discriminant: float | None = None
    cubic_class: str | None = None

    def to_dict(self):
        d = {"criterion": self.criterion, "outcome": self.outcome}
        for key in ("det_sign", "measure_kind", "measure_value", "abscissa",
                    "discriminant", "cubic_class"):
            v = getattr(self, key)
            if v is not None:
                d[key] = v
        return d


def hurwitz_exact(a):
    """Verdict from the spectral abscissa itself."""
    s = spectral_abscissa(a)
    if s < -MARGIN:
        outcome = STABLE
    elif s > MARGIN:
        outcome = UNSTABLE
    else:
        outcome = INCONCLUSIVE
    return Verdict(outcome, "hurwitz", abscissa=s)


def li_wang_exact(a):
    """Exact compound-matrix criterion: s(A^[2]) < 0 and (-1)^n det A > 0.

    The reported abscissa is that of the second additive compound.
    """
    m = as_square(a)
    n = m.shape[0]
    if not 2 <= n <= 6:
        raise ValueError(f"exact compound criterion supports 2 <= n <= 6, got n={n}")
    sgn = (-1.0) ** n * determinant(m)
    s2 = spectral_abscissa(add_compound(m, 2))
    if sgn > MARGIN and s2 < -MARGIN:
        outcome = STABLE
    elif sgn < -MARGIN or s2 > MARGIN:
        outcome = UNSTABLE
    else:
        outcome = INCONCLUSIVE
    return Verdict(outcome, "li-wang-exact", det_sign=sgn, abscissa=s2)


def li_wang_sufficient(a, kind):
    """Sufficient variant with a fixed Lozinskii measure on A^[2].

    Stable when (-1)^n det A > 0 and mu(A^[2]) < 0; unstable when the
    determinant condition fails outright (it is necessary); inconclusive
    otherwise -- the chosen measure may simply be too weak.
    """
    m = as_square(a)
    kind = MeasureKind.coerce(kind)
    n = m.shape[0]
    sgn = (-1.0) ** n * determinant(m)
    mu2 = measure(add_compound(m, 2), kind)
    if sgn < -MARGIN:
        outcome = UNSTABLE
    elif sgn > MARGIN and mu2 < -MARGIN:
        outcome = STABLE
    else:
        outcome = INCONCLUSIVE
    return Verdict(outcome, "li-wang-sufficient", det_sign=sgn,
                   measure_kind=kind.value, measure_value=mu2)


def dominance(a, axis="rows"):
    """Strict diagonal dominance over every row (or every column)."""
    m = as_square(a)
    if axis not in ("rows", "cols"):
        raise ValueError(f"axis must be 'rows' or 'cols', got {axis!r}")
    off = abs(m) - np.diag(np.diag(abs(m)))
    sums = off.sum(axis=1) if axis == "rows" else off.sum(axis=0)
    return bool((abs(np.diag(m)) > sums).all())


def _check_dominant_hypothesis(m):
    off = abs(m) - np.diag(np.diag(abs(m)))
    if (np.diag(m) < 0).any() or (np.diag(m) < off.sum(axis=1)).any():
        raise ValueError(
            "determinant bounds need a_ii >= sum_{j != i} |a_ij| with a_ii >= 0")


def price_bounds(a):
    """prod(a_ii - r_i) <= det A <= prod(a_ii + r_i) with r_i the upper-row sums."""
    m = as_square(a)
    _check_dominant_hypothesis(m)
    n = m.shape[0]
    r = np.array([abs(m[i, i + 1:]).sum() for i in range(n)])
    d = np.diag(m)
    return float(np.prod(d - r)), float(np.prod(d + r))


def det_bounds(a, split=None):
    """Determinant bracketing from a diagonal split a_ii = l_i + r_i.

    ``split`` is an optional list of (l_i, r_i) pairs; by default
    r_i = sum_{j>i} |a_ij| and l_i = a_ii - r_i.  The split must satisfy
    l_i >= sum_{j<i} |a_ij| and r_i >= sum_{j>i} |a_ij|.  Returns
    (lower, upper) with

        lower = sum_k  prod_{i<=k} l_i * prod_{i>k} r_i
        upper = sum_k  prod_{i<k} (l_i + 2 r_i) * l_k * prod_{i>k} r_i

    (the k = 0 upper term is prod_i r_i).
    """
    m = as_square(a)
    _check_dominant_hypothesis(m)
    n = m.shape[0]
    low_sums = np.array([abs(m[i, :i]).sum() for i in range(n)])
    up_sums = np.array([abs(m[i, i + 1:]).sum() for i in range(n)])
    if split is None:
        r = up_sums
        l = np.diag(m) - r
    else:
        if len(split) != n:
            raise ValueError(f"split must provide {n} (l_i, r_i) pairs")
        l = np.array([p[0] for p in split], dtype=float)
        r = np.array([p[1] for p in split], dtype=float)
        tol = 1e-12 * (1.0 + abs(np.diag(m)).max())
        if (abs(l + r - np.diag(m)) > tol).any():
            raise ValueError("split must satisfy l_i + r_i = a_ii")
        if (l < low_sums - tol).any() or (r < up_sums - tol).any():
            raise ValueError("split violates l_i >= sum_{j<i}|a_ij|, r_i >= sum_{j>i}|a_ij|")
    lower = 0.0
    for k in range(n + 1):
        lower += np.prod(l[:k]) * np.prod(r[k:])
    upper = float(np.prod(r))
    for k in range(1, n + 1):
        upper += np.prod(l[: k - 1] + 2.0 * r[: k - 1]) * l[k - 1] * np.prod(r[k:])
    return float(lower), float(upper)


THREE_REAL = "three_real"
REPEATED_ROOT = "repeated_root"
ONE_REAL_TWO_COMPLEX = "one_real_two_complex"


@dataclass(frozen=True)
class CubicRoots:
    roots: tuple
    discriminant: float
    klass: str

    def to_dict(self):
        return {
            "roots": [[z.real, z.imag] for z in self.roots],
            "discriminant": self.discriminant,
            "klass": self.klass,
        }


def cardano(a, b, c, d):
    """Roots of a x^3 + b x^2 + c x + d by Cardano's formulas.

    Uses principal complex cube roots with S and T paired so that
    S*T = -Q, which stays on compatible branches in the casus irreducibilis
    (three real roots, where the radicand Q^3 + R^2 is negative).  The
    conjugate-pair roots carry the factor (i sqrt(3)/2)(S - T): the half is
    required for the roots to satisfy the cubic.
    """
    if a == 0:
        raise ValueError("leading coefficient is zero: not a cubic")
    a1, a2, a3 = b / a, c / a, d / a
    q = (3.0 * a2 - a1 * a1) / 9.0
    r = (9.0 * a1 * a2 - 27.0 * a3 - 2.0 * a1 ** 3) / 54.0
    sq = cmath.sqrt(r * r + q ** 3)
    # take the cube root on the branch without cancellation; the partner
    # follows from S*T = -q (their cubes multiply to -q^3, so both branches
    # stay consistent)
    plus, minus = r + sq, r - sq
    u = plus if abs(plus) >= abs(minus) else minus
    if u == 0:
        s = t = 0j  # q = r = 0: triple root
    else:
        s = u ** (1.0 / 3.0)
        t = -q / s
    shift = a1 / 3.0
    half_im = 1j * cmath.sqrt(3) / 2.0 * (s - t)
    x1 = s + t - shift
    x2 = -(s + t) / 2.0 - shift + half_im
    x3 = -(s + t) / 2.0 - shift - half_im
    disc = cubic_discriminant(a1, a2, a3)
    scale = (1.0 + max(abs(a1), abs(a2), abs(a3))) ** 4
    if abs(disc) <= 1e-10 * scale:
        klass = REPEATED_ROOT
    elif disc > 0:
        klass = THREE_REAL
    else:
        klass = ONE_REAL_TWO_COMPLEX
    return CubicRoots((complex(x1), complex(x2), complex(x3)), float(disc), klass)


def cubic_discriminant(a1, a2, a3):
    """Discriminant of the monic cubic x^3 + a1 x^2 + a2 x + a3."""
    return (a1 * a1 * a2 * a2 + 18.0 * a1 * a2 * a3 - 27.0 * a3 * a3
            - 4.0 * a2 ** 3 - 4.0 * a1 ** 3 * a3)


def cubic_stability(a1, a2, a3):
    """Routh-Hurwitz test for the monic cubic x^3 + a1 x^2 + a2 x + a3.

    Stable iff a1 > 0, a3 > 0 and a1 a2 - a3 > 0 (1e-9 dead band).
    Evidence carries the discriminant and its root-structure class.
    """
    roots = cardano(1.0, a1, a2, a3)
    tests = (a1, a3, a1 * a2 - a3)
    if all(t > MARGIN for t in tests):
        outcome = STABLE
    elif any(t < -MARGIN for t in tests):
        outcome = UNSTABLE
    else:
        outcome = INCONCLUSIVE
    return Verdict(outcome, "routh-hurwitz-cubic", det_sign=a3,
                   discriminant=roots.discriminant, cubic_class=roots.klass)


def schur_sufficient(a):
    """Discrete-time test: rho(C_2(A)) < 1 and det(I - A^2) > 0.

    Agrees with rho(A) < 1 away from the unit-modulus margin.
    """
    m = as_square(a)
    n = m.shape[0]
    if n < 2:
        raise ValueError(f"second compound needs n >= 2, got n={n}")
    rho2 = spectral_radius(mult_compound(m, 2))
    d = determinant(np.eye(n) - m @ m)
    return bool(rho2 < 1.0 and d > 0.0)


@dataclass(frozen=True)
class MMatrixFlags:
    """Independently evaluated M-matrix conditions for a square matrix."""

    z_pattern: bool
    leading_minors_positive: bool
    inverse_nonnegative: bool
    dominant_after_scaling: bool
    is_nonsingular_m: bool
    note: str = ""

    def to_dict(self):
        d = {k: getattr(self, k) for k in (
            "z_pattern", "leading_minors_positive", "inverse_nonnegative",
            "dominant_after_scaling", "is_nonsingular_m")}
        if self.note:
            d["note"] = self.note
        return d


def m_matrix(a):
    """Evaluate the M-matrix condition flags, each on its own.

    ``dominant_after_scaling`` looks for a positive diagonal scaling D with
    A D strictly row dominant with positive diagonal, taking d_j = x_j from
    the solve A x = e.  ``inverse_nonnegative`` tolerates entries down to
    -1e-10.  A singular matrix reports False flags with a note instead of
    raising.
    """
    m = as_square(a)
    n = m.shape[0]
    off = m - np.diag(np.diag(m))
    z_pattern = bool((off <= 0).all())

    minors_pos = True
    for k in range(1, n + 1):
        if determinant(m[:k, :k]) <= 0:
            minors_pos = False
            break

    note = ""
    try:
        inv = inverse(m)
        inverse_nonneg = bool((inv >= -1e-10).all())
    except SingularMatrixError:
        inverse_nonneg = False
        note = "singular: inverse-based conditions reported false"

    dominant_scaled = False
    try:
        x = solve(m, np.ones(n))
        if (x > 0).all():
            scaled = m * x  # columns scaled by x_j
            dominant_scaled = bool((np.diag(scaled) > 0).all()) and dominance(scaled, "rows")
    except SingularMatrixError:
        if not note:
            note = "singular: inverse-based conditions reported false"

    return MMatrixFlags(
        z_pattern=z_pattern,
        leading_minors_positive=minors_pos,
        inverse_nonnegative=inverse_nonneg,
        dominant_after_scaling=dominant_scaled,
        is_nonsingular_m=z_pattern and minors_pos,
        note=note,
    )


def gershgorin_contains_spectrum(a):
    """True when every eigenvalue lies in the union of row Gershgorin discs."""
    m = as_square(a)
    off = abs(m) - np.diag(np.diag(abs(m)))
    radii = off.sum(axis=1)
    centers = np.diag(m)
    for lam in eigenvalues(m):
        if not (abs(lam - centers) <= radii + 1e-8).any():
            return False
    return True
