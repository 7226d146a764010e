"""Five-compartment epidemic model (exposed, infected, critical, hospitalised,
dead) with mass-action cross terms.

The printed ODE system is ground truth; every downstream closed form
(Jacobian entries, endemic ratios, the next-generation-matrix determinant and
minors, the disease-free determinant, the splitting cubic) is re-derived from
it here.  The transcribed versions from the source publication live in
:mod:`epistab.paper_check`, which diffs them against these oracles.

State vectors are (E, I, C, H, D).  ``rhs`` broadcasts over leading axes so
batches of states integrate in one call.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields

import numpy as np

from . import linalg
from .compound import add_compound
from .linalg import determinant, eigenvalues, inverse, spectral_radius
from .lozinskii import MeasureKind
from .stability import CubicRoots, cardano, dominance, hurwitz_exact, li_wang_exact, li_wang_sufficient

RESIDUAL_RTOL = 1e-10

PARAM_KEYS = ("B", "mu", "beta1", "beta2", "beta3", "beta4", "beta5",
              "beta6", "beta7", "beta8", "beta9", "beta10")


class InfeasibleError(ValueError):
    """A requested equilibrium or ratio does not exist for these parameters."""


class DegenerateSplittingError(ValueError):
    """The diagonal splitting of the disease-free Jacobian is not invertible."""


@dataclass(frozen=True)
class CovidParams:
    """Nonnegative epidemiological rates (per day)."""

    B: float
    mu: float
    beta1: float
    beta2: float
    beta3: float
    beta4: float
    beta5: float
    beta6: float
    beta7: float
    beta8: float
    beta9: float
    beta10: float

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if not math.isfinite(v) or v < 0:
                raise ValueError(f"parameter {f.name} must be finite and >= 0, got {v}")

    @classmethod
    def from_dict(cls, d):
        missing = [k for k in PARAM_KEYS if k not in d]
        if missing:
            raise ValueError(f"missing parameters: {', '.join(missing)} "
                             "(beta10 has no default and must be given explicitly)")
        extra = [k for k in d if k not in PARAM_KEYS]
        if extra:
            raise ValueError(f"unknown parameters: {', '.join(sorted(extra))}")
        return cls(**{k: float(d[k]) for k in PARAM_KEYS})

    def to_dict(self):
        return {k: getattr(self, k) for k in PARAM_KEYS}

    def replace(self, **kw):
        d = self.to_dict()
        d.update(kw)
        return CovidParams(**d)


def table_params(beta10):
    """The published rate table.  beta10 carries no table value, so it is required."""
    return CovidParams(B=0.80, mu=0.01, beta1=0.55, beta2=0.40, beta3=0.60,
                       beta4=0.80, beta5=0.34, beta6=0.30, beta7=0.35,
                       beta8=0.30, beta9=0.35, beta10=float(beta10))


@dataclass(frozen=True)
class DerivedParams:
    """Compound rate groups reused across the closed forms.

    a = beta1 - beta10, alpha = beta2 + beta6 + beta8 + mu,
    beta_c = beta3 + beta5 + mu, gamma_c = beta4 + beta9 + mu, and the
    endemic ratios I*/H*, C*/H*, D*/H* (alpha_hat, beta_hat, gamma_hat).
    """

    a: float
    alpha: float
    beta_c: float
    gamma_c: float
    alpha_hat: float
    beta_hat: float
    gamma_hat: float


def derived(p):
    """Derived rate groups and endemic ratios, re-derived from the ODEs.

    alpha_hat and beta_hat solve the linear pair of the C and H equilibrium
    equations; gamma_hat then follows from the D equation at E* = alpha / a.
    """
    a = p.beta1 - p.beta10
    alpha = p.beta2 + p.beta6 + p.beta8 + p.mu
    beta_c = p.beta3 + p.beta5 + p.mu
    gamma_c = p.beta4 + p.beta9 + p.mu
    den = p.beta2 * p.beta3 + p.beta8 * beta_c
    if den <= 0:
        raise InfeasibleError("endemic ratios undefined: beta2*beta3 + beta8*(beta3+beta5+mu) vanishes")
    alpha_hat = (beta_c * gamma_c - p.beta3 * p.beta4) / den
    beta_hat = (p.beta8 * p.beta4 + p.beta2 * gamma_c) / den
    if a == 0:
        raise InfeasibleError("endemic ratios undefined: beta1 == beta10")
    e_star = alpha / a
    if p.beta7 * e_star == 0:
        raise InfeasibleError("endemic ratios undefined: beta7 * E* vanishes")
    gamma_hat = (p.beta6 * alpha_hat + p.beta5 * beta_hat) / (p.beta7 * e_star)
    return DerivedParams(a, alpha, beta_c, gamma_c, alpha_hat, beta_hat, gamma_hat)


def state(e, i, c, h, d):
    """Validated compartment state: populations are finite and nonnegative.

    Internal evaluation points (linearisation probes, perturbations) are
    plain arrays and may go negative; this constructor is for actual
    population states such as initial conditions.
    """
    x = np.array([e, i, c, h, d], dtype=float)
    if not np.isfinite(x).all() or (x < 0).any():
        raise ValueError("compartment populations must be finite and >= 0")
    return x


def rhs(p, x):
    """Right-hand side of the five ODEs, exactly as printed.

    ``x`` has shape (..., 5); the result matches.  Negative states are
    allowed (the linearised dynamics evaluate off the positive cone).
    """
    x = np.asarray(x, dtype=float)
    e, i, c, h, d = (x[..., k] for k in range(5))
    f1 = p.B - p.beta1 * e * i + p.beta7 * e * d + p.beta9 * h + p.beta10 * e * i - p.mu * e
    f2 = p.beta1 * e * i - p.beta2 * i - p.beta6 * i - p.beta8 * i - p.beta10 * e * i - p.mu * i
    f3 = p.beta2 * i - p.beta5 * c - p.beta3 * c + p.beta4 * h - p.mu * c
    f4 = p.beta3 * c - p.beta4 * h + p.beta8 * i - p.beta9 * h - p.mu * h
    f5 = p.beta5 * c + p.beta6 * i - p.beta7 * d * e
    return np.stack([f1, f2, f3, f4, f5], axis=-1)


def sum_rate(p, x):
    """Sum of the five right-hand sides.

    Algebraically this equals B - mu*(E + I + C + H): the D equation carries
    no -mu*D term, so the total population is *not* damped through D.  (The
    often-quoted identity with mu*(E+I+C+H+D) overstates the damping by
    mu*D; both values are exposed by the transcription-check report.)
    """
    return float(np.sum(rhs(p, x), axis=-1))


def jacobian_fd(p, x, h=1e-6):
    """Central-difference Jacobian of :func:`rhs`; the ground-truth oracle."""
    if not 1e-8 <= h <= 1e-4:
        raise ValueError(f"step h must lie in [1e-8, 1e-4], got {h}")
    x = np.asarray(x, dtype=float)
    cols = []
    for j in range(5):
        dx = np.zeros(5)
        dx[j] = h
        cols.append((rhs(p, x + dx) - rhs(p, x - dx)) / (2.0 * h))
    return np.stack(cols, axis=-1)


def jacobian_closed(p, x):
    """Analytically re-derived Jacobian of :func:`rhs` at an arbitrary state."""
    e, i, c, h, d = np.asarray(x, dtype=float)
    return np.array([
        [(p.beta10 - p.beta1) * i + p.beta7 * d - p.mu,
         (p.beta10 - p.beta1) * e, 0.0, p.beta9, p.beta7 * e],
        [(p.beta1 - p.beta10) * i,
         (p.beta1 - p.beta10) * e - (p.beta2 + p.beta6 + p.beta8 + p.mu),
         0.0, 0.0, 0.0],
        [0.0, p.beta2, -(p.beta3 + p.beta5 + p.mu), p.beta4, 0.0],
        [0.0, p.beta8, p.beta3, -(p.beta4 + p.beta9 + p.mu), 0.0],
        [-p.beta7 * d, p.beta6, p.beta5, 0.0, -p.beta7 * e],
    ])


@dataclass(frozen=True)
class Equilibrium:
    state: np.ndarray
    kind: str  # "dfe" | "endemic"
    feasible: bool
    residual: float

    def to_dict(self):
        return {"state": [float(v) for v in self.state], "kind": self.kind,
                "feasible": self.feasible, "residual": self.residual}


def _make_equilibrium(p, state, kind):
    residual = float(abs(rhs(p, state)).max())
    gate = RESIDUAL_RTOL * (1.0 + float(abs(state).max()))
    if residual >= gate:
        raise ArithmeticError(
            f"{kind} equilibrium residual {residual:.3e} exceeds gate {gate:.3e}")
    return Equilibrium(np.asarray(state, dtype=float), kind,
                       feasible=bool((np.asarray(state) > 0).all()),
                       residual=residual)


def dfe(p):
    """Disease-free equilibrium (B/mu, 0, 0, 0, 0)."""
    if p.mu <= 0:
        raise ValueError("disease-free equilibrium needs mu > 0")
    return _make_equilibrium(p, np.array([p.B / p.mu, 0.0, 0.0, 0.0, 0.0]), "dfe")


def endemic(p):
    """Endemic equilibrium assembled from the re-derived ratios.

    E* = alpha / (beta1 - beta10); I*, C*, D* are alpha_hat, beta_hat,
    gamma_hat times H*; H* = (B - mu E*) / ([(beta1-beta10) alpha_hat
    - beta7 gamma_hat] E* - beta9).  The sub-1e-10 residual check is the
    acceptance gate for this derivation.  Feasibility means all components
    strictly positive; beta1 < beta10 yields an infeasible point.
    """
    if p.mu <= 0:
        raise ValueError("endemic equilibrium needs mu > 0")
    dp = derived(p)
    e_star = dp.alpha / dp.a
    den = (dp.a * dp.alpha_hat - p.beta7 * dp.gamma_hat) * e_star - p.beta9
    if den == 0:
        raise InfeasibleError("endemic equilibrium undefined: H* denominator vanishes")
    h_star = (p.B - p.mu * e_star) / den
    state = np.array([e_star, dp.alpha_hat * h_star, dp.beta_hat * h_star,
                      h_star, dp.gamma_hat * h_star])
    return _make_equilibrium(p, state, "endemic")


def r0_reduced(p):
    """Basic reproduction number from the reduced 2x2 infected subsystem.

    R0 = beta1 * B / (alpha * mu + beta10 * B), the spectral radius of the
    reduced next-generation matrix at the disease-free point.
    """
    if p.mu <= 0:
        raise ValueError("R0 needs mu > 0")
    alpha = p.beta2 + p.beta6 + p.beta8 + p.mu
    den = alpha * p.mu + p.beta10 * p.B
    if den <= 0:
        raise InfeasibleError("reduced R0 undefined: alpha*mu + beta10*B vanishes")
    return p.beta1 * p.B / den


def reduced_ngm_matrices(p):
    """The reduced 2x2 new-infection and transition blocks at the disease-free point."""
    e = p.B / p.mu
    alpha = p.beta2 + p.beta6 + p.beta8 + p.mu
    f_m = np.array([[0.0, p.beta10 * e], [0.0, p.beta1 * e]])
    v_m = np.array([[p.mu, p.beta1 * e], [0.0, alpha + p.beta10 * e]])
    return f_m, v_m


def ngm_matrices(p, x):
    """The full 5x5 new-infection matrix F and transition matrix V at state x."""
    e, i, c, h, d = np.asarray(x, dtype=float)
    f = np.zeros((5, 5))
    f[0, 0] = p.beta7 * d + p.beta10 * i
    f[0, 1] = p.beta10 * e
    f[0, 4] = p.beta7 * e
    f[1, 0] = p.beta1 * i
    f[1, 1] = p.beta1 * e
    v = np.array([
        [p.beta1 * i + p.mu, p.beta1 * e, 0.0, -p.beta9, 0.0],
        [p.beta10 * i, p.beta2 + p.beta6 + p.beta8 + p.mu + p.beta10 * e, 0.0, 0.0, 0.0],
        [0.0, -p.beta2, p.beta3 + p.beta5 + p.mu, -p.beta4, 0.0],
        [0.0, -p.beta8, -p.beta3, p.beta4 + p.beta9 + p.mu, 0.0],
        [p.beta7 * d, -p.beta6, -p.beta5, 0.0, p.beta7 * e],
    ])
    return f, v


def minor(a, i, j):
    """Determinant of ``a`` with 1-based row i and column j deleted."""
    m = linalg.as_square(a)
    keep_r = [r for r in range(m.shape[0]) if r != i - 1]
    keep_c = [c for c in range(m.shape[1]) if c != j - 1]
    return determinant(m[np.ix_(keep_r, keep_c)])


@dataclass(frozen=True)
class NgmParts:
    """Next-generation-matrix factors and the transcribed reduction quantities.

    ``detV_closed``, the four minors and a_c..d_c evaluate the published
    closed forms (most plausible reading where the print is ambiguous);
    ``r0`` is always the numeric spectral radius of F V^-1, which is the
    defining property.  Gaps between the two routes are surfaced by the
    transcription-check report, not here.
    """

    F: np.ndarray
    V: np.ndarray
    detV_closed: float
    m11: float
    m12: float
    m21: float
    m22: float
    a_c: float
    b_c: float
    c_c: float
    d_c: float
    delta: float
    r0: float


def detv_closed_form(p, x):
    """Published closed form for det V (verified correct against elimination)."""
    e, i, c, h, d = np.asarray(x, dtype=float)
    dp_beta = p.beta3 + p.beta5 + p.mu
    dp_gamma = p.beta4 + p.beta9 + p.mu
    alpha_l = p.beta10 * e + p.beta8 + p.beta6 + p.beta2 + p.mu
    core = dp_beta * dp_gamma - p.beta3 * p.beta4
    return p.beta7 * e * ((p.beta1 * i + p.mu) * alpha_l * core
                          - p.beta10 * i * p.beta1 * e * core
                          + p.beta10 * i * p.beta9 * (p.beta2 * p.beta3 + dp_beta * p.beta8))


def ngm_minors_closed(p, x):
    """The published minor expressions (m11, m12, m21, m22) of the V factor.

    m11 matches the true minor; m12/m21 are printed as one shared expression
    (m21's value divided by beta7*E) and m22 is printed without the I factor
    on beta1 -- all diffs are reported by the transcription checks.
    """
    e, i, c, h, d = np.asarray(x, dtype=float)
    dp_beta = p.beta3 + p.beta5 + p.mu
    dp_gamma = p.beta4 + p.beta9 + p.mu
    alpha_l = p.beta10 * e + p.beta8 + p.beta6 + p.beta2 + p.mu
    core = dp_beta * dp_gamma - p.beta3 * p.beta4
    m11 = alpha_l * p.beta7 * e * core
    m12 = p.beta1 * e * core - p.beta9 * (p.beta2 * p.beta3 + dp_beta * p.beta8)
    m21 = m12
    m22 = p.beta7 * e * (p.beta1 + p.mu) * core
    return m11, m12, m21, m22


def ngm_full(p, x):
    """Assemble the published F and V and the reduction quantities at state x."""
    f, v = ngm_matrices(p, x)
    det_v = determinant(v)
    if abs(det_v) < 1e-300:
        raise linalg.SingularMatrixError("transition matrix V is singular", abs(det_v))
    e, i, c, h, d = np.asarray(x, dtype=float)
    m11, m12, m21, m22 = ngm_minors_closed(p, x)
    a_c = ((p.beta7 * d + p.beta10 * i) * m11 + p.beta10 * e * m12) / det_v
    b_c = -((p.beta7 * d + p.beta10 * i) * m21 + p.beta10 * e * m22) / det_v
    c_c = -(p.beta1 * i * m11 + p.beta1 * e * m12) / det_v
    d_c = (p.beta1 * i * m21 + p.beta1 * e * m22) / det_v
    delta = (a_c + d_c) ** 2 - 4.0 * (a_c * d_c - b_c * c_c)
    r0 = spectral_radius(f @ inverse(v))
    return NgmParts(F=f, V=v, detV_closed=detv_closed_form(p, x),
                    m11=m11, m12=m12, m21=m21, m22=m22,
                    a_c=a_c, b_c=b_c, c_c=c_c, d_c=d_c, delta=delta, r0=r0)


@dataclass(frozen=True)
class DfeDeterminant:
    closed: float
    numeric: float
    condition_ii: bool
    beta1_gt_beta10: bool

    def to_dict(self):
        return {"closed": self.closed, "numeric": self.numeric,
                "closed_negative": self.closed < 0.0,
                "numeric_negative": self.numeric < 0.0,
                "condition_ii": self.condition_ii,
                "beta1_gt_beta10": self.beta1_gt_beta10}


def det_jp0(p):
    """Disease-free Jacobian determinant: published closed form vs. oracle.

    The closed form is -mu*beta7*beta*E*(2*beta8*a*E + alpha*gamma
    + beta8*beta9 - beta8*alpha) with beta = beta2 + beta5 + mu (the grouping
    the publication uses in this section).  ``numeric`` is the determinant of
    the re-derived Jacobian at the disease-free point; ``condition_ii`` is
    the published sign predicate.
    """
    if p.mu <= 0:
        raise ValueError("needs mu > 0")
    e_star = p.B / p.mu
    a = p.beta1 - p.beta10
    alpha = p.beta2 + p.beta6 + p.beta8 + p.mu
    beta_s = p.beta2 + p.beta5 + p.mu
    gamma = p.beta4 + p.beta9 + p.mu
    bracket = 2.0 * p.beta8 * a * e_star + alpha * gamma + p.beta8 * p.beta9 - p.beta8 * alpha
    closed = -p.mu * p.beta7 * beta_s * e_star * bracket
    numeric = determinant(jacobian_closed(p, dfe(p).state))
    return DfeDeterminant(closed=closed, numeric=numeric,
                          condition_ii=bool(bracket > 0),
                          beta1_gt_beta10=bool(p.beta1 > p.beta10))


def splitting_matrices(p):
    """The M - E splitting of the transcribed disease-free Jacobian.

    M collects the nonnegative couplings, E the diagonal-ish damping; M - E
    reproduces the *published* disease-free Jacobian (including its dropped
    row-5 entries), which is what the splitting cubic is about.
    """
    e_star = p.B / p.mu
    aa = (p.beta1 - p.beta10) * e_star
    alpha = p.beta2 + p.beta6 + p.beta8 + p.mu
    beta_s = p.beta2 + p.beta5 + p.mu
    gamma = p.beta4 + p.beta9 + p.mu
    m = np.array([
        [0.0, 0.0, 0.0, p.beta9, p.beta7 * e_star],
        [0.0, aa, 0.0, 0.0, 0.0],
        [0.0, p.beta2, 0.0, p.beta4, 0.0],
        [0.0, p.beta8, p.beta3, p.beta8, 0.0],
        [0.0, 0.0, 0.0, 0.0, 0.0],
    ])
    e = np.array([
        [p.mu, aa, 0.0, 0.0, 0.0],
        [p.mu, alpha, 0.0, 0.0, 0.0],
        [0.0, 0.0, beta_s, 0.0, 0.0],
        [0.0, 0.0, 0.0, gamma, 0.0],
        [0.0, 0.0, 0.0, 0.0, p.beta7 * e_star],
    ])
    return m, e


@dataclass(frozen=True)
class ChiCubic:
    a1: float
    a2: float
    a3: float
    roots: CubicRoots

    def to_dict(self):
        return {"a1": self.a1, "a2": self.a2, "a3": self.a3,
                "roots": self.roots.to_dict()}


def chi_cubic(p):
    """Published cubic factor coefficients of det(M E^-1 - lambda I).

    With u = -1/(alpha - a), v = 1/(alpha - a) and a = (beta1 - beta10) B/mu:
    a1, a2, a3 exactly as printed.  The numeric characteristic polynomial of
    M E^-1 (two zero eigenvalues plus a cubic) is the oracle the
    transcription checks compare against.
    """
    if p.mu <= 0:
        raise ValueError("needs mu > 0")
    e_star = p.B / p.mu
    aa = (p.beta1 - p.beta10) * e_star
    alpha = p.beta2 + p.beta6 + p.beta8 + p.mu
    beta_s = p.beta2 + p.beta5 + p.mu
    gamma = p.beta4 + p.beta9 + p.mu
    gap = alpha - aa
    if abs(gap) <= 1e-12 * (1.0 + abs(alpha) + abs(aa)):
        raise DegenerateSplittingError("splitting degenerate: alpha equals (beta1-beta10)*B/mu")
    u = -1.0 / gap
    v = 1.0 / gap
    av = aa * v
    a1 = (p.beta9 * p.beta8 / gamma) * u * (av + 1.0) - av - p.beta8 / gamma
    a2 = (p.beta8 / gamma) * av - p.beta3 * p.beta4 / (beta_s * gamma)
    a3 = (p.beta3 * p.beta4 / (beta_s * gamma)) * av
    return ChiCubic(a1=a1, a2=a2, a3=a3, roots=cardano(1.0, a1, a2, a3))


def splitting_char_poly(p):
    """Monic characteristic polynomial coefficients of M E^-1 (numeric oracle)."""
    m, e = splitting_matrices(p)
    me = m @ inverse(e)
    return np.real(np.poly(eigenvalues(me)))


R0_BAND = 1e-9


def _threshold_verdict(r0):
    if r0 < 1.0 - R0_BAND:
        return "stable"
    if r0 > 1.0 + R0_BAND:
        return "unstable"
    return "inconclusive"


def _verdicts_at(p, state):
    j = jacobian_closed(p, state)
    out = {
        "hurwitz": hurwitz_exact(j).to_dict(),
        "li_wang_exact": li_wang_exact(j).to_dict(),
        "li_wang_sufficient": {
            kind.value: li_wang_sufficient(j, kind).to_dict() for kind in MeasureKind
        },
    }
    return out


def stability_report(p):
    """Everything the threshold and compound criteria say about both equilibria.

    Covers: reduced and full R0 with the R0-threshold verdict; the
    unique-disease-free-equilibrium conditions; the disease-free determinant
    sign test; the column-dominance conditions (a)-(d) for the second
    additive compound at the disease-free point, evaluated literally as
    printed even where unsatisfiable; and exact plus sufficient criterion
    verdicts at both equilibria.
    """
    point = dfe(p)
    dp = derived(p)
    r0 = r0_reduced(p)
    parts = ngm_full(p, point.state)
    dj = det_jp0(p)

    e_star = p.B / p.mu
    beta_s = p.beta2 + p.beta5 + p.mu
    cond_a = p.beta3 < beta_s
    cond_b = 2.0 * (p.beta1 - p.beta10) * e_star < p.beta6 + p.mu
    cond_c = p.beta9 < p.beta7 * e_star
    cond_d = p.beta8 + p.beta7 * e_star < p.mu
    j2 = add_compound(jacobian_closed(p, point.state), 2)
    report = {
        "params": p.to_dict(),
        "r0": {
            "reduced": r0,
            "full_dfe": parts.r0,
            "threshold_verdict": _threshold_verdict(r0),
        },
        "unique_dfe_conditions": {
            "beta1_lt_beta10": bool(p.beta1 < p.beta10),
            "alpha_alphahat_lt_beta5_betahat_plus_beta9": bool(
                dp.alpha * dp.alpha_hat < p.beta5 * dp.beta_hat + p.beta9),
        },
        "dfe_determinant": dj.to_dict(),
        "dfe_compound_dominance": {
            "cond_a_beta3_lt_beta2_beta5_mu": bool(cond_a),
            "cond_b_2aE_lt_beta6_mu": bool(cond_b),
            "cond_c_beta9_lt_beta7E": bool(cond_c),
            "cond_d_beta8_beta7E_lt_mu": bool(cond_d),
            "hypotheses_hold": bool(cond_a and cond_b and cond_c and cond_d),
            "compound_column_dominant": dominance(j2, "cols"),
            "compound_diag_negative": bool(np.diag(j2).max() < 0),
        },
        "equilibria": {"dfe": point.to_dict()},
        "verdicts": {"dfe": _verdicts_at(p, point.state)},
    }
    try:
        end = endemic(p)
        report["equilibria"]["endemic"] = end.to_dict()
        report["verdicts"]["endemic"] = _verdicts_at(p, end.state)
    except (InfeasibleError, ArithmeticError) as exc:
        report["equilibria"]["endemic"] = {"error": str(exc)}
    return report
