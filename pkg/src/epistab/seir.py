"""Three-compartment example system: susceptibles and a two-stage infection.

    S'  = Lambda - (beta1 I1 + beta2 I2) S - mu S
    I1' = (beta1 I1 + beta2 I2) S - (mu + gamma) I1
    I2' = gamma I1 - (mu + d) I2

R0 comes from the 2x2 next-generation factors; the endemic point follows
from I2 = delta I1 with delta = gamma/(mu+d) and S* = (mu+gamma)/(beta1 +
beta2 delta).  The stability report applies the compound-matrix criterion to
the endemic Jacobian after the diagonal similarity P = diag(I2*, I1*, S*).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields

import numpy as np

from .compound import add_compound
from .covid import Equilibrium, InfeasibleError
from .linalg import determinant, eigenvalues, inverse
from .lozinskii import MeasureKind, measure
from .stability import dominance, hurwitz_exact, li_wang_exact, li_wang_sufficient

RESIDUAL_RTOL = 1e-10

SEIR_KEYS = ("Lambda", "beta1", "beta2", "mu", "gamma", "d")


@dataclass(frozen=True)
class SeirParams:
    Lambda: float
    beta1: float
    beta2: float
    mu: float
    gamma: float
    d: float

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if not math.isfinite(v) or v < 0:
                raise ValueError(f"parameter {f.name} must be finite and >= 0, got {v}")

    @property
    def delta(self):
        return self.gamma / (self.mu + self.d)

    @classmethod
    def from_dict(cls, d):
        missing = [k for k in SEIR_KEYS if k not in d]
        if missing:
            raise ValueError(f"missing parameters: {', '.join(missing)}")
        extra = [k for k in d if k not in SEIR_KEYS]
        if extra:
            raise ValueError(f"unknown parameters: {', '.join(sorted(extra))}")
        return cls(**{k: float(d[k]) for k in SEIR_KEYS})

    def to_dict(self):
        return {k: getattr(self, k) for k in SEIR_KEYS}

    def replace(self, **kw):
        d = self.to_dict()
        d.update(kw)
        return SeirParams(**d)


def figure_params(mu=0.1):
    """The parameter set used for the R0-vs-mu curves."""
    return SeirParams(Lambda=0.7, beta1=0.3, beta2=0.8, mu=float(mu), gamma=0.1, d=0.04)


def rhs3(p, x):
    """Right-hand side; broadcasts over leading axes of x (..., 3)."""
    x = np.asarray(x, dtype=float)
    s, i1, i2 = (x[..., k] for k in range(3))
    force = (p.beta1 * i1 + p.beta2 * i2) * s
    return np.stack([
        p.Lambda - force - p.mu * s,
        force - (p.mu + p.gamma) * i1,
        p.gamma * i1 - (p.mu + p.d) * i2,
    ], axis=-1)


def jacobian3(p, x):
    """Jacobian of :func:`rhs3` (the printed form, which checks out against FD)."""
    s, i1, i2 = np.asarray(x, dtype=float)
    force = p.beta1 * i1 + p.beta2 * i2
    return np.array([
        [-force - p.mu, -p.beta1 * s, -p.beta2 * s],
        [force, p.beta1 * s - p.mu - p.gamma, p.beta2 * s],
        [0.0, p.gamma, -p.mu - p.d],
    ])


def jacobian3_fd(p, x, h=1e-6):
    x = np.asarray(x, dtype=float)
    cols = []
    for j in range(3):
        dx = np.zeros(3)
        dx[j] = h
        cols.append((rhs3(p, x + dx) - rhs3(p, x - dx)) / (2.0 * h))
    return np.stack(cols, axis=-1)


def r0_seir(p):
    """R0 = Lambda*(beta1*(mu+d) + beta2*gamma) / (mu*(mu+d)*(mu+gamma))."""
    if p.mu <= 0:
        raise ValueError("R0 needs mu > 0")
    return p.Lambda * (p.beta1 * (p.mu + p.d) + p.beta2 * p.gamma) / (
        p.mu * (p.mu + p.d) * (p.mu + p.gamma))


def seir_ngm_matrices(p):
    """The printed next-generation factors; R0 is the spectral radius of -F V^-1."""
    f = np.array([[p.beta1 * p.Lambda / p.mu, p.beta2 * p.Lambda / p.mu], [0.0, 0.0]])
    v = np.array([[-p.mu - p.gamma, 0.0], [p.gamma, -p.mu - p.d]])
    return f, v


def dfe3(p):
    if p.mu <= 0:
        raise ValueError("needs mu > 0")
    state = np.array([p.Lambda / p.mu, 0.0, 0.0])
    return _equilibrium3(p, state, "dfe")


def endemic3(p):
    """Endemic point: I2 = delta I1, S* = (mu+gamma)/(beta1+beta2*delta).

    I1* solves the S-equation: I1* = (Lambda - mu S*)/(mu + gamma).  (The
    transcribed divisor mu + d fails the residual gate; the checks report
    the gap.)  Feasible iff Lambda*(beta1+beta2*delta) - mu*(mu+gamma) > 0.
    """
    den = p.beta1 + p.beta2 * p.delta
    if den <= 0:
        raise InfeasibleError("endemic point undefined: beta1 + beta2*delta vanishes")
    s_star = (p.mu + p.gamma) / den
    i1_star = (p.Lambda - p.mu * s_star) / (p.mu + p.gamma)
    i2_star = p.delta * i1_star
    return _equilibrium3(p, np.array([s_star, i1_star, i2_star]), "endemic")


def _equilibrium3(p, state, kind):
    residual = float(abs(rhs3(p, state)).max())
    gate = RESIDUAL_RTOL * (1.0 + float(abs(state).max()))
    if residual >= gate:
        raise ArithmeticError(f"{kind} residual {residual:.3e} exceeds gate {gate:.3e}")
    return Equilibrium(np.asarray(state, dtype=float), kind,
                       feasible=bool((np.asarray(state) > 0).all()),
                       residual=residual)


def j2_dfe_transcribed(p):
    """The published second additive compound at the disease-free point.

    Its (3,3) entry omits the beta1*Lambda/mu term; the transcription checks
    quantify the gap against ``add_compound(jacobian3(.), 2)``.
    """
    q = p.Lambda / p.mu
    return np.array([
        [p.beta1 * q - 2.0 * p.mu - p.gamma, p.beta2 * q, p.beta2 * q],
        [p.gamma, -2.0 * p.mu - p.d, -p.beta1 * q],
        [0.0, 0.0, -2.0 * p.mu - p.gamma - p.d],
    ])


def endemic_conditions(p):
    """The three positivity/dominance hypotheses for endemic stability.

    c1: beta2 < gamma/delta^2;
    c2: (mu+gamma)(mu+d)(beta1+beta2*delta) / (Lambda*(beta1+beta2*delta)
        - mu*(mu+gamma)) + beta1*(mu+gamma)/(beta1+beta2*delta)
        < d + gamma + 2 mu;
    c3: beta2*delta*Lambda + mu*(gamma+mu) < beta1*Lambda.
    """
    dl = p.delta
    den = p.beta1 + p.beta2 * dl
    feas_num = p.Lambda * den - p.mu * (p.mu + p.gamma)
    c1 = bool(dl > 0 and p.beta2 < p.gamma / dl ** 2)
    if feas_num > 0:
        lhs = ((p.mu + p.gamma) * (p.mu + p.d) * den / feas_num
               + p.beta1 * (p.mu + p.gamma) / den)
        c2 = bool(lhs < p.d + p.gamma + 2.0 * p.mu)
    else:
        c2 = False
    c3 = bool(p.beta2 * dl * p.Lambda + p.mu * (p.gamma + p.mu) < p.beta1 * p.Lambda)
    return {"c1_beta2_lt_gamma_over_delta_sq": c1,
            "c2_compound_row_sums_negative": c2,
            "c3_det_negative": c3}


def seir_stability(p):
    """Stability report at the endemic point via the similarity-transformed compound.

    Builds J at the endemic point (cross-checked against finite differences
    by the test-suite), its second additive compound, the diagonal
    similarity P = diag(I2*, I1*, S*), and evaluates the three endemic
    conditions, row dominance of P J^[2] P^-1, the Jacobian determinant
    sign, and the exact criteria.
    """
    end = endemic3(p)
    s_star, i1_star, i2_star = end.state
    j = jacobian3(p, end.state)
    j2 = add_compound(j, 2)
    pmat = np.diag([i2_star, i1_star, s_star])
    transformed = pmat @ j2 @ inverse(pmat)
    det_j = determinant(j)
    return {
        "params": p.to_dict(),
        "r0": r0_seir(p),
        "equilibria": {"dfe": dfe3(p).to_dict(), "endemic": end.to_dict()},
        "conditions": endemic_conditions(p),
        "transformed_compound": {
            "row_dominant": dominance(transformed, "rows"),
            "diag_negative": bool(np.diag(transformed).max() < 0),
            "measure_inf": measure(transformed, MeasureKind.INF),
        },
        "det_endemic_jacobian": det_j,
        "verdicts": {
            "endemic": {
                "hurwitz": hurwitz_exact(j).to_dict(),
                "li_wang_exact": li_wang_exact(j).to_dict(),
                "li_wang_sufficient": {
                    kind.value: li_wang_sufficient(j, kind).to_dict()
                    for kind in MeasureKind
                },
            }
        },
    }


def similarity_eigencheck(p):
    """Max eigenvalue displacement under the diagonal similarity (test oracle)."""
    end = endemic3(p)
    s_star, i1_star, i2_star = end.state
    j2 = add_compound(jacobian3(p, end.state), 2)
    pmat = np.diag([i2_star, i1_star, s_star])
    ev1 = np.sort_complex(eigenvalues(j2))
    ev2 = np.sort_complex(eigenvalues(pmat @ j2 @ inverse(pmat)))
    return float(abs(ev1 - ev2).max())
