"""Transcription checks: published closed forms vs. independent numeric oracles.

Each claim pins one closed-form expression from the source publication
against a numeric oracle computed from the printed ODE systems (pivoted
elimination for determinants and minors, central differences for Jacobians,
eigenvalue-based characteristic polynomials, equilibrium residuals).  A claim
whose worst deviation exceeds its tolerance is ``flagged``; nothing is
repaired silently.

The report is the single place where the known transcription slips are
quantified: the Jacobian entries (2,1), (3,3), (4,4); the dropped row-5
entries of the disease-free Jacobian display; the population-sum identity
(the D compartment carries no -mu*D term); the endemic I*/H* ratio
numerator; the next-generation minor expressions; the splitting-cubic
coefficients; the missing 1/2 on the cubic conjugate-pair roots; one entry
of the 10x10 second-compound display; and the (3,3) entry of the
three-compartment compound display.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import covid, seir
from .compound import add_compound, add_compound2_closed
from .linalg import determinant

MATCH = "match"
FLAGGED = "flagged"


@dataclass(frozen=True)
class ClaimResult:
    claim_id: str
    paper_value: object  # float or nested list at the canonical probe
    oracle_value: object
    max_abs_diff: float
    verdict: str
    note: str = ""

    def to_dict(self):
        d = {
            "claim_id": self.claim_id,
            "paper_value": self.paper_value,
            "oracle_value": self.oracle_value,
            "max_abs_diff": self.max_abs_diff,
            "verdict": self.verdict,
        }
        if self.note:
            d["note"] = self.note
        return d


def _as_value(v):
    if isinstance(v, np.ndarray):
        return [[float(x) for x in row] for row in v]
    return float(v)


def _claim(claim_id, paper, oracle, diff, tol, note=""):
    return ClaimResult(claim_id=claim_id, paper_value=_as_value(paper),
                       oracle_value=_as_value(oracle), max_abs_diff=float(diff),
                       verdict=MATCH if diff <= tol else FLAGGED, note=note)


def _probe_states(rng, count=4):
    states = [np.array([1.0, 0.8, 0.6, 0.4, 0.2])]
    for _ in range(count - 1):
        states.append(rng.uniform(0.05, 3.0, size=5))
    return states


# --- transcribed forms (kept here: only the checks evaluate them) ---

def jacobian_transcribed(p, x):
    """The published general Jacobian display, typos included."""
    e, i, c, h, d = np.asarray(x, dtype=float)
    return np.array([
        [(p.beta10 - p.beta1) * i + p.beta7 * d - p.mu,
         (p.beta10 - p.beta1) * e, 0.0, p.beta9, p.beta7 * e],
        [(p.beta1 - p.beta10) * i + p.beta7 * d - p.mu,
         (p.beta1 - p.beta10) * e - (p.beta2 + p.beta6 + p.beta8 + p.mu),
         0.0, 0.0, 0.0],
        [0.0, p.beta2, -(p.beta2 + p.beta5 + p.mu), p.beta4, 0.0],
        [0.0, p.beta8, p.beta3, p.beta8 - p.beta4 - p.beta9 - p.mu, 0.0],
        [-p.beta7 * d, p.beta6, p.beta5, 0.0, -p.beta7 * e],
    ])


def dfe_jacobian_transcribed(p):
    """The published disease-free Jacobian display (row 5 zeroed except (5,5))."""
    e = p.B / p.mu
    alpha = p.beta2 + p.beta6 + p.beta8 + p.mu
    return np.array([
        [-p.mu, (p.beta10 - p.beta1) * e, 0.0, p.beta9, p.beta7 * e],
        [-p.mu, (p.beta1 - p.beta10) * e - alpha, 0.0, 0.0, 0.0],
        [0.0, p.beta2, -(p.beta2 + p.beta5 + p.mu), p.beta4, 0.0],
        [0.0, p.beta8, p.beta3, p.beta8 - p.beta4 - p.beta9 - p.mu, 0.0],
        [0.0, 0.0, 0.0, 0.0, -p.beta7 * e],
    ])


def alpha_hat_transcribed(p):
    """Published I*/H* ratio: numerator beta3*beta4 + (beta4+beta3+mu)(beta5+beta3+mu)."""
    bc = p.beta5 + p.beta3 + p.mu
    return (p.beta3 * p.beta4 + (p.beta4 + p.beta3 + p.mu) * bc) / (
        p.beta2 * p.beta3 + p.beta8 * bc)


def second_compound5_display(a):
    """The published 10x10 second-compound display for the sparsity pattern
    a13=a23=a24=a25=a31=a35=a41=a45=a54=0 (entries as printed)."""
    z = 0.0
    return np.array([
        [a[0, 0] + a[1, 1], z, z, z, z, -a[0, 3], -a[0, 4], z, z, z],
        [a[2, 1], a[0, 0] + a[2, 2], a[2, 3], a[2, 4], a[0, 1], z, z, -a[0, 3], -a[0, 4], z],
        [a[3, 1], a[3, 2], a[0, 0] + a[3, 3], a[3, 4], z, a[0, 1], z, z, z, -a[0, 4]],
        [a[4, 1], a[4, 2], z, a[0, 0] + a[4, 4], z, z, a[0, 1], z, z, a[0, 3]],
        [z, a[1, 0], z, z, a[1, 1] + a[2, 2], a[2, 3], a[2, 4], z, -a[1, 4], z],
        [z, z, a[1, 0], z, a[3, 2], a[1, 1] + a[3, 3], z, z, z, z],
        [-a[4, 0], z, z, a[1, 0], a[4, 2], z, a[1, 1] + a[4, 4], z, z, z],
        [z, -a[3, 0], z, z, -a[3, 1], a[2, 1], z, a[2, 2] + a[3, 3], z, z],
        [z, -a[4, 0], z, z, -a[4, 1], z, a[2, 1], a[4, 3], a[2, 2] + a[4, 4], a[2, 3]],
        [z, z, -a[4, 0], z, z, -a[4, 1], a[3, 1], -a[4, 2], -a[3, 2], a[3, 3] + a[4, 4]],
    ])


# --- individual claims ---

def claim_sum_identity(p, states):
    diffs, paper, oracle = [], None, None
    for x in states:
        total = float(np.sum(x))
        val = p.B - p.mu * total
        got = covid.sum_rate(p, x)
        if paper is None:
            paper, oracle = val, got
        diffs.append(abs(val - got))
    return _claim("covid_sum_identity_all_compartments", paper, oracle, max(diffs), 1e-9,
                  note="the D equation carries no -mu*D term; sum is B - mu*(E+I+C+H)")


def _entry_claim(claim_id, p, states, i, j, note=""):
    diffs, paper, oracle = [], None, None
    for x in states:
        tv = jacobian_transcribed(p, x)[i, j]
        ov = covid.jacobian_closed(p, x)[i, j]
        if paper is None:
            paper, oracle = tv, ov
        diffs.append(abs(tv - ov))
    return _claim(claim_id, paper, oracle, max(diffs), 1e-9, note=note)


def claim_jacobian_entries(p, states):
    states = [covid.dfe(p).state] + list(states)
    flagged = [
        _entry_claim("covid_jacobian_entry_2_1", p, states, 1, 0,
                     note="df2/dE is (beta1-beta10)*I; the display adds beta7*D - mu"),
        _entry_claim("covid_jacobian_entry_3_3", p, states, 2, 2,
                     note="df3/dC is -(beta3+beta5+mu); the display has beta2 for beta3"),
        _entry_claim("covid_jacobian_entry_4_4", p, states, 3, 3,
                     note="df4/dH is -(beta4+beta9+mu); the display adds beta8"),
    ]
    mask = np.ones((5, 5), dtype=bool)
    for i, j in ((1, 0), (2, 2), (3, 3)):
        mask[i, j] = False
    diffs = [float(abs((jacobian_transcribed(p, x) - covid.jacobian_closed(p, x))[mask]).max())
             for x in states]
    rest = _claim("covid_jacobian_other_entries",
                  jacobian_transcribed(p, states[0]) * mask,
                  covid.jacobian_closed(p, states[0]) * mask,
                  max(diffs), 1e-9)
    return flagged + [rest]


def claim_dfe_jacobian_display(p):
    paper = dfe_jacobian_transcribed(p)
    oracle = covid.jacobian_closed(p, covid.dfe(p).state)
    return _claim("covid_dfe_jacobian_display", paper, oracle,
                  float(abs(paper - oracle).max()), 1e-9,
                  note="display also zeroes entries (5,2) and (5,3), which are beta6 and beta5")


def claim_endemic_ratios(p):
    dp = covid.derived(p)
    out = [
        _claim("covid_endemic_ratio_alpha_hat", alpha_hat_transcribed(p), dp.alpha_hat,
               abs(alpha_hat_transcribed(p) - dp.alpha_hat), 1e-9,
               note="numerator should be (beta3+beta5+mu)(beta4+beta9+mu) - beta3*beta4"),
    ]
    bh_paper = (p.beta8 * p.beta4 + p.beta2 * (p.beta4 + p.beta9 + p.mu)) / (
        p.beta2 * p.beta3 + p.beta8 * (p.beta5 + p.beta3 + p.mu))
    out.append(_claim("covid_endemic_ratio_beta_hat", bh_paper, dp.beta_hat,
                      abs(bh_paper - dp.beta_hat), 1e-9))
    e_star = dp.alpha / dp.a
    gh_paper = (p.beta6 / (p.beta7 * e_star)) * dp.alpha_hat + (p.beta5 / (p.beta7 * e_star)) * dp.beta_hat
    out.append(_claim("covid_endemic_ratio_gamma_hat", gh_paper, dp.gamma_hat,
                      abs(gh_paper - dp.gamma_hat), 1e-9))
    end = covid.endemic(p)
    out.append(_claim("covid_endemic_h_star_convention", end.residual, 0.0,
                      end.residual, 1e-10,
                      note="the printed H* denominator sign satisfies rhs(P*) = 0"))
    return out


def claim_ngm(p, states):
    states = [covid.dfe(p).state] + list(states)
    det_diffs, minor_diffs, r0_diffs = [], {"m11": [], "m12": [], "m21": [], "m22": []}, []
    first = {}
    for x in states:
        parts = covid.ngm_full(p, x)
        det_num = determinant(parts.V)
        det_diffs.append(abs(parts.detV_closed - det_num))
        nums = {key: covid.minor(parts.V, i, j)
                for key, (i, j) in (("m11", (1, 1)), ("m12", (1, 2)),
                                    ("m21", (2, 1)), ("m22", (2, 2)))}
        for key, closed in (("m11", parts.m11), ("m12", parts.m12),
                            ("m21", parts.m21), ("m22", parts.m22)):
            minor_diffs[key].append(abs(closed - nums[key]))
        quad = (parts.a_c + parts.d_c + np.sqrt(complex(parts.delta))) / 2.0
        r0_diffs.append(abs(quad.real - parts.r0))
        if not first:
            first = {"detV": (parts.detV_closed, det_num),
                     "minors": {k: (v, nums[k]) for k, v in
                                (("m11", parts.m11), ("m12", parts.m12),
                                 ("m21", parts.m21), ("m22", parts.m22))},
                     "r0": (quad.real, parts.r0)}
    claims = [_claim("covid_ngm_det_v", first["detV"][0], first["detV"][1],
                     max(det_diffs), 1e-8)]
    notes = {"m11": "", "m12": "printed expression is the (2,1) minor over beta7*E",
             "m21": "printed expression omits the beta7*E factor",
             "m22": "printed factor beta1 + mu should be beta1*I + mu"}
    for key in ("m11", "m12", "m21", "m22"):
        claims.append(_claim(f"covid_ngm_minor_{key}", first["minors"][key][0],
                             first["minors"][key][1], max(minor_diffs[key]), 1e-8,
                             note=notes[key]))
    claims.append(_claim("covid_ngm_r0_quadratic_formula", first["r0"][0], first["r0"][1],
                         max(r0_diffs), 1e-8,
                         note="(a+d+sqrt(delta))/2 from the printed minors vs rho(F V^-1)"))
    return claims


def claim_dfe_determinant(p):
    dj = covid.det_jp0(p)
    return _claim("covid_dfe_jacobian_determinant", dj.closed, dj.numeric,
                  abs(dj.closed - dj.numeric), 1e-8,
                  note="closed form descends from the transcribed Jacobian")


def claim_splitting_cubic(p):
    chi = covid.chi_cubic(p)
    coeffs = covid.splitting_char_poly(p)
    paper = np.array([[chi.a1, chi.a2, chi.a3]])
    oracle = np.array([coeffs[1:4]])
    tail = float(max(abs(coeffs[4]), abs(coeffs[5])))
    diff = float(abs(paper - oracle).max())
    return _claim("covid_splitting_cubic_coefficients", paper, oracle, diff, 1e-8,
                  note=f"char poly of M E^-1 has lambda^2 factor (tail {tail:.2e}); "
                       "printed a1,a2,a3 drop/misplace the beta9 cross terms")


def claim_cubic_conjugate_pair(rng):
    from .stability import cardano
    worst_paper, worst_fixed = 0.0, 0.0
    for _ in range(20):
        a, b, c, d = rng.uniform(-5.0, 5.0, size=4)
        if abs(a) < 0.2:
            a = 1.0
        roots = cardano(a, b, c, d)
        x1, x2, x3 = roots.roots
        s_plus_t = x1 + b / (3.0 * a)
        im = x2 - (-s_plus_t / 2.0 - b / (3.0 * a))  # (i sqrt3 / 2)(S - T)
        x2_paper = -s_plus_t / 2.0 - b / (3.0 * a) + 2.0 * im
        poly = lambda x: a * x ** 3 + b * x ** 2 + c * x + d
        worst_paper = max(worst_paper, abs(poly(x2_paper)))
        worst_fixed = max(worst_fixed, abs(poly(x2)))
    return _claim("cubic_conjugate_pair_half_factor", worst_paper, worst_fixed,
                  abs(worst_paper - worst_fixed), 1e-8,
                  note="printed conjugate roots omit the 1/2 on i*sqrt(3)*(S-T); "
                       "values are worst cubic residuals")


def claim_second_compound5_display(rng):
    a = rng.normal(size=(5, 5))
    for i, j in ((1, 3), (2, 3), (2, 4), (2, 5), (3, 1), (3, 5), (4, 1), (4, 5), (5, 4)):
        a[i - 1, j - 1] = 0.0
    paper = second_compound5_display(a)
    oracle = add_compound2_closed(a)
    return _claim("second_compound_10x10_display", paper, oracle,
                  float(abs(paper - oracle).max()), 1e-12,
                  note="display entry (10,9) prints -a43 where the template has +a43")


def claim_seir_jacobian(sp, rng):
    diffs = []
    first = None
    for _ in range(5):
        x = rng.uniform(0.05, 3.0, size=3)
        tv = seir.jacobian3(sp, x)
        ov = seir.jacobian3_fd(sp, x)
        if first is None:
            first = (tv, ov)
        diffs.append(float(abs(tv - ov).max()))
    return _claim("seir_jacobian", first[0], first[1], max(diffs), 1e-6,
                  note="the printed three-compartment Jacobian is correct")


def claim_seir_compound_display(sp):
    paper = seir.j2_dfe_transcribed(sp)
    oracle = add_compound(seir.jacobian3(sp, seir.dfe3(sp).state), 2)
    return _claim("seir_dfe_compound_display", paper, oracle,
                  float(abs(paper - oracle).max()), 1e-9,
                  note="printed (3,3) omits the beta1*Lambda/mu term")


def claim_seir_endemic_i1(sp):
    end = seir.endemic3(sp)
    s_star = end.state[0]
    i1_paper = (sp.Lambda - sp.mu * s_star) / (sp.mu + sp.d)
    bad = end.state.copy()
    bad[1] = i1_paper
    bad[2] = sp.delta * i1_paper
    res_paper = float(abs(seir.rhs3(sp, bad)).max())
    return _claim("seir_endemic_i1_divisor", i1_paper, end.state[1],
                  abs(i1_paper - end.state[1]), 1e-9,
                  note=f"printed divisor mu+d leaves residual {res_paper:.3e}; "
                       "mu+gamma satisfies the equilibrium equations")


def build_report(p, sp=None, seed=20260809):
    """All transcription claims for one parameter set (and a SEIR set)."""
    if sp is None:
        sp = seir.figure_params()
    rng = np.random.default_rng(seed)
    states = _probe_states(rng)
    claims = []
    claims.append(claim_sum_identity(p, states))
    claims.extend(claim_jacobian_entries(p, states))
    claims.append(claim_dfe_jacobian_display(p))
    claims.extend(claim_endemic_ratios(p))
    claims.extend(claim_ngm(p, states))
    claims.append(claim_dfe_determinant(p))
    claims.append(claim_splitting_cubic(p))
    claims.append(claim_cubic_conjugate_pair(rng))
    claims.append(claim_second_compound5_display(rng))
    claims.append(claim_seir_jacobian(sp, rng))
    claims.append(claim_seir_compound_display(sp))
    claims.append(claim_seir_endemic_i1(sp))
    ids = [c.claim_id for c in claims]
    if len(ids) != len(set(ids)):
        raise RuntimeError("duplicate claim ids in transcription report")
    return claims


def report_to_dicts(claims):
    return [c.to_dict() for c in claims]
