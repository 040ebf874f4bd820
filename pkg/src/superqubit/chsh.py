"""CHSH game played with a shared two-party superqubit resource.

Strategies carry two state displacements, per-setting local displacements
and SU(2) angles for both players.  Evaluation follows the exact
Grassmann path (superstate.measure_real of the locally rotated shared
state).  The optimizer uses a dense vectorized evaluator over the
16-dimensional Grassmann coefficient space, built at import time from
the exact algebra and cross-checked against it in the test suite.

Winning rule: outcomes 1 and bullet both announce bit 1; the players win
when a XOR b = i AND j, each referee question pair weighted 1/4.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .grassmann import Supernumber, modified_rogers
from .superstate import (
    apply_local,
    digits_of,
    ket_parity,
    measure_real,
    upsilon,
)
from .supermatrix import Supermatrix
from .uosp import s_matrix, u_matrix

OUTCOME_LABELS = ("00", "01", "0*", "10", "11", "1*", "*0", "*1", "**")
# outcome in {1, bullet} announces bit 1
WIN_SAME = (0, 4, 5, 7, 8)   # 00, 11, 1*, *1, **
WIN_DIFF = (1, 2, 3, 6)      # 01, 10, 0*, *0
SETTINGS = ((0, 0), (0, 1), (1, 0), (1, 1))

BOX_LIMIT = 0.5


@dataclass(frozen=True)
class Strategy:
    """Full 14-parameter strategy: state displacements p_a, p_b; Alice's
    per-bit displacements r and angle pairs alice; Bob's s and bob."""

    p_a: float = 0.0
    p_b: float = 0.0
    r: tuple[float, float] = (0.0, 0.0)
    s: tuple[float, float] = (0.0, 0.0)
    alice: tuple[tuple[float, float], tuple[float, float]] = ((0.0, 0.0), (0.0, 0.0))
    bob: tuple[tuple[float, float], tuple[float, float]] = ((0.0, 0.0), (0.0, 0.0))

    def to_vector(self) -> list[float]:
        return [
            self.p_a, self.p_b,
            self.r[0], self.r[1], self.s[0], self.s[1],
            self.alice[0][0], self.alice[0][1], self.alice[1][0], self.alice[1][1],
            self.bob[0][0], self.bob[0][1], self.bob[1][0], self.bob[1][1],
        ]

    @staticmethod
    def from_vector(vec) -> "Strategy":
        v = [float(x) for x in vec]
        if len(v) != 14:
            raise ValueError(f"strategy vector needs 14 entries, got {len(v)}")
        return Strategy(
            p_a=v[0], p_b=v[1],
            r=(v[2], v[3]), s=(v[4], v[5]),
            alice=((v[6], v[7]), (v[8], v[9])),
            bob=((v[10], v[11]), (v[12], v[13])),
        )

    def swapped(self) -> "Strategy":
        """Exchange the players' roles (the game matrix is symmetric)."""
        return Strategy(p_a=self.p_b, p_b=self.p_a, r=self.s, s=self.r,
                        alice=self.bob, bob=self.alice)

    @staticmethod
    def tsirelson() -> "Strategy":
        """Quantum strategy reaching cos^2(pi/8): all super parameters zero,
        Alice measures at angles (0, pi/4), Bob at (pi/8, -pi/8)."""
        return Strategy(
            alice=((0.0, 0.0), (math.pi / 4.0, 0.0)),
            bob=((math.pi / 8.0, 0.0), (-math.pi / 8.0, 0.0)),
        )


def local_rotation(displacement: float, theta: float, phi: float,
                   pair: int, order: int = 4) -> Supermatrix:
    """Per-setting group element S(2 r eta) U(theta, phi) on one party's pair."""
    return s_matrix(displacement, order, pair) @ u_matrix(theta, phi, order)


def outcome_probs(i: int, j: int, strat: Strategy) -> list[float]:
    """Nine outcome probabilities for question pair (i, j), exact path."""
    state = upsilon(strat.p_a, strat.p_b)
    za = local_rotation(strat.r[i], strat.alice[i][0], strat.alice[i][1], pair=1)
    zb = local_rotation(strat.s[j], strat.bob[j][0], strat.bob[j][1], pair=2)
    return measure_real(apply_local(state, za, zb))


def win_prob(strat: Strategy) -> float:
    total = 0.0
    for (i, j) in SETTINGS:
        probs = outcome_probs(i, j, strat)
        winners = WIN_DIFF if (i, j) == (1, 1) else WIN_SAME
        total += sum(probs[k] for k in winners)
    return 0.25 * total


def constraint_violation(strat: Strategy, tables=None) -> float:
    """Largest distance of any of the 36 probabilities outside [0, 1],
    plus the total box excess of |p|, |r|, |s| beyond 1/2."""
    if tables is None:
        tables = [outcome_probs(i, j, strat) for (i, j) in SETTINGS]
    worst = 0.0
    for row in tables:
        for p in row:
            worst = max(worst, -p, p - 1.0)
    box = sum(
        max(0.0, abs(x) - BOX_LIMIT)
        for x in (strat.p_a, strat.p_b, *strat.r, *strat.s)
    )
    return max(worst, 0.0) + box


def best_classical_win_prob() -> float:
    """Exhaustive search over the 16 deterministic strategies."""
    best = 0.0
    for a0 in (0, 1):
        for a1 in (0, 1):
            for b0 in (0, 1):
                for b1 in (0, 1):
                    a = (a0, a1)
                    b = (b0, b1)
                    wins = sum(
                        1 for (i, j) in SETTINGS if (a[i] ^ b[j]) == (i & j)
                    )
                    best = max(best, wins / 4.0)
    return best


# -- plain complex-arithmetic reference (no Grassmann code path) ---------------


def _su2(theta: float, phi: float) -> np.ndarray:
    a = math.cos(theta)
    b = cmath.exp(1j * phi) * math.sin(theta)
    return np.array([[a, -b.conjugate()], [b, a]], dtype=complex)


def oracle_outcome_probs(i: int, j: int, strat: Strategy) -> list[float]:
    """Two-qubit reference evaluation: Bell state (|00>+|11>)/sqrt(2) rotated
    by SU(2) x SU(2).  Valid comparison point when all super parameters are
    zero; deliberately shares no code with the Grassmann machinery."""
    ua = _su2(*strat.alice[i])
    ub = _su2(*strat.bob[j])
    amp = (ua @ ub.T) / math.sqrt(2.0)
    out = [0.0] * 9
    for m in range(2):
        for n in range(2):
            out[3 * m + n] = abs(amp[m, n]) ** 2
    return out


def oracle_win_prob(strat: Strategy) -> float:
    total = 0.0
    for (i, j) in SETTINGS:
        probs = oracle_outcome_probs(i, j, strat)
        winners = WIN_DIFF if (i, j) == (1, 1) else WIN_SAME
        total += sum(probs[k] for k in winners)
    return 0.25 * total


# -- vectorized evaluator over the 16 basis monomials of the 4-generator algebra


def _build_kernel_tables():
    """Structure constants, hash action and Rogers weights for the dense
    evaluator, generated from the exact algebra so every sign convention
    is inherited rather than restated.  Products of basis monomials are
    sparse (disjoint masks only), kept as gather/scatter index lists."""
    hperm = np.zeros(16, dtype=np.intp)
    hsign = np.zeros(16)
    w = np.zeros(16)
    for x in range(16):
        ex = Supernumber(4, {x: 1.0})
        ((hm, hc),) = ex.hash().terms().items()
        hperm[x] = hm
        hsign[x] = hc.real
        if bin(x).count("1") % 2 == 0:
            w[x] = modified_rogers(ex)
    xi, yi, sg = [], [], []
    scat = []
    k = np.zeros((16, 16))
    for x in range(16):
        ex = Supernumber(4, {x: 1.0})
        for y in range(16):
            prod = (ex * Supernumber(4, {y: 1.0})).terms()
            for z, c in prod.items():
                xi.append(x)
                yi.append(y)
                sg.append(c.real)
                row = np.zeros(16)
                row[z] = 1.0
                scat.append(row)
                k[x, y] += c.real * w[z]
    return (hperm, hsign, np.array(xi, dtype=np.intp), np.array(yi, dtype=np.intp),
            np.array(sg), np.array(scat), k)


_HPERM, _HSIGN, _XI, _YI, _SG, _SCAT, _K = _build_kernel_tables()

# graded Kronecker sign for entry ((i,k),(j,l)) with parities (0,0,1)
_VP = np.array([0, 0, 1])
_SIGN = np.where((_VP[:, None, None] + _VP[None, :, None]) * _VP[None, None, :] % 2, -1.0, 1.0)

# measurement prefactor per composite outcome: (-1)^|ket| times the
# bra-reordering sign (-1 when both outcomes are bullet)
_PREF = np.array([
    (-1.0 if ket_parity(ix, 2) else 1.0) * (-1.0 if digits_of(ix, 2) == (2, 2) else 1.0)
    for ix in range(9)
])

_NP = _XI.size
_P1 = np.einsum_path(
    "Jklm,jlm->Jjkm",
    np.empty((2, 3, 3, _NP), complex), np.empty((3, 3, _NP), complex),
    optimize="optimal",
)[0]
_P2 = np.einsum_path(
    "ijk,Iijm,Jjkm->IJikm",
    _SIGN, np.empty((2, 3, 3, _NP), complex), np.empty((2, 3, 3, _NP), complex),
    optimize="optimal",
)[0]
_P3 = np.einsum_path(
    "IJix,xy,IJiy->IJi",
    np.empty((2, 2, 9, 16), complex), _K, np.empty((2, 2, 9, 16), complex),
    optimize="optimal",
)[0]


def _z_array(p: float, theta: float, phi: float, pair: int) -> np.ndarray:
    """Dense [3,3,16] coefficients of S(2 p eta) U(theta, phi) on one pair."""
    a = math.cos(theta)
    b = cmath.exp(1j * phi) * math.sin(theta)
    e1, e2 = (1, 2) if pair == 1 else (4, 8)
    ex = e1 | e2
    z = np.zeros((3, 3, 16), dtype=complex)
    half = 0.5 * p * p
    for (row, col), c in (((0, 0), a), ((0, 1), -b.conjugate()),
                          ((1, 0), b), ((1, 1), a)):
        z[row, col, 0] = c
        z[row, col, ex] = c * half
    z[0, 2, e2] = -p
    z[1, 2, e1] = -p
    z[2, 0, e1] = p * a
    z[2, 0, e2] = -p * b
    z[2, 1, e1] = -p * b.conjugate()
    z[2, 1, e2] = -p * a
    z[2, 2, 0] = 1.0
    z[2, 2, ex] = -p * p
    return z


def _upsilon_right(pa: float, pb: float) -> np.ndarray:
    """Right coordinates of the shared state as a dense [3,3,16] array
    indexed (Alice digit, Bob digit, monomial mask)."""
    v = np.zeros((3, 3, 16), dtype=complex)
    c = 1.0 / math.sqrt(2.0)
    ha, hb = 0.5 * pa * pa, 0.5 * pb * pb
    for d in (0, 1):
        v[d, d, 0] = c
        v[d, d, 3] = c * ha
        v[d, d, 12] = c * hb
        v[d, d, 15] = c * ha * hb
    v[1, 2, 4] = -pb
    v[1, 2, 7] = -pb * ha
    v[2, 1, 1] = -pa
    v[2, 1, 13] = -pa * hb
    v[2, 2, 5] = -pa * pb
    return v


def _fast_tables(vec: np.ndarray) -> np.ndarray:
    """All four 9-outcome probability tables (rows ordered 00, 01, 10, 11)."""
    pa, pb, r0, r1, s0, s1, ta0, fa0, ta1, fa1, tb0, fb0, tb1, fb1 = vec
    v = _upsilon_right(pa, pb)
    a = np.stack((_z_array(r0, ta0, fa0, 1), _z_array(r1, ta1, fa1, 1)))
    b = np.stack((_z_array(s0, tb0, fb0, 2), _z_array(s1, tb1, fb1, 2)))
    # w1[J,j,k] = sum_l b_kl * v_jl per Bob setting J (algebra product via
    # gather over nonzero mask pairs, then scatter back to 16 coefficients)
    e1 = np.einsum("Jklm,jlm->Jjkm", b[..., _XI], v[..., _YI], optimize=_P1)
    w1 = (e1 * _SG) @ _SCAT
    # res[I,J,i,k] = sum_j koszul(i,j,k) a_ij * w1_jk per Alice setting I
    e2 = np.einsum("ijk,Iijm,Jjkm->IJikm", _SIGN, a[..., _XI], w1[..., _YI],
                   optimize=_P2)
    res = ((e2 * _SG) @ _SCAT).reshape(2, 2, 9, 16)
    resh = np.zeros_like(res)
    resh[..., _HPERM] = _HSIGN * np.conj(res)
    probs = np.einsum("IJix,xy,IJiy->IJi", res, _K, resh, optimize=_P3).real
    return (probs * _PREF).reshape(4, 9)


def fast_outcome_tables(strat: Strategy) -> np.ndarray:
    """Vectorized counterpart of outcome_probs for all four settings."""
    return _fast_tables(np.asarray(strat.to_vector(), dtype=float))


def _pwin_from_tables(t) -> float:
    return 0.25 * (
        sum(t[0][k] for k in WIN_SAME)
        + sum(t[1][k] for k in WIN_SAME)
        + sum(t[2][k] for k in WIN_SAME)
        + sum(t[3][k] for k in WIN_DIFF)
    )


def _table_violation(t: np.ndarray) -> float:
    return max(0.0, float(np.max(-t)), float(np.max(t - 1.0)))


# -- seeded multi-start maximization -------------------------------------------


@dataclass(frozen=True)
class OptimizeConfig:
    seed: int = 0
    restarts: int = 200
    max_iters: int = 2000
    penalty_weight: float = 1000.0
    tolerance: float = 1e-9
    quantum_only: bool = False


@dataclass(frozen=True)
class OptimizationResult:
    strategy: Strategy
    p_win: float
    violation: float
    tables: tuple[tuple[float, ...], ...]
    feasible: bool
    seed: int
    restarts: int
    iterations: int
    best_restart: int


def _embed(x: np.ndarray, quantum_only: bool) -> np.ndarray:
    if not quantum_only:
        return np.array(x, dtype=float)
    full = np.zeros(14)
    full[6:] = x
    return full


def _objective(penalty: float, quantum_only: bool):
    def f(x):
        vec = _embed(x, quantum_only)
        vec[:6] = np.clip(vec[:6], -BOX_LIMIT, BOX_LIMIT)
        t = _fast_tables(vec)
        v = _table_violation(t)
        return -(_pwin_from_tables(t) - penalty * v * v)
    return f


def _penalty_schedule(config: OptimizeConfig):
    """Quadratic penalties leave a residual violation of order
    (multiplier / weight), so each restart polishes with a much stiffer
    weight to push the residual below the feasibility tolerance."""
    polish = max(200, config.max_iters // 4)
    stiff = max(config.penalty_weight * 1e6, 1e9)
    return ((config.penalty_weight, config.max_iters), (stiff, polish))


def optimize(config: OptimizeConfig = OptimizeConfig()) -> OptimizationResult:
    """Multi-start Nelder-Mead maximization of win_prob - penalty * violation^2.

    Restart k draws its start from SeedSequence([seed, k]) so the result
    is reproducible for a fixed master seed no matter how restarts are
    scheduled; ties between equal-value feasible restarts go to the lower
    restart index.  Returns the best feasible point, or an explicit
    infeasible result (feasible=False) when no restart meets tolerance.
    """
    total_iters = 0
    best = None       # (p_win, restart index, vector)
    fallback = None   # (violation, restart index, vector)
    for rix in range(config.restarts):
        rng = np.random.default_rng(np.random.SeedSequence([config.seed, rix]))
        if config.quantum_only:
            x = rng.uniform(-math.pi, math.pi, 8)
        else:
            x = np.concatenate([
                rng.uniform(-BOX_LIMIT, BOX_LIMIT, 6),
                rng.uniform(-math.pi, math.pi, 8),
            ])
        if config.max_iters > 0:
            for penalty, iters in _penalty_schedule(config):
                res = minimize(
                    _objective(penalty, config.quantum_only), x,
                    method="Nelder-Mead",
                    options={
                        "maxiter": iters,
                        "maxfev": 10 * iters + 200,
                        "xatol": 1e-11,
                        "fatol": 1e-13,
                        "adaptive": True,
                    },
                )
                x = res.x
                total_iters += int(res.nit)
        vec = _embed(x, config.quantum_only)
        vec[:6] = np.clip(vec[:6], -BOX_LIMIT, BOX_LIMIT)
        t = _fast_tables(vec)
        pwin = _pwin_from_tables(t)
        viol = _table_violation(t)
        if viol <= config.tolerance and (best is None or pwin > best[0]):
            best = (pwin, rix, vec)
        if fallback is None or viol < fallback[0]:
            fallback = (viol, rix, vec)
    if best is not None:
        _, rix, vec = best
        feasible = True
    else:
        _, rix, vec = fallback
        feasible = False
    strat = Strategy.from_vector(vec)
    # report through the exact path: the fast kernel only steers the search
    tables = tuple(tuple(outcome_probs(i, j, strat)) for (i, j) in SETTINGS)
    pwin = _pwin_from_tables(tables)
    viol = constraint_violation(strat, tables)
    return OptimizationResult(
        strategy=strat, p_win=pwin, violation=viol, tables=tables,
        feasible=feasible, seed=config.seed, restarts=config.restarts,
        iterations=total_iters, best_restart=rix,
    )
