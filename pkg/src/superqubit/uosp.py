"""uosp(1|2) over CL_N: generators, algebra elements, closed-form group elements.

All matrices are 3x3 over the graded basis (|0>, |1>, |bullet>) with
parities (0, 0, 1).  Generators act in an ambient algebra of order N
(N=2 single party, N=4 two parties); the anticommuting pair used by the
odd generators is selected by `pair`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .grassmann import Supernumber, pair_product
from .supermatrix import Supermatrix, exp_nilpotent, scalar_left

VEC_PARITY = (0, 0, 1)


@dataclass(frozen=True)
class GroupElementParams:
    """Bloch angles plus the real super displacement p.

    alpha = cos(theta), beta = e^(i phi) sin(theta), so |alpha|^2 + |beta|^2 = 1
    holds exactly for any theta, phi.
    """

    theta: float
    phi: float
    p: float

    @property
    def alpha(self) -> complex:
        return complex(math.cos(self.theta))

    @property
    def beta(self) -> complex:
        return complex(math.cos(self.phi), math.sin(self.phi)) * math.sin(self.theta)


def generators(order: int = 2, pair: int = 1):
    """The five generators (A1, A2, A3, Q1, Q2); A's even, Q's odd."""
    z = Supernumber.zero(order)

    def m(rows, parity):
        return Supermatrix(rows, VEC_PARITY, VEC_PARITY, parity, order=order)

    half_i = 0.5j
    a1 = m([[z, half_i, z], [half_i, z, z], [z, z, z]], 0)
    a2 = m([[z, 0.5, z], [-0.5, z, z], [z, z, z]], 0)
    a3 = m([[half_i, z, z], [z, -half_i, z], [z, z, z]], 0)
    q1 = m([[z, z, z], [z, z, -0.5], [-0.5, z, z]], 1)
    q2 = m([[z, z, -0.5], [z, z, z], [z, 0.5, z]], 1)
    return a1, a2, a3, q1, q2


def algebra_element(xi, p: float, order: int = 2, pair: int = 1) -> Supermatrix:
    """xi_1 A1 + xi_2 A2 + xi_3 A3 + zeta Q1 + zeta# Q2 with zeta = p eta."""
    a1, a2, a3, q1, q2 = generators(order, pair)
    zeta = Supernumber.eta(pair, order) * p
    s = scalar_left(xi[0], a1) + scalar_left(xi[1], a2) + scalar_left(xi[2], a3)
    return s + scalar_left(zeta, q1) + scalar_left(zeta.hash(), q2)


def s_matrix(p: float, order: int = 2, pair: int = 1) -> Supermatrix:
    """Closed form of S(2p eta) = exp(2p eta Q1 + 2p eta# Q2).

    [[1 + p^2/2 X, 0,           -p eta# ],
     [0,           1 + p^2/2 X, -p eta  ],
     [p eta,       -p eta#,     1 - p^2 X]]   with X = eta eta#.
    """
    eta = Supernumber.eta(pair, order)
    etah = Supernumber.eta_hash(pair, order)
    x = pair_product(pair, order)
    one = Supernumber.one(order)
    z = Supernumber.zero(order)
    gamma = one + x * (p * p / 2.0)
    rows = [
        [gamma, z, etah * (-p)],
        [z, gamma, eta * (-p)],
        [eta * p, etah * (-p), one - x * (p * p)],
    ]
    return Supermatrix(rows, VEC_PARITY, VEC_PARITY, 0, order=order)


def u_matrix_from_amplitudes(alpha, beta, order: int = 2, tol: float = 1e-12) -> Supermatrix:
    """SU(2) block embedded at the even corner: [[a, -conj(b), 0], [b, conj(a), 0], [0, 0, 1]]."""
    alpha = complex(alpha)
    beta = complex(beta)
    if abs(abs(alpha) ** 2 + abs(beta) ** 2 - 1.0) > tol:
        raise ValueError("amplitudes must satisfy |alpha|^2 + |beta|^2 = 1")
    z = Supernumber.zero(order)
    one = Supernumber.one(order)
    rows = [
        [Supernumber.from_complex(alpha, order), Supernumber.from_complex(-beta.conjugate(), order), z],
        [Supernumber.from_complex(beta, order), Supernumber.from_complex(alpha.conjugate(), order), z],
        [z, z, one],
    ]
    return Supermatrix(rows, VEC_PARITY, VEC_PARITY, 0, order=order)


def u_matrix(theta: float, phi: float, order: int = 2) -> Supermatrix:
    p = GroupElementParams(theta, phi, 0.0)
    return u_matrix_from_amplitudes(p.alpha, p.beta, order)


def group_element(params: GroupElementParams, order: int = 2, pair: int = 1) -> Supermatrix:
    """Z = U(alpha, beta) S(2p eta); superunitary, Z gradeadjoint Z = 1."""
    return u_matrix(params.theta, params.phi, order) @ s_matrix(params.p, order, pair)


def odd_exponent(zeta: Supernumber) -> Supermatrix:
    """zeta Q1 + zeta# Q2 for an arbitrary odd zeta (for exp-law experiments)."""
    order = zeta.order
    _, _, _, q1, q2 = generators(order)
    return scalar_left(zeta, q1) + scalar_left(zeta.hash(), q2)


def exp_odd(zeta: Supernumber) -> Supermatrix:
    """exp(zeta Q1 + zeta# Q2) by the terminating Taylor series."""
    return exp_nilpotent(odd_exponent(zeta))
