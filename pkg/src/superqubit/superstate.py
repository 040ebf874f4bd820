"""Superqubit states: graded inner products, transition probabilities, measurement.

A k-party state (k in {1, 2}) stores 3^k Supernumber coefficients over
the product basis kets (m_1 ... m_k), m in {0, 1, bullet}, in
lexicographic order with digit values 0, 1, 2(=bullet).  Coefficients
are stored in left-pulled normal form: state = sum_I c_I |I>.  The
right coordinates (the column-supervector entries) differ by the sign
picked up when an odd coefficient part crosses an odd ket.

Valid states are even: every coefficient is homogeneous of the same
parity as its basis ket.
"""

from __future__ import annotations

import math

from .grassmann import (
    DimensionMismatch,
    ParityError,
    Supernumber,
    modified_rogers,
    pair_product,
)
from .supermatrix import Supermatrix, graded_kron
from .uosp import VEC_PARITY, s_matrix, u_matrix

BULLET = "•"
DIGIT_LABELS = ("0", "1", BULLET)
DIGIT_PARITY = (0, 0, 1)


def digits_of(index: int, parties: int) -> tuple[int, ...]:
    """Base-3 digits of a basis index, most significant party first."""
    out = []
    for _ in range(parties):
        out.append(index % 3)
        index //= 3
    return tuple(reversed(out))


def index_of(label: str) -> int:
    """Basis index from a label like '1' or '0•' ('*' also means bullet)."""
    label = label.strip()
    if not label:
        raise ValueError("empty basis label")
    idx = 0
    for ch in label:
        if ch in ("*", BULLET):
            d = 2
        elif ch in ("0", "1"):
            d = int(ch)
        else:
            raise ValueError(f"bad basis label {label!r}")
        idx = idx * 3 + d
    return idx


def label_of(index: int, parties: int, ascii_bullet: bool = False) -> str:
    marks = ("0", "1", "*" if ascii_bullet else BULLET)
    return "".join(marks[d] for d in digits_of(index, parties))


def ket_parity(index: int, parties: int) -> int:
    return sum(DIGIT_PARITY[d] for d in digits_of(index, parties)) % 2


def _flip_odd(c: Supernumber) -> Supernumber:
    """Sign flip of the odd part: the left<->right coefficient conversion
    for an odd basis ket (involutive)."""
    return c.even_part() - c.odd_part()


def metric_sign(index: int, parties: int) -> int:
    """Diagonal metric: +1 everywhere except -1 at the two-party |••>."""
    if parties == 2 and digits_of(index, 2) == (2, 2):
        return -1
    return 1


def _kappa(index: int, parties: int) -> int:
    """Bra-reordering sign in the measurement rule: counts bullet outcomes o
    and contributes (-1)^(o(o-1)/2); -1 exactly for the two-party |••>."""
    o = sum(1 for d in digits_of(index, parties) if d == 2)
    return -1 if (o * (o - 1) // 2) % 2 else 1


class SuperState:
    """Immutable k-party superqubit state with left-pulled coefficients."""

    __slots__ = ("parties", "order", "pairs", "_left")

    def __init__(self, coeffs, parties: int, pairs=None, order=None, validate: bool = True):
        if parties not in (1, 2):
            raise ValueError("only 1 or 2 parties are supported")
        coeffs = list(coeffs)
        if len(coeffs) != 3 ** parties:
            raise DimensionMismatch(f"need {3 ** parties} coefficients, got {len(coeffs)}")
        if pairs is None:
            pairs = tuple(range(1, parties + 1))
        pairs = tuple(int(x) for x in pairs)
        if len(pairs) != parties:
            raise ValueError("one generator pair per party")
        if order is None:
            order = next((c.order for c in coeffs if isinstance(c, Supernumber)), 2 * parties)
        cs = tuple(
            c if isinstance(c, Supernumber) else Supernumber.from_complex(c, order)
            for c in coeffs
        )
        if any(c.order != order for c in cs):
            raise DimensionMismatch("mixed algebra orders in one state")
        if validate:
            for i, c in enumerate(cs):
                if c.is_zero(0.0):
                    continue
                if c.parity() != ket_parity(i, parties):
                    raise ParityError(
                        f"coefficient of |{label_of(i, parties)}> has parity "
                        f"{c.parity()}, ket needs {ket_parity(i, parties)}"
                    )
        object.__setattr__(self, "parties", parties)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "pairs", pairs)
        object.__setattr__(self, "_left", cs)

    def __setattr__(self, name, value):
        raise AttributeError("SuperState is immutable")

    @staticmethod
    def from_right(coeffs, parties: int, pairs=None, order=None, validate: bool = True) -> "SuperState":
        coeffs = list(coeffs)
        left = [
            _flip_odd(c) if ket_parity(i, parties) else c
            for i, c in enumerate(coeffs)
        ]
        return SuperState(left, parties, pairs=pairs, order=order, validate=validate)

    @staticmethod
    def basis_state(label: str, parties: int, pairs=None, order=None) -> "SuperState":
        if order is None:
            order = 2 * parties
        idx = index_of(label)
        coeffs = [Supernumber.zero(order) for _ in range(3 ** parties)]
        coeffs[idx] = Supernumber.one(order)
        return SuperState(coeffs, parties, pairs=pairs, order=order, validate=False)

    # -- coefficient access --------------------------------------------------

    def left_coefficient(self, index) -> Supernumber:
        if isinstance(index, str):
            index = index_of(index)
        return self._left[index]

    def right_coefficient(self, index) -> Supernumber:
        if isinstance(index, str):
            index = index_of(index)
        c = self._left[index]
        return _flip_odd(c) if ket_parity(index, self.parties) else c

    def left_coefficients(self) -> tuple[Supernumber, ...]:
        return self._left

    def right_coefficients(self) -> tuple[Supernumber, ...]:
        return tuple(self.right_coefficient(i) for i in range(3 ** self.parties))

    def is_valid(self) -> bool:
        try:
            SuperState(self._left, self.parties, self.pairs, self.order, validate=True)
        except ParityError:
            return False
        return True

    def __mul__(self, z):
        return SuperState([c * z for c in self._left], self.parties, self.pairs,
                          self.order, validate=False)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, SuperState):
            return NotImplemented
        if (self.parties, self.order, self.pairs) != (other.parties, other.order, other.pairs):
            return False
        return all(a == b for a, b in zip(self._left, other._left))

    __hash__ = None

    def __str__(self):
        parts = []
        for i, c in enumerate(self._left):
            if c.is_zero(0.0):
                continue
            parts.append(f"({c})|{label_of(i, self.parties)}>")
        return " + ".join(parts) if parts else "0"

    def swap_parties(self) -> "SuperState":
        """Exchange the two parties: kets reordered with the graded swap sign."""
        if self.parties != 2:
            raise ValueError("swap_parties needs a two-party state")
        out = [None] * 9
        for i in range(9):
            m, n = digits_of(i, 2)
            sign = -1 if DIGIT_PARITY[m] and DIGIT_PARITY[n] else 1
            out[n * 3 + m] = self._left[i] * sign
        return SuperState(out, 2, pairs=self.pairs[::-1], order=self.order, validate=False)


# -- constructors -------------------------------------------------------------


def superqubit(p: float, theta: float, phi: float, order: int = 2, pair: int = 1) -> SuperState:
    """Pure superqubit S(2p eta) U(alpha, beta) |0>."""
    z = s_matrix(p, order, pair) @ u_matrix(theta, phi, order)
    right = [z[i, 0] for i in range(3)]
    return SuperState.from_right(right, 1, pairs=(pair,), order=order)


def upsilon(p_a: float, p_b: float, order: int = 4) -> SuperState:
    """The shared two-party resource state (entangled superqubit pair).

    Left-pulled coefficients: G_A G_B/sqrt(2) on |00> and |11>,
    p_B eta_B G_A on |1•>, p_A eta_A G_B on |•1>, -p_A p_B eta_A eta_B
    on |••>, where G_i = 1 + p_i^2/2 eta_i eta_i#.
    """
    eta_a = Supernumber.eta(1, order)
    eta_b = Supernumber.eta(2, order)
    g_a = Supernumber.one(order) + pair_product(1, order) * (p_a * p_a / 2.0)
    g_b = Supernumber.one(order) + pair_product(2, order) * (p_b * p_b / 2.0)
    zero = Supernumber.zero(order)
    inv_sqrt2 = 1.0 / math.sqrt(2.0)
    coeffs = [zero] * 9
    coeffs[index_of("00")] = g_a * g_b * inv_sqrt2
    coeffs[index_of("11")] = g_a * g_b * inv_sqrt2
    coeffs[index_of("1*")] = eta_b * g_a * p_b
    coeffs[index_of("*1")] = eta_a * g_b * p_a
    coeffs[index_of("**")] = eta_a * eta_b * (-p_a * p_b)
    return SuperState(coeffs, 2, pairs=(1, 2), order=order)


def tensor(a: SuperState, b: SuperState) -> SuperState:
    """Graded tensor product of two single-party states on disjoint pairs."""
    if a.parties != 1 or b.parties != 1:
        raise ValueError("tensor combines two single-party states")
    if a.order != b.order:
        raise DimensionMismatch("algebra orders differ")
    if set(a.pairs) & set(b.pairs):
        raise ValueError(f"overlapping generator pairs {a.pairs} and {b.pairs}")
    out = []
    for m in range(3):
        am = a.right_coefficient(m)
        for n in range(3):
            # move the a-coefficient past the b-ket: odd parts pick up (-1)^|n|
            left_factor = _flip_odd(am) if DIGIT_PARITY[n] else am
            out.append(left_factor * b.right_coefficient(n))
    return SuperState.from_right(out, 2, pairs=a.pairs + b.pairs, order=a.order)


# -- inner product and probabilities ------------------------------------------


def inner_product(u: SuperState, v: SuperState) -> Supernumber:
    """<u|v> = sum_J hash(u^J) v^J g_J over right coordinates."""
    if (u.parties, u.order, u.pairs) != (v.parties, v.order, v.pairs):
        raise DimensionMismatch("states live in different spaces")
    acc = Supernumber.zero(u.order)
    for i in range(3 ** u.parties):
        t = u.right_coefficient(i).hash() * v.right_coefficient(i)
        acc = acc + (t * metric_sign(i, u.parties))
    return acc


def norm_supernumber(u: SuperState) -> Supernumber:
    return inner_product(u, u)


def grassmann_transition(u: SuperState, v: SuperState) -> Supernumber:
    """p_G(u, v) = <u|v> hash(<u|v>): even, hash-invariant."""
    s = inner_product(u, v)
    return s * s.hash()


def transition_real(u: SuperState, v: SuperState):
    return modified_rogers(grassmann_transition(u, v))


def grassmann_outcomes(state: SuperState) -> list[Supernumber]:
    """Grassmann-valued measurement probabilities, one per basis ket.

    p_G(I) = (-1)^|I| kappa_I x_I hash(x_I) with x_I the right coordinate;
    the diagonal metric signs square away.  Their sum is exactly 1 for a
    normalized valid state.
    """
    out = []
    for i in range(3 ** state.parties):
        x = state.right_coefficient(i)
        t = x * x.hash()
        sign = _kappa(i, state.parties)
        if ket_parity(i, state.parties):
            sign = -sign
        out.append(t * sign)
    return out


def measure_real(state: SuperState) -> list[float]:
    """Real outcome probabilities via the modified Rogers norm."""
    return [modified_rogers(t) for t in grassmann_outcomes(state)]


# -- rotations ----------------------------------------------------------------


def apply(state: SuperState, z: Supermatrix) -> SuperState:
    """Act with a 3x3 even group element on a single-party state."""
    if state.parties != 1:
        raise ValueError("apply takes a single-party state; use apply_local for two")
    col = Supermatrix.column(state.right_coefficients(), VEC_PARITY, 0, order=state.order)
    res = z @ col
    return SuperState.from_right([res[i, 0] for i in range(3)], 1,
                                 pairs=state.pairs, order=state.order, validate=False)


def apply_local(state: SuperState, z_a: Supermatrix, z_b: Supermatrix) -> SuperState:
    """Act with Z_A (x) Z_B on a two-party state."""
    if state.parties != 2:
        raise ValueError("apply_local needs a two-party state")
    m = graded_kron(z_a, z_b)
    par = tuple(ket_parity(i, 2) for i in range(9))
    col = Supermatrix.column(state.right_coefficients(), par, 0, order=state.order)
    res = m @ col
    return SuperState.from_right([res[i, 0] for i in range(9)], 2,
                                 pairs=state.pairs, order=state.order, validate=False)


def density_matrix(state: SuperState) -> Supermatrix:
    """|psi><psi| as an even supermatrix; its supertrace equals <psi|psi>."""
    n = 3 ** state.parties
    par = tuple(ket_parity(i, state.parties) for i in range(n))
    right = state.right_coefficients()
    ket = Supermatrix.column(right, par, 0, order=state.order)
    bra_entries = [right[i].hash() * metric_sign(i, state.parties) for i in range(n)]
    bra = Supermatrix.row(bra_entries, par, 0, order=state.order)
    return ket @ bra


def bra_coefficients(state: SuperState) -> tuple[Supernumber, ...]:
    """Row-supervector entries of the corresponding bra."""
    right = state.right_coefficients()
    return tuple(right[i].hash() * metric_sign(i, state.parties)
                 for i in range(3 ** state.parties))


# -- physicality and compactification -----------------------------------------


def compactify(p: float) -> float:
    """Map the super displacement onto the fundamental window [-1/2, 1/2)."""
    if not math.isfinite(p):
        raise ValueError("displacement must be finite")
    t = p / (2.0 * math.pi)
    c = t - math.floor(t) - 0.5
    # the fractional part of a tiny negative t rounds up to exactly 1.0;
    # fold that boundary case back onto the lower edge of the window
    return -0.5 if c >= 0.5 else c


def is_physical(p: float) -> bool:
    return abs(p) <= 0.5


def physical_pair(p: float, q: float) -> tuple[bool, bool]:
    """(s1, s2) membership: s1 = {|p-q|<=1 and |p+q|<=1}, s2 = {|p|,|q| <= 1/2}."""
    s1 = abs(p - q) <= 1.0 and abs(p + q) <= 1.0
    s2 = abs(p) <= 0.5 and abs(q) <= 0.5
    return s1, s2


# -- serialization --------------------------------------------------------------


def state_to_text(state: SuperState) -> str:
    """Structured text record: header plus per-ket monomial/coefficient lines."""
    lines = [
        "superqubit-state v1",
        f"parties {state.parties}",
        f"order {state.order}",
        "pairs " + " ".join(str(p) for p in state.pairs),
    ]
    for i, c in enumerate(state._left):
        terms = c.terms()
        if not terms:
            continue
        lines.append(f"ket {label_of(i, state.parties, ascii_bullet=True)}")
        for mask in sorted(terms):
            gens = ",".join(str(g + 1) for g in range(state.order) if mask >> g & 1) or "-"
            z = terms[mask]
            lines.append(f"  term {gens} {z.real!r} {z.imag!r}")
    lines.append("end")
    return "\n".join(lines) + "\n"


def state_from_text(text: str) -> SuperState:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != "superqubit-state v1":
        raise ValueError("not a superqubit state record")
    parties = order = None
    pairs = None
    coeffs = None
    current = None
    for ln in lines[1:]:
        if ln == "end":
            break
        key, *rest = ln.split()
        if key == "parties":
            parties = int(rest[0])
            coeffs = [dict() for _ in range(3 ** parties)]
        elif key == "order":
            order = int(rest[0])
        elif key == "pairs":
            pairs = tuple(int(x) for x in rest)
        elif key == "ket":
            current = index_of(rest[0])
        elif key == "term":
            if current is None or coeffs is None or order is None:
                raise ValueError("term line before header/ket lines")
            gens, re_s, im_s = rest
            mask = 0
            if gens != "-":
                for g in gens.split(","):
                    mask |= 1 << (int(g) - 1)
            coeffs[current][mask] = complex(float(re_s), float(im_s))
        else:
            raise ValueError(f"unrecognized record line {ln!r}")
    if parties is None or order is None or coeffs is None:
        raise ValueError("incomplete state record")
    sns = [Supernumber(order, t) for t in coeffs]
    return SuperState(sns, parties, pairs=pairs, order=order, validate=False)
