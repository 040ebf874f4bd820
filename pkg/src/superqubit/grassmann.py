"""Exact arithmetic in the finite complex Grassmann algebra CL_N.

Generators are indexed 1..N (N even) and come in conjugate pairs:
index 2i-1 holds eta_i and index 2i holds eta_i#.  A monomial is a
strictly ascending product of distinct generators, stored as an N-bit
mask (bit g-1 set iff generator g is present), so nilpotency and the
reordering signs reduce to bit arithmetic.

Everything here is a pure function on immutable values.
"""

from __future__ import annotations

import numbers

PRUNE_TOL = 1e-14
COMPARE_TOL = 1e-12
MAX_ORDER = 16


class DimensionMismatch(ValueError):
    """Operands live in Grassmann algebras of different order."""


class ParityError(ValueError):
    """Operation requires a homogeneous (usually even) element."""


class NotInvertible(ValueError):
    """Zero body: the element has no inverse."""


class DomainError(ValueError):
    """Body outside the domain of the requested function (e.g. sqrt)."""


def _merge_sign(ma: int, mb: int) -> int:
    """Sign of sorting the concatenation of two ascending monomials.

    Each generator of mb must jump over every generator of ma with a
    strictly larger index; masks are assumed disjoint.
    """
    swaps = 0
    b = mb
    while b:
        low = b & -b
        swaps += (ma >> low.bit_length()).bit_count()
        b ^= low
    return -1 if swaps & 1 else 1


def _sort_sign(gens: list[int]) -> tuple[int, int]:
    """Sort a list of distinct generator indices; return (sign, mask)."""
    sign = 1
    mask = 0
    # insertion sort, counting transpositions; monomials have <= 16 factors
    order = []
    for g in gens:
        pos = len(order)
        while pos > 0 and order[pos - 1] > g:
            pos -= 1
        sign *= -1 if (len(order) - pos) & 1 else 1
        order.insert(pos, g)
        mask |= 1 << (g - 1)
    return sign, mask


def _bits(mask: int):
    """Yield generator indices (1-based, ascending) present in mask."""
    g = 1
    while mask:
        if mask & 1:
            yield g
        mask >>= 1
        g += 1


class Supernumber:
    """Element of CL_N: sparse complex coefficients on monomial masks."""

    __slots__ = ("order", "_terms")

    def __init__(self, order: int, terms=None, prune_tol: float | None = None):
        if order < 0 or order > MAX_ORDER or order % 2:
            raise ValueError(f"order must be even and in [0, {MAX_ORDER}], got {order}")
        tol = PRUNE_TOL if prune_tol is None else prune_tol
        cleaned: dict[int, complex] = {}
        if terms:
            top = 1 << order
            for mask, c in terms.items():
                if not 0 <= mask < top:
                    raise ValueError(f"monomial mask {mask} out of range for order {order}")
                c = complex(c)
                if abs(c) > tol:
                    cleaned[mask] = c
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "_terms", cleaned)

    def __setattr__(self, name, value):
        raise AttributeError("Supernumber is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(order: int) -> "Supernumber":
        return Supernumber(order, {})

    @staticmethod
    def one(order: int) -> "Supernumber":
        return Supernumber(order, {0: 1.0})

    @staticmethod
    def from_complex(z, order: int) -> "Supernumber":
        return Supernumber(order, {0: complex(z)})

    @staticmethod
    def generator(g: int, order: int) -> "Supernumber":
        if not 1 <= g <= order:
            raise ValueError(f"generator index {g} out of range 1..{order}")
        return Supernumber(order, {1 << (g - 1): 1.0})

    @staticmethod
    def eta(pair: int, order: int) -> "Supernumber":
        """eta_i, the first generator of conjugate pair i."""
        return Supernumber.generator(2 * pair - 1, order)

    @staticmethod
    def eta_hash(pair: int, order: int) -> "Supernumber":
        """eta_i#, the second generator of conjugate pair i."""
        return Supernumber.generator(2 * pair, order)

    # -- inspection --------------------------------------------------------

    def terms(self) -> dict[int, complex]:
        return dict(self._terms)

    def coefficient(self, mask: int) -> complex:
        return self._terms.get(mask, 0j)

    @property
    def body(self) -> complex:
        return self._terms.get(0, 0j)

    def soul(self) -> "Supernumber":
        return Supernumber(self.order, {m: c for m, c in self._terms.items() if m})

    def parity(self) -> int | None:
        """0 for even, 1 for odd, None for inhomogeneous or zero-with-no-terms."""
        parities = {m.bit_count() & 1 for m in self._terms}
        if not parities:
            return 0
        if len(parities) == 1:
            return parities.pop()
        return None

    def is_zero(self, tol: float | None = None) -> bool:
        tol = COMPARE_TOL if tol is None else tol
        return all(abs(c) <= tol for c in self._terms.values())

    def even_part(self) -> "Supernumber":
        return Supernumber(self.order, {m: c for m, c in self._terms.items() if not m.bit_count() & 1})

    def odd_part(self) -> "Supernumber":
        return Supernumber(self.order, {m: c for m, c in self._terms.items() if m.bit_count() & 1})

    def is_real_even(self, tol: float | None = None) -> bool:
        """Even and invariant under the hash involution."""
        return self.parity() == 0 and (self.hash() - self).is_zero(tol)

    # -- ring structure ----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Supernumber):
            if other.order != self.order:
                raise DimensionMismatch(f"orders differ: {self.order} vs {other.order}")
            return other
        if isinstance(other, numbers.Complex):
            return Supernumber.from_complex(other, self.order)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0j) + c
        return Supernumber(self.order, out)

    __radd__ = __add__

    def __neg__(self):
        return Supernumber(self.order, {m: -c for m, c in self._terms.items()}, prune_tol=0.0)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, numbers.Complex):
            return Supernumber(self.order, {m: c * other for m, c in self._terms.items()})
        if not isinstance(other, Supernumber):
            return NotImplemented
        if other.order != self.order:
            raise DimensionMismatch(f"orders differ: {self.order} vs {other.order}")
        out: dict[int, complex] = {}
        for ma, ca in self._terms.items():
            for mb, cb in other._terms.items():
                if ma & mb:
                    continue  # repeated generator, vanishes
                m = ma | mb
                out[m] = out.get(m, 0j) + _merge_sign(ma, mb) * ca * cb
        return Supernumber(self.order, out)

    def __rmul__(self, other):
        if isinstance(other, numbers.Complex):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, numbers.Complex):
            return self * (1.0 / complex(other))
        if isinstance(other, Supernumber):
            return self * invert(other)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, Supernumber) and other.order != self.order:
            return False
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    # -- involutions -------------------------------------------------------

    def hash(self) -> "Supernumber":
        """Hash involution: eta_i -> eta_i#, eta_i# -> -eta_i, coefficients conjugated.

        Order-preserving on products, so a monomial maps factor by factor
        and is then re-sorted with the transposition sign.
        """
        out: dict[int, complex] = {}
        for mask, c in self._terms.items():
            sign = 1
            gens = []
            for g in _bits(mask):
                if g & 1:
                    gens.append(g + 1)
                else:
                    gens.append(g - 1)
                    sign = -sign
            s2, m2 = _sort_sign(gens)
            out[m2] = out.get(m2, 0j) + sign * s2 * c.conjugate()
        return Supernumber(self.order, out, prune_tol=0.0)

    def star(self) -> "Supernumber":
        """Star involution: order-reversing, eta_i <-> eta_i* on the paired slots."""
        out: dict[int, complex] = {}
        for mask, c in self._terms.items():
            gens = [g + 1 if g & 1 else g - 1 for g in _bits(mask)]
            gens.reverse()
            s2, m2 = _sort_sign(gens)
            out[m2] = out.get(m2, 0j) + s2 * c.conjugate()
        return Supernumber(self.order, out, prune_tol=0.0)

    # -- rendering ---------------------------------------------------------

    def __repr__(self):
        return f"Supernumber({self.order}, {self._terms!r})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for mask in sorted(self._terms, key=lambda m: (m.bit_count(), m)):
            c = self._terms[mask]
            cs = _fmt_complex(c)
            if mask == 0:
                parts.append(cs)
            else:
                gens = "".join(
                    f"η{(g + 1) // 2}" if g & 1 else f"η{g // 2}#" for g in _bits(mask)
                )
                parts.append(f"{cs}·{gens}")
        return " + ".join(parts)


def _fmt_complex(c: complex) -> str:
    if c.imag == 0:
        return f"{c.real:g}"
    if c.real == 0:
        return f"{c.imag:g}i"
    return f"({c.real:g}{c.imag:+g}i)"


def mul(a: Supernumber, b: Supernumber) -> Supernumber:
    return a * b


def berezin(a: Supernumber, g: int) -> Supernumber:
    """Left-derivative Berezin integral: int dg (x + g*y) = y.

    Pulling generator g to the front of a monomial crosses every
    generator with a smaller index, each crossing contributing -1.
    """
    if not 1 <= g <= a.order:
        raise ValueError(f"generator index {g} out of range 1..{a.order}")
    bit = 1 << (g - 1)
    below = bit - 1
    out = {}
    for mask, c in a._terms.items():
        if not mask & bit:
            continue
        sign = -1 if (mask & below).bit_count() & 1 else 1
        out[mask ^ bit] = sign * c
    return Supernumber(a.order, out, prune_tol=0.0)


def rogers_r1(a: Supernumber) -> float:
    """Sum of the coefficient moduli (does not respect the ring order)."""
    return sum(abs(c) for c in a._terms.values())


def modified_rogers(a: Supernumber, tol: float | None = None):
    """Berezin integral of an even element against prod exp(-eta_i eta_i#).

    The weight factors expand to (1 - eta_i eta_i#) exactly.  Each pair is
    integrated deta_i# then deta_i, pairs ascending; this order makes
    modified_rogers(1 + c*eta*eta#) = 1 - c and normalizes
    modified_rogers(1) = 1.
    """
    if a.parity() != 0:
        raise ParityError("modified Rogers norm requires an even element")
    acc = a
    for pair in range(1, a.order // 2 + 1):
        x = pair_product(pair, a.order)
        acc = (Supernumber.one(a.order) - x) * acc
    for pair in range(1, a.order // 2 + 1):
        acc = berezin(acc, 2 * pair)
        acc = berezin(acc, 2 * pair - 1)
    val = acc.body
    tol = COMPARE_TOL if tol is None else tol
    return val.real if abs(val.imag) <= tol else val


def pair_product(pair: int, order: int) -> Supernumber:
    """eta_i eta_i# for conjugate pair i."""
    return Supernumber.eta(pair, order) * Supernumber.eta_hash(pair, order)


def invert(a: Supernumber, tol: float | None = None) -> Supernumber:
    """Exact inverse: finite geometric series around the nonzero body."""
    tol = PRUNE_TOL if tol is None else tol
    b = a.body
    if abs(b) <= tol:
        raise NotInvertible("zero body")
    n = a * (1.0 / b) - 1  # nilpotent
    out = Supernumber.one(a.order)
    power = Supernumber.one(a.order)
    sign = 1
    for _ in range(a.order + 1):
        power = power * n
        if power.is_zero(0.0):
            break
        sign = -sign
        out = out + power * sign
    return out * (1.0 / b)


def inv_sqrt(a: Supernumber, tol: float | None = None) -> Supernumber:
    """a^(-1/2) for even a with positive real body; inv_sqrt(a)^2 * a = 1."""
    tol = PRUNE_TOL if tol is None else tol
    b = a.body
    if abs(b.imag) > tol or b.real <= 0:
        raise DomainError(f"inv_sqrt needs a positive real body, got {b}")
    n = a * (1.0 / b.real) - 1
    out = Supernumber.one(a.order)
    power = Supernumber.one(a.order)
    coeff = 1.0
    for k in range(1, a.order + 2):
        power = power * n
        if power.is_zero(0.0):
            break
        coeff *= -(2 * k - 1) / (2 * k)  # binom(-1/2, k) recursion
        out = out + power * coeff
    return out * (b.real ** -0.5)
