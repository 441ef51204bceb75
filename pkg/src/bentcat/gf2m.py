"""Table-driven arithmetic in GF(2^m).

Elements are ints in the polynomial basis ``1, a, ..., a^(m-1)``: bit ``i`` is
the coefficient of ``a^i``. Because bit 0 is also ``x_1`` of a vector index,
an element *is* its vector index and the encoding maps are the identity on
ints. They exist so call sites say which view they mean.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field

import numpy as np

# Moduli fixed by the worked examples this package reproduces.
_PREFERRED_MODULI = {3: 0b1011, 4: 0b10011}


class ModulusError(ValueError):
    pass


def _poly_mulmod(x: int, y: int, modulus: int, m: int) -> int:
    r = 0
    while y:
        if y & 1:
            r ^= x
        y >>= 1
        x <<= 1
        if x >> m & 1:
            x ^= modulus
    return r


def _poly_mod(a: int, b: int) -> int:
    db = b.bit_length()
    while a.bit_length() >= db:
        a ^= b << (a.bit_length() - db)
    return a


def is_irreducible(modulus: int) -> bool:
    """Trial division by every polynomial of degree at most ``deg/2``."""
    m = modulus.bit_length() - 1
    if m < 1:
        return False
    for d in range(2, 1 << (m // 2 + 1)):
        if _poly_mod(modulus, d) == 0:
            return False
    return True


def multiplicative_order_of_x(modulus: int) -> int | None:
    """Order of the class of ``x`` modulo ``modulus``; None if ``x`` is not a unit."""
    m = modulus.bit_length() - 1
    if not modulus & 1:
        return None
    if m < 2:
        return None
    y, k = 2, 1
    while y != 1:
        y = _poly_mulmod(y, 2, modulus, m)
        k += 1
        if k > (1 << m):
            return None
    return k


def is_primitive(modulus: int) -> bool:
    m = modulus.bit_length() - 1
    return m >= 1 and multiplicative_order_of_x(modulus) == (1 << m) - 1 and is_irreducible(modulus)


def default_modulus(m: int) -> int:
    """Preferred modulus for m=3, 4; otherwise the numerically least primitive polynomial."""
    if m in _PREFERRED_MODULI:
        return _PREFERRED_MODULI[m]
    for cand in range((1 << m) | 1, 1 << (m + 1), 2):
        if is_primitive(cand):
            return cand
    raise ModulusError(f"no primitive polynomial of degree {m}")  # pragma: no cover


@dataclass(frozen=True, eq=False)
class FieldContext:
    """GF(2^m) with exp/log tables for the primitive element ``a`` (the class of x)."""

    m: int
    modulus: int
    exp: np.ndarray = field(repr=False)
    log: np.ndarray = field(repr=False)
    trace_table: np.ndarray = field(repr=False)
    gram: tuple[int, ...] = field(repr=False)

    @property
    def order(self) -> int:
        return 1 << self.m

    @property
    def group_order(self) -> int:
        return (1 << self.m) - 1

    def __repr__(self) -> str:
        return f"FieldContext(m={self.m}, modulus={self.modulus:#x})"

    # arithmetic -----------------------------------------------------------

    def mul(self, x: int, y: int) -> int:
        if x == 0 or y == 0:
            return 0
        return int(self.exp[(int(self.log[x]) + int(self.log[y])) % self.group_order])

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("0 has no inverse in GF(2^m)")
        return int(self.exp[(-int(self.log[x])) % self.group_order])

    def div(self, x: int, y: int) -> int:
        return self.mul(x, self.inv(y))

    def pow(self, x: int, e: int) -> int:
        if x == 0:
            if e > 0:
                return 0
            if e == 0:
                return 1
            raise ZeroDivisionError("0 raised to a negative power")
        return int(self.exp[(int(self.log[x]) * e) % self.group_order])

    def a(self, e: int) -> int:
        """The element ``a^e``."""
        return int(self.exp[e % self.group_order])

    def trace(self, x: int) -> int:
        return int(self.trace_table[x])

    def mul_table(self, alpha: int, xs: np.ndarray) -> np.ndarray:
        """``alpha * x`` for every entry of ``xs``."""
        xs = np.asarray(xs)
        if alpha == 0:
            return np.zeros_like(xs)
        out = self.exp[(self.log[xs] + int(self.log[alpha])) % self.group_order]
        return np.where(xs == 0, 0, out)

    def pow_table(self, e: int) -> np.ndarray:
        """``y^e`` for every field element ``y``, with ``0^e = 0`` for ``e > 0``."""
        ys = np.arange(self.order)
        out = self.exp[(self.log[ys].astype(np.int64) * e) % self.group_order]
        out[0] = 0 if e > 0 else 1
        return out

    # encodings ------------------------------------------------------------

    def elem_to_vec(self, x: int) -> int:
        if not 0 <= x < self.order:
            raise ValueError(f"{x} is not an element of GF(2^{self.m})")
        return x

    def vec_to_elem(self, v: int) -> int:
        if not 0 <= v < self.order:
            raise ValueError(f"{v} is not an {self.m}-bit vector")
        return v

    def trace_dual_map(self) -> np.ndarray:
        """Table of the linear map ``z -> (Tr(a^i z))_i``, so ``Tr(xz) = x . map[z]``."""
        zs = np.arange(self.order)
        out = np.zeros(self.order, dtype=np.int64)
        for i, row in enumerate(self.gram):
            bit = (np.bitwise_count(zs & row) & 1).astype(np.int64)
            out |= bit << i
        return out

    def parse_element(self, text: str) -> int:
        """``a^e``, ``a``, ``0``, ``1``, or a hex/decimal integer in polynomial encoding."""
        text = text.strip()
        m = re.fullmatch(r"a(?:\^\{?(-?\d+)\}?)?", text)
        if m:
            return self.a(int(m.group(1)) if m.group(1) else 1)
        try:
            value = int(text, 0)
        except ValueError:
            raise ValueError(f"cannot parse field element {text!r}") from None
        return self.vec_to_elem(value)

    def format_element(self, x: int) -> str:
        if x == 0:
            return "0"
        e = int(self.log[x])
        return "1" if e == 0 else ("a" if e == 1 else f"a^{e}")


def field_new(m: int, modulus: int | None = None) -> FieldContext:
    if not 2 <= m <= 16:
        raise ValueError(f"extension degree must be in 2..16, got {m}")
    if modulus is None:
        modulus = default_modulus(m)
    if modulus.bit_length() - 1 != m:
        raise ModulusError(f"modulus {modulus:#x} does not have degree {m}")
    if not is_irreducible(modulus):
        raise ModulusError(f"modulus {modulus:#x} is reducible")
    order_x = multiplicative_order_of_x(modulus)
    q1 = (1 << m) - 1
    if order_x != q1:
        raise ModulusError(
            f"modulus {modulus:#x} is irreducible but not primitive: x has order {order_x}, not {q1}"
        )

    exp = np.zeros(q1, dtype=np.int64)
    log = np.zeros(1 << m, dtype=np.int64)
    y = 1
    for e in range(q1):
        exp[e] = y
        log[y] = e
        y <<= 1
        if y >> m & 1:
            y ^= modulus

    # Tr is linear: Tr(x) = x . t where bit i of t is Tr(a^i), found by Frobenius orbits
    tmask = 0
    for i in range(m):
        acc, e = 0, i
        for _ in range(m):
            acc ^= int(exp[e % q1])
            e *= 2
        if acc not in (0, 1):  # pragma: no cover - would mean broken tables
            raise ArithmeticError("trace not in GF(2)")
        tmask |= acc << i
    trace = (np.bitwise_count(np.arange(1 << m) & tmask) & 1).astype(np.uint8)
    for arr in (exp, log, trace):
        arr.setflags(write=False)

    # gram[i] has bit j set iff Tr(a^i a^j) = 1
    gram = tuple(
        sum(int(trace[int(exp[(i + j) % q1])]) << j for j in range(m)) for i in range(m)
    )
    return FieldContext(m, modulus, exp, log, trace, gram)


def parse_modulus(text: str | None) -> int | None:
    """CLI form: hex mask such as ``0xB`` or the keyword ``default`` (returns None)."""
    if text is None or text.strip().lower() == "default":
        return None
    return int(text, 16)


def coprime(d: int, m: int) -> bool:
    return math.gcd(d, (1 << m) - 1) == 1
