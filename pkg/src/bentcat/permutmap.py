"""Vectorial maps F_2^m -> F_2^m as lookup tables, and their structural checks."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .boolcore import AnfForm, ParseError, TruthTable, anf_from_tt, linear_structures, parity
from .gf2m import FieldContext


@dataclass(frozen=True, eq=False)
class PointMap:
    """``table[i]`` is the index of the image of ``vec(i)``."""

    m: int
    table: np.ndarray
    tag: str = ""

    def __post_init__(self) -> None:
        if self.m < 1:
            raise ValueError("m must be positive")
        table = np.ascontiguousarray(self.table, dtype=np.int64).copy()
        if table.shape != (1 << self.m,):
            raise ValueError(f"expected {1 << self.m} entries for m={self.m}, got shape {table.shape}")
        if table.min() < 0 or table.max() >= 1 << self.m:
            raise ValueError(f"image out of range for m={self.m}")
        table.setflags(write=False)
        object.__setattr__(self, "table", table)

    def __call__(self, y: int) -> int:
        return int(self.table[y])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PointMap):
            return NotImplemented
        return self.m == other.m and np.array_equal(self.table, other.table)

    def __hash__(self) -> int:
        return hash((self.m, self.table.tobytes()))

    def __add__(self, other: PointMap) -> PointMap:
        return add(self, other)

    def __repr__(self) -> str:
        tag = f", tag={self.tag!r}" if self.tag else ""
        return f"PointMap(m={self.m}, {self.table.tolist()}{tag})"


def identity(m: int) -> PointMap:
    return PointMap(m, np.arange(1 << m), "identity")


def from_coordinates(coords: Sequence[TruthTable], tag: str = "") -> PointMap:
    """Map whose ``i``-th output coordinate is ``coords[i]`` (coordinate 1 = LSB)."""
    m = len(coords)
    table = np.zeros(1 << m, dtype=np.int64)
    for i, c in enumerate(coords):
        if c.n != m:
            raise ValueError(f"coordinate {i + 1} has {c.n} variables, expected {m}")
        table |= c.bits.astype(np.int64) << i
    return PointMap(m, table, tag)


def coordinate_functions(p: PointMap) -> list[TruthTable]:
    return [TruthTable(p.m, ((p.table >> i) & 1).astype(np.uint8)) for i in range(p.m)]


def coordinate_anfs(p: PointMap) -> list[AnfForm]:
    """ANF of each output coordinate, top row first as in a column-vector display."""
    return [anf_from_tt(c) for c in coordinate_functions(p)]


def map_degree(p: PointMap) -> int:
    return max((max((mono.bit_count() for mono in a.monomials), default=0) for a in coordinate_anfs(p)), default=0)


def is_permutation(p: PointMap) -> bool:
    return bool(np.unique(p.table).size == p.table.size)


def inverse(p: PointMap) -> PointMap:
    if not is_permutation(p):
        raise ValueError("map is not a bijection")
    inv = np.empty_like(p.table)
    inv[p.table] = np.arange(p.table.size)
    return PointMap(p.m, inv, f"inverse({p.tag})" if p.tag else "")


def add(p: PointMap, q: PointMap) -> PointMap:
    if p.m != q.m:
        raise ValueError(f"cannot add maps on F_2^{p.m} and F_2^{q.m}")
    return PointMap(p.m, p.table ^ q.table)


def compose(p: PointMap, q: PointMap) -> PointMap:
    """``y -> p(q(y))``."""
    if p.m != q.m:
        raise ValueError("dimension mismatch")
    return PointMap(p.m, p.table[q.table])


@dataclass(frozen=True)
class AmCertificate:
    """Outcome of the (A_m) check; truthy iff the property holds."""

    holds: bool
    pi4: PointMap | None = field(default=None, repr=False)
    failure: str | None = None
    point: int | None = None

    def __bool__(self) -> bool:
        return self.holds


def check_Am(p1: PointMap, p2: PointMap, p3: PointMap) -> AmCertificate:
    """Whether ``p4 = p1 + p2 + p3`` is a permutation with ``p4^-1 = p1^-1 + p2^-1 + p3^-1``."""
    for idx, p in enumerate((p1, p2, p3), start=1):
        if not is_permutation(p):
            raise ValueError(f"map {idx} is not a permutation")
    if not p1.m == p2.m == p3.m:
        raise ValueError("maps live on different spaces")
    p4 = add(add(p1, p2), p3)
    if not is_permutation(p4):
        values, counts = np.unique(p4.table, return_counts=True)
        collision = int(values[counts > 1][0])
        point = int(np.flatnonzero(p4.table == collision)[1])
        return AmCertificate(False, p4, "sum is not a permutation", point)
    inv_sum = inverse(p1).table ^ inverse(p2).table ^ inverse(p3).table
    bad = np.flatnonzero(inverse(p4).table != inv_sum)
    if bad.size:
        return AmCertificate(False, p4, "inverse of the sum differs from the sum of inverses", int(bad[0]))
    return AmCertificate(True, p4)


def check_P1(p: PointMap) -> bool:
    """True iff ``D_v D_w p(y) != 0`` for all independent ``v, w`` and all ``y``."""
    size = 1 << p.m
    if p.m < 2:
        return True
    ys = np.arange(size)
    for v in range(1, size):
        dv = p.table ^ p.table[ys ^ v]
        ws = np.arange(v + 1, size)
        dvw = dv[None, :] ^ dv[ws[:, None] ^ ys[None, :]]
        if not np.all(dvw):
            return False
    return True


def differential_uniformity(p: PointMap) -> int:
    size = 1 << p.m
    ys = np.arange(size)
    worst = 0
    for a in range(1, size):
        counts = np.bincount(p.table ^ p.table[ys ^ a], minlength=size)
        worst = max(worst, int(counts.max()))
    return worst


def is_APN(p: PointMap) -> bool:
    return differential_uniformity(p) == 2


@dataclass(frozen=True)
class ComponentReport:
    structures: dict[int, frozenset[int]]

    @property
    def trivial(self) -> bool:
        """True when no component ``b . p`` has a nonzero linear structure."""
        return all(s == {0} for s in self.structures.values())

    @property
    def offending(self) -> list[int]:
        return [b for b, s in self.structures.items() if s != {0}]


def component(p: PointMap, b: int) -> TruthTable:
    """The Boolean function ``y -> b . p(y)``."""
    return TruthTable(p.m, parity(p.table & b))


def component_linear_structures(p: PointMap) -> ComponentReport:
    return ComponentReport({b: linear_structures(component(p, b)) for b in range(1, 1 << p.m)})


def monomial_map(ctx: FieldContext, alpha: int, d: int, strict: bool = True) -> PointMap:
    """``y -> alpha * y^d``; with ``strict`` the exponent must give a permutation."""
    if alpha == 0:
        raise ValueError("alpha must be nonzero")
    if strict and math.gcd(d, ctx.group_order) != 1:
        raise ValueError(f"gcd({d}, {ctx.group_order}) != 1, y^{d} is not a permutation")
    table = ctx.mul_table(alpha, ctx.pow_table(d))
    return PointMap(ctx.m, table, f"monomial alpha={ctx.format_element(alpha)}, d={d}")


def mm_bent(
    pi: PointMap,
    h: TruthTable | None = None,
    form: str = "dot",
    ctx: FieldContext | None = None,
    strict: bool = True,
) -> TruthTable:
    """``f(x, y) = x . pi(y) + h(y)`` on ``2m`` variables, ``x`` in the low ``m`` bits.

    With ``form='trace'`` the inner product is ``Tr(x pi(y))`` in ``ctx``,
    realised as ``x . tau(pi(y))`` with ``tau`` the trace-dual linear map.
    """
    m = pi.m
    if strict and not is_permutation(pi):
        raise ValueError("pi is not a permutation; the result would not be bent")
    if h is None:
        h = TruthTable.zeros(m)
    if h.n != m:
        raise ValueError(f"h has {h.n} variables, expected {m}")
    images = pi.table
    if form == "trace":
        if ctx is None or ctx.m != m:
            raise ValueError("trace form needs a field context of matching degree")
        images = ctx.trace_dual_map()[images]
    elif form != "dot":
        raise ValueError(f"unknown form {form!r}")
    xs = np.arange(1 << m)
    bits = parity(xs[None, :] & images[:, None]) ^ h.bits[:, None]
    return TruthTable(2 * m, bits.reshape(-1))


def mm_dual(pi: PointMap, h: TruthTable | None = None, form: str = "dot", ctx: FieldContext | None = None) -> TruthTable:
    """Closed-form dual of :func:`mm_bent`: ``(u, v) -> v . rho^-1(u) + h(rho^-1(u))``.

    ``rho`` is ``pi`` in dot form and ``tau o pi`` in trace form.
    """
    m = pi.m
    if h is None:
        h = TruthTable.zeros(m)
    rho = pi
    if form == "trace":
        rho = PointMap(m, ctx.trace_dual_map()[pi.table])  # type: ignore[union-attr]
    rinv = inverse(rho).table
    us = np.arange(1 << m)
    # rows indexed by v (high half), columns by u (low half)
    bits = parity(us[:, None] & rinv[None, :]) ^ h.bits[rinv][None, :]
    return TruthTable(2 * m, bits.reshape(-1))


# ---------------------------------------------------------------------------
# file format
# ---------------------------------------------------------------------------


def parse_permutation(text: str) -> PointMap:
    lines = [(i + 1, ln.strip()) for i, ln in enumerate(text.splitlines())]
    lines = [(no, ln) for no, ln in lines if ln and not ln.startswith("#")]
    if len(lines) != 2:
        raise ParseError("expected 'm=<k>' followed by one line of images", 1, 1)
    (hno, header), (bno, body) = lines
    mt = re.fullmatch(r"m\s*=\s*(\d+)", header)
    if not mt:
        raise ParseError(f"bad header {header!r}, expected 'm=<k>'", hno, 1)
    m = int(mt.group(1))
    values = []
    for tok in re.finditer(r"\S+", body):
        if not tok.group().isdigit():
            raise ParseError(f"not a decimal index: {tok.group()!r}", bno, tok.start() + 1)
        values.append(int(tok.group()))
    if len(values) != 1 << m:
        raise ParseError(f"expected {1 << m} images, found {len(values)}", bno, len(body) + 1)
    if max(values) >= 1 << m:
        col = body.index(str(max(values))) + 1
        raise ParseError(f"image {max(values)} out of range for m={m}", bno, col)
    return PointMap(m, np.array(values))


def format_permutation(p: PointMap) -> str:
    return f"m={p.m}\n{' '.join(map(str, p.table.tolist()))}\n"
