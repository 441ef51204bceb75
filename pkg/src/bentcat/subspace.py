"""Subspaces of F_2^n and the search for M-subspaces.

An M-subspace of ``f`` is a subspace ``U`` with ``D_a D_b f = 0`` for all
``a, b`` in ``U``. A bent ``f`` on ``2m`` variables lies in the completed
Maiorana-McFarland class exactly when it has an ``m``-dimensional one.
"""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .boolcore import TruthTable, derivative, is_bent


class SearchBudgetExceeded(RuntimeError):
    """The time budget ran out before the subspace search finished."""


def rref(vectors: Iterable[int]) -> tuple[int, ...]:
    """Reduced row-echelon basis; the pivot of a row is its lowest set bit (column x_1 first)."""
    rows: list[int] = []
    for v in vectors:
        for r in rows:
            if v & (r & -r):
                v ^= r
        if v:
            piv = v & -v
            rows = [r ^ v if r & piv else r for r in rows]
            rows.append(v)
    return tuple(sorted(rows, key=lambda r: r & -r))


def span(basis: Sequence[int]) -> list[int]:
    elems = [0]
    for b in basis:
        elems += [e ^ b for e in elems]
    return elems


@dataclass(frozen=True)
class Subspace:
    n: int
    basis: tuple[int, ...]

    def __post_init__(self) -> None:
        canon = rref(self.basis)
        if len(canon) != len(self.basis):
            raise ValueError("basis vectors are linearly dependent")
        if any(v >> self.n for v in canon):
            raise ValueError(f"vector outside F_2^{self.n}")
        object.__setattr__(self, "basis", canon)

    @classmethod
    def from_vectors(cls, n: int, vectors: Iterable[int]) -> Subspace:
        return cls(n, rref(vectors))

    @classmethod
    def from_rows(cls, rows: Iterable[str]) -> Subspace:
        """Rows written as 0/1 strings, leftmost character = coordinate x_1."""
        rows = [r.replace(" ", "") for r in rows]
        n = len(rows[0])
        return cls.from_vectors(n, (sum(int(c) << i for i, c in enumerate(r)) for r in rows))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def elements(self) -> list[int]:
        return span(self.basis)

    def __contains__(self, v: int) -> bool:
        for r in self.basis:
            if v & (r & -r):
                v ^= r
        return v == 0

    def issubspace(self, other: Subspace) -> bool:
        return all(b in other for b in self.basis)

    def rows(self) -> list[str]:
        return ["".join(str(b >> i & 1) for i in range(self.n)) for b in self.basis]

    def __str__(self) -> str:
        return "\n".join(self.rows())


def canonical_subspace(n: int) -> Subspace:
    """``F_2^m x {0_m}`` with ``m = n/2``: the first ``m`` coordinates."""
    return Subspace(n, tuple(1 << i for i in range(n // 2)))


# ---------------------------------------------------------------------------
# vanishing graph
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class VanishingGraph:
    """``neighbors[a]`` has bit ``b`` set iff ``D_a D_b f = 0`` (for every function of the family)."""

    n: int
    neighbors: tuple[int, ...] = field(repr=False)

    def vanishes(self, a: int, b: int) -> bool:
        return bool(self.neighbors[a] >> b & 1)

    def pairs(self) -> set[frozenset[int]]:
        out = set()
        for a, nb in enumerate(self.neighbors):
            for b in _bits(nb):
                if b >= a:
                    out.add(frozenset((a, b)))
        return out

    def __and__(self, other: VanishingGraph) -> VanishingGraph:
        if other.n != self.n:
            raise ValueError("dimension mismatch")
        return VanishingGraph(self.n, tuple(x & y for x, y in zip(self.neighbors, other.neighbors)))


def _bits(mask: int) -> Iterable[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _mask_from_bools(row: np.ndarray) -> int:
    return int.from_bytes(np.packbits(row, bitorder="little").tobytes(), "little")


def vanishing_pairs(f: TruthTable | Sequence[TruthTable], chunk: int = 256) -> VanishingGraph:
    """Pairs ``{a, b}`` whose second derivative vanishes identically.

    ``b`` pairs with ``a`` iff ``b`` is a linear structure with constant 0 of
    ``D_a f``, read off the autocorrelation ``r(b) = 2^n``. The rows of
    ``D_a f`` are transformed in chunks to bound memory.
    """
    if not isinstance(f, TruthTable):
        fs = list(f)
        graph = vanishing_pairs(fs[0], chunk)
        for g in fs[1:]:
            graph = graph & vanishing_pairs(g, chunk)
        return graph
    n = f.n
    size = 1 << n
    xs = np.arange(size)
    neighbors: list[int] = []
    for start in range(0, size, chunk):
        a = np.arange(start, min(start + chunk, size))
        d = f.bits[None, :] ^ f.bits[a[:, None] ^ xs[None, :]]
        w = 1 - 2 * d.astype(np.int64)
        w = _butterfly_rows(w, n)
        r = _butterfly_rows(w * w, n)
        hits = r == (size * size)
        neighbors.extend(_mask_from_bools(row) for row in hits)
    return VanishingGraph(n, tuple(neighbors))


def _butterfly_rows(w: np.ndarray, n: int) -> np.ndarray:
    rows = w.shape[0]
    for i in range(n):
        view = w.reshape(rows, -1, 2, 1 << i)
        left = view[:, :, 0, :].copy()
        view[:, :, 0, :] += view[:, :, 1, :]
        view[:, :, 1, :] = left - view[:, :, 1, :]
    return w


# ---------------------------------------------------------------------------
# search
# ---------------------------------------------------------------------------


def _pivot_masks(n: int) -> list[int]:
    """``masks[p]`` selects the vectors whose lowest set bit is ``p``."""
    masks = []
    for p in range(n):
        values = (np.arange(1 << (n - p - 1), dtype=np.int64) * 2 + 1) << p
        row = np.zeros(1 << n, dtype=bool)
        row[values] = True
        masks.append(_mask_from_bools(row))
    return masks


def _as_graph(f: TruthTable | Sequence[TruthTable] | VanishingGraph) -> VanishingGraph:
    return f if isinstance(f, VanishingGraph) else vanishing_pairs(f)


def m_subspaces(
    f: TruthTable | Sequence[TruthTable] | VanishingGraph,
    dim: int,
    limit: int | None = None,
    budget: float | None = None,
) -> list[Subspace]:
    """All ``dim``-dimensional M-subspaces, each once, sorted by pivot positions then basis.

    With ``limit`` the search stops early and returns hits in discovery order.

    A sequence of functions means common M-subspaces. Rows are added with
    strictly increasing pivots; a candidate must pair-vanish with every element
    of the current span, which is enough for the enlarged span to be an
    M-subspace. ``budget`` is in seconds; exceeding it raises
    :class:`SearchBudgetExceeded`.
    """
    graph = _as_graph(f)
    n = graph.n
    if not 0 <= dim <= n:
        raise ValueError(f"dimension {dim} out of range for n={n}")
    if dim == 0:
        return [Subspace(n, ())]
    nb = graph.neighbors
    piv_masks = _pivot_masks(n)
    deadline = None if budget is None else time.monotonic() + budget
    results: list[Subspace] = []
    nodes = 0

    def extend(basis: list[int], elems: list[int], cand: int, last: int) -> bool:
        nonlocal nodes
        nodes += 1
        if deadline is not None and nodes % 256 == 0 and time.monotonic() > deadline:
            raise SearchBudgetExceeded(f"subspace search exceeded {budget} s")
        need = dim - len(basis)
        occupied = 0
        for row in basis:
            occupied |= row
        for p in range(last + 1, n - need + 1):
            if occupied >> p & 1:
                continue
            for v in _bits(cand & piv_masks[p]):
                if need == 1:
                    results.append(Subspace(n, tuple(basis + [v])))
                    if limit is not None and len(results) >= limit:
                        return True
                    continue
                new = [e ^ v for e in elems]
                new_cand = cand
                for e in new:
                    new_cand &= nb[e]
                    if not new_cand:
                        break
                if new_cand and extend(basis + [v], elems + new, new_cand, p):
                    return True
        return False

    extend([], [0], ((1 << (1 << n)) - 1) ^ 1, -1)
    if limit is None:
        results.sort(key=lambda u: (tuple((b & -b).bit_length() for b in u.basis), u.basis))
    return results


def common_m_subspaces(fs: Sequence[TruthTable], dim: int, limit: int | None = None, budget: float | None = None) -> list[Subspace]:
    return m_subspaces(list(fs), dim, limit, budget)


def verify_m_subspace(f: TruthTable, u: Subspace) -> bool:
    """Direct re-check of ``D_a D_b f = 0`` over all pairs of elements of ``u``."""
    elems = u.elements()
    for i, a in enumerate(elems):
        da = derivative(f, a)
        for b in elems[i + 1 :]:
            if derivative(da, b).weight():
                return False
    return True


class Membership(str, enum.Enum):
    INSIDE = "inside"
    OUTSIDE = "outside"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class MembershipVerdict:
    status: Membership
    witness: Subspace | None = None
    elapsed: float = 0.0

    @property
    def canonical(self) -> bool:
        return self.witness is not None and self.witness == canonical_subspace(self.witness.n)


def mm_sharp_verdict(f: TruthTable, budget: float | None = None) -> MembershipVerdict:
    if f.n % 2:
        raise ValueError(f"M# membership needs even n, got {f.n}")
    if not is_bent(f):
        raise ValueError("M# membership via M-subspaces is decided for bent functions only")
    t0 = time.monotonic()
    try:
        found = m_subspaces(f, f.n // 2, limit=1, budget=budget)
    except SearchBudgetExceeded:
        return MembershipVerdict(Membership.INCONCLUSIVE, None, time.monotonic() - t0)
    elapsed = time.monotonic() - t0
    if found:
        return MembershipVerdict(Membership.INSIDE, found[0], elapsed)
    return MembershipVerdict(Membership.OUTSIDE, None, elapsed)


def is_in_MM_sharp(f: TruthTable, budget: float | None = None) -> bool:
    """Dillon's criterion by exhaustive pruned search; raises on budget exhaustion."""
    if f.n % 2:
        raise ValueError(f"M# membership needs even n, got {f.n}")
    if not is_bent(f):
        raise ValueError("M# membership via M-subspaces is decided for bent functions only")
    return bool(m_subspaces(f, f.n // 2, limit=1, budget=budget))


def canonical_unique(fs: Sequence[TruthTable]) -> bool:
    """True iff ``F_2^m x {0_m}`` is the only ``m``-dim M-subspace of every function."""
    for f in fs:
        if f.n % 2:
            raise ValueError("functions must have an even number of variables")
        found = m_subspaces(f, f.n // 2, limit=2)
        if found != [canonical_subspace(f.n)]:
            return False
    return True


# ---------------------------------------------------------------------------
# sufficient condition for lying outside M# from shared M-subspaces
# ---------------------------------------------------------------------------


class SharingVerdict(str, enum.Enum):
    CERTIFIED = "outside-M#-certified"
    INCONCLUSIVE = "inconclusive"
    HYPOTHESIS_FAILED = "hypothesis-failed"


# (i, j, k, l): the condition holds at u if D_u f_i(x) + D_u f_j(x+v) != 0
# or D_u f_k(x) + D_u f_l(x+v) != 0 (0-based function indices)
SHARING_CONDITIONS = ((0, 1, 2, 3), (0, 2, 1, 3), (1, 2, 0, 3))


@dataclass
class SharingReport:
    verdict: SharingVerdict
    reason: str = ""
    shared: list[Subspace] = field(default_factory=list)
    vs: list[Subspace] = field(default_factory=list)
    failures: list[tuple[Subspace, int, int]] = field(default_factory=list)

    def __str__(self) -> str:
        return self.verdict.value + (f" ({self.reason})" if self.reason else "")


def _translate_differs(di: np.ndarray, dj: np.ndarray, index: np.ndarray) -> np.ndarray:
    """``out[v]`` is True iff ``x -> di(x) + dj(x + v)`` is not identically zero."""
    return np.any(dj[index] != di[None, :], axis=1)


def check_sharing_theorem(
    f1: TruthTable, f2: TruthTable, f3: TruthTable, f4: TruthTable, concat_bent: bool | None = None
) -> SharingReport:
    """Check the shared-M-subspace sufficient condition for ``f1||f2||f3||f4`` lying outside M#.

    Hypotheses: all four bent, exactly one common ``m``-dim M-subspace, bent
    concatenation. Then every common ``(m-1)``-dim M-subspace ``V`` and every
    shift ``v`` must admit witnesses ``u`` in ``V`` for the three conditions.
    Any failing ``(V, v, condition)`` makes the verdict inconclusive.
    """
    fs = [f1, f2, f3, f4]
    n = f1.n
    if any(f.n != n for f in fs) or n % 2:
        return SharingReport(SharingVerdict.HYPOTHESIS_FAILED, "functions must share an even n")
    for i, f in enumerate(fs, 1):
        if not is_bent(f):
            return SharingReport(SharingVerdict.HYPOTHESIS_FAILED, f"f{i} is not bent")
    if concat_bent is None:
        bits = np.concatenate([f1.bits, f3.bits, f2.bits, f4.bits])
        concat_bent = is_bent(TruthTable(n + 2, bits))
    if not concat_bent:
        return SharingReport(SharingVerdict.HYPOTHESIS_FAILED, "concatenation is not bent")
    m = n // 2
    graph = vanishing_pairs(fs)
    shared = m_subspaces(graph, m, limit=2)
    if len(shared) != 1:
        return SharingReport(
            SharingVerdict.HYPOTHESIS_FAILED,
            f"{'no' if not shared else 'more than one'} common {m}-dim M-subspace",
            shared,
        )
    vs = m_subspaces(graph, m - 1)
    size = 1 << n
    xs = np.arange(size)
    index = xs[None, :] ^ xs[:, None]  # index[v, x] = x + v
    cache: dict[int, list[np.ndarray]] = {}

    def differs(u: int) -> list[np.ndarray]:
        if u not in cache:
            ds = [derivative(f, u).bits for f in fs]
            cache[u] = [
                _translate_differs(ds[i], ds[j], index) | _translate_differs(ds[k], ds[l], index)
                for i, j, k, l in SHARING_CONDITIONS
            ]
        return cache[u]

    failures: list[tuple[Subspace, int, int]] = []
    for V in vs:
        ok = [np.zeros(size, dtype=bool) for _ in SHARING_CONDITIONS]
        for u in V.elements()[1:]:
            for c, arr in enumerate(differs(u)):
                ok[c] |= arr
        for c, arr in enumerate(ok):
            failures.extend((V, int(v), c + 1) for v in np.flatnonzero(~arr))
    if failures:
        return SharingReport(SharingVerdict.INCONCLUSIVE, f"{len(failures)} (V, v, condition) triples without witness", shared, vs, failures)
    return SharingReport(SharingVerdict.CERTIFIED, "", shared, vs)
