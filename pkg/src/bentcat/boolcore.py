"""Boolean functions as truth tables, their ANF, Walsh spectrum and derivatives.

Index convention used everywhere in the package: bit ``i - 1`` of an integer
index is the coordinate ``x_i``, so ``x_1`` is the least significant bit.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

MAX_VARS = 20


class ParseError(ValueError):
    """Malformed truth-table or ANF text; carries a 1-based line and column."""

    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def parity(values: np.ndarray) -> np.ndarray:
    """Bitwise parity of each entry of an integer array."""
    return (np.bitwise_count(values) & 1).astype(np.uint8)


def _check_n(n: int) -> None:
    if not 1 <= n <= MAX_VARS:
        raise ValueError(f"variable count must be in 1..{MAX_VARS}, got {n}")


@dataclass(frozen=True, eq=False)
class TruthTable:
    """Value table of an ``n``-variable Boolean function, one uint8 per point."""

    n: int
    bits: np.ndarray

    def __post_init__(self) -> None:
        _check_n(self.n)
        bits = np.ascontiguousarray(self.bits, dtype=np.uint8)
        if bits.shape != (1 << self.n,):
            raise ValueError(f"expected {1 << self.n} values for n={self.n}, got shape {bits.shape}")
        if bits.size and bits.max() > 1:
            raise ValueError("truth table entries must be 0 or 1")
        bits = bits.copy()
        bits.setflags(write=False)
        object.__setattr__(self, "bits", bits)

    @classmethod
    def zeros(cls, n: int) -> TruthTable:
        return cls(n, np.zeros(1 << n, dtype=np.uint8))

    @classmethod
    def ones(cls, n: int) -> TruthTable:
        return cls(n, np.ones(1 << n, dtype=np.uint8))

    @classmethod
    def from_function(cls, n: int, fn: Callable[[int], int]) -> TruthTable:
        """Tabulate ``fn`` evaluated on every integer index ``0 .. 2^n - 1``."""
        return cls(n, np.fromiter((fn(i) & 1 for i in range(1 << n)), dtype=np.uint8, count=1 << n))

    @classmethod
    def from_string(cls, s: str) -> TruthTable:
        n = len(s).bit_length() - 1
        if len(s) != 1 << n:
            raise ValueError(f"truth table length {len(s)} is not a power of two")
        return cls(n, np.frombuffer(s.encode(), dtype=np.uint8) - ord("0"))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruthTable):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.bits, other.bits)

    def __hash__(self) -> int:
        return hash((self.n, self.to_bytes()))

    def __len__(self) -> int:
        return 1 << self.n

    def __getitem__(self, index: int) -> int:
        return int(self.bits[index])

    def __add__(self, other: TruthTable) -> TruthTable:
        if not isinstance(other, TruthTable):
            return NotImplemented
        if other.n != self.n:
            raise ValueError(f"cannot add functions of {self.n} and {other.n} variables")
        return TruthTable(self.n, self.bits ^ other.bits)

    __xor__ = __add__

    def complement(self) -> TruthTable:
        return TruthTable(self.n, self.bits ^ 1)

    def weight(self) -> int:
        return int(self.bits.sum())

    def is_constant(self) -> bool:
        return bool(self.bits.min() == self.bits.max())

    def to_bytes(self) -> bytes:
        return np.packbits(self.bits, bitorder="little").tobytes()

    def to_string(self) -> str:
        return (self.bits + ord("0")).tobytes().decode()

    def __repr__(self) -> str:
        body = self.to_string() if self.n <= 6 else self.to_string()[:64] + "..."
        return f"TruthTable(n={self.n}, {body})"


@dataclass(frozen=True)
class AnfForm:
    """Algebraic normal form as a set of monomial masks."""

    n: int
    monomials: frozenset[int]

    def __post_init__(self) -> None:
        _check_n(self.n)
        object.__setattr__(self, "monomials", frozenset(self.monomials))
        if any(not 0 <= mono < (1 << self.n) for mono in self.monomials):
            raise ValueError(f"monomial mask out of range for n={self.n}")

    @property
    def degree(self) -> int:
        return degree(self)

    def __add__(self, other: AnfForm) -> AnfForm:
        if other.n != self.n:
            raise ValueError("variable count mismatch")
        return AnfForm(self.n, self.monomials ^ other.monomials)

    def __str__(self) -> str:
        return format_anf(self)


@dataclass(frozen=True, eq=False)
class WalshSpectrum:
    n: int
    values: np.ndarray

    def __post_init__(self) -> None:
        values = np.ascontiguousarray(self.values).copy()
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    def __getitem__(self, index: int) -> int:
        return int(self.values[index])


def _mobius_inplace(a: np.ndarray, n: int) -> None:
    for i in range(n):
        view = a.reshape(-1, 2, 1 << i)
        view[:, 1, :] ^= view[:, 0, :]


def anf_from_tt(t: TruthTable) -> AnfForm:
    coeffs = t.bits.copy()
    _mobius_inplace(coeffs, t.n)
    return AnfForm(t.n, frozenset(np.flatnonzero(coeffs).tolist()))


def tt_from_anf(a: AnfForm) -> TruthTable:
    coeffs = np.zeros(1 << a.n, dtype=np.uint8)
    if a.monomials:
        coeffs[list(a.monomials)] = 1
    _mobius_inplace(coeffs, a.n)
    return TruthTable(a.n, coeffs)


def _butterfly(w: np.ndarray, n: int) -> np.ndarray:
    for i in range(n):
        view = w.reshape(-1, 2, 1 << i)
        left = view[:, 0, :].copy()
        view[:, 0, :] += view[:, 1, :]
        view[:, 1, :] = left - view[:, 1, :]
    return w


def walsh(t: TruthTable) -> WalshSpectrum:
    """Fast Walsh-Hadamard transform, ``values[a] = sum_x (-1)^(f(x) + a.x)``."""
    w = 1 - 2 * t.bits.astype(np.int32)
    return WalshSpectrum(t.n, _butterfly(w, t.n))


def inverse_walsh(spectrum: WalshSpectrum) -> TruthTable:
    """Recover the function from its spectrum; raises if the values are not a spectrum."""
    n = spectrum.n
    signs = _butterfly(spectrum.values.astype(np.int64), n)
    if not np.all(np.abs(signs) == 1 << n):
        raise ValueError("values are not the Walsh spectrum of a Boolean function")
    return TruthTable(n, (signs < 0).astype(np.uint8))


def autocorrelation(t: TruthTable) -> np.ndarray:
    """``r[a] = sum_x (-1)^(f(x) + f(x + a))`` computed through the spectrum."""
    w = walsh(t).values.astype(np.int64)
    return _butterfly(w * w, t.n) >> t.n


def is_bent(t: TruthTable) -> bool:
    if t.n % 2:
        raise ValueError(f"bentness is defined for even n only, got n={t.n}")
    return bool(np.all(np.abs(walsh(t).values) == 1 << (t.n // 2)))


def dual(t: TruthTable) -> TruthTable:
    values = walsh(t).values
    if t.n % 2 or not np.all(np.abs(values) == 1 << (t.n // 2)):
        raise ValueError("dual is defined only for bent functions")
    return TruthTable(t.n, (values < 0).astype(np.uint8))


def derivative(t: TruthTable, a: int) -> TruthTable:
    """``D_a f(x) = f(x + a) + f(x)``."""
    if not 0 <= a < (1 << t.n):
        raise ValueError(f"direction {a} out of range for n={t.n}")
    idx = np.arange(1 << t.n) ^ a
    return TruthTable(t.n, t.bits ^ t.bits[idx])


def linear_structures(t: TruthTable) -> frozenset[int]:
    """All ``a`` such that ``f(x + a) + f(x)`` is constant."""
    r = autocorrelation(t)
    return frozenset(np.flatnonzero(np.abs(r) == 1 << t.n).tolist())


def degree(a: AnfForm | TruthTable) -> int:
    if isinstance(a, TruthTable):
        a = anf_from_tt(a)
    return max((mono.bit_count() for mono in a.monomials), default=0)


def is_homogeneous(a: AnfForm | TruthTable) -> bool:
    if isinstance(a, TruthTable):
        a = anf_from_tt(a)
    return len({mono.bit_count() for mono in a.monomials}) <= 1


def is_affine(t: TruthTable) -> bool:
    return degree(t) <= 1


def linear_map_images(rows: Sequence[int], n: int) -> np.ndarray:
    """Images ``zA`` of every index ``z`` for the row-vector map given by ``rows``.

    ``rows[i]`` is the image of the unit vector ``e_{i+1}`` as an ``n``-bit mask.
    """
    if len(rows) != n:
        raise ValueError(f"need {n} rows, got {len(rows)}")
    images = np.zeros(1 << n, dtype=np.int64)
    for i, row in enumerate(rows):
        block = 1 << i
        images[block : 2 * block] = images[:block] ^ row
    return images


def compose_affine(t: TruthTable, rows: Sequence[int], shift: int = 0) -> TruthTable:
    """The function ``z -> f(zA + c)`` for ``A`` given by its rows and ``c = shift``."""
    images = linear_map_images(rows, t.n) ^ shift
    return TruthTable(t.n, t.bits[images])


def linear_function(n: int, mask: int) -> TruthTable:
    """``x -> mask . x``."""
    return TruthTable(n, parity(np.arange(1 << n) & mask))


def lift_to_high(h: TruthTable, low_vars: int) -> TruthTable:
    """View ``h(y)`` as a function of ``(x, y)`` with ``x`` the ``low_vars`` low bits."""
    return TruthTable(h.n + low_vars, np.repeat(h.bits, 1 << low_vars))


# ---------------------------------------------------------------------------
# text formats
# ---------------------------------------------------------------------------


def _line_col(text: str, offset: int) -> tuple[int, int]:
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, col


def parse_truth_table(text: str) -> TruthTable:
    """Parse the two-line ``n=<k>`` / ``0101...`` format."""
    lines = [(i + 1, ln.strip()) for i, ln in enumerate(text.splitlines())]
    lines = [(no, ln) for no, ln in lines if ln and not ln.startswith("#")]
    if len(lines) != 2:
        raise ParseError("expected a header line 'n=<k>' followed by one line of bits", 1, 1)
    (hno, header), (bno, body) = lines
    m = re.fullmatch(r"n\s*=\s*(\d+)", header)
    if not m:
        raise ParseError(f"bad header {header!r}, expected 'n=<k>'", hno, 1)
    n = int(m.group(1))
    if not 1 <= n <= MAX_VARS:
        raise ParseError(f"n={n} outside 1..{MAX_VARS}", hno, header.index(m.group(1)) + 1)
    for col, ch in enumerate(body, start=1):
        if ch not in "01":
            raise ParseError(f"unexpected character {ch!r}", bno, col)
    if len(body) != 1 << n:
        raise ParseError(f"expected {1 << n} bits, found {len(body)}", bno, len(body) + 1)
    return TruthTable.from_string(body)


def format_truth_table(t: TruthTable) -> str:
    return f"n={t.n}\n{t.to_string()}\n"


_ANF_FACTOR = re.compile(r"[A-Za-z]_?\{?(\d+)\}?|[01]|\*|\S")


def parse_anf(text: str, n: int | None = None) -> AnfForm:
    """Parse ``x1*x2 + x3 + 1``.

    Any single letter may name variables (``z_4`` and ``y4`` both mean
    ``x4``); factors are joined by ``*`` or whitespace, terms by ``+`` or
    ``^``. Repeated terms cancel. ``n`` defaults to the largest index seen.
    """
    monos: set[int] = set()
    max_var = 0
    bounds = [-1] + [m.start() for m in re.finditer(r"[+^]", text)] + [len(text)]
    if not text.strip():
        return AnfForm(n or 1, frozenset())
    for lo, hi in zip(bounds, bounds[1:]):
        mono: int | None = 0
        expect_factor = True
        seen = False
        for tok in _ANF_FACTOR.finditer(text, lo + 1, hi):
            where = _line_col(text, tok.start())
            if tok.group() == "*":
                if expect_factor:
                    raise ParseError("'*' without a left factor", *where)
                expect_factor = True
                continue
            if tok.group(1) is not None:
                idx = int(tok.group(1))
                if idx < 1:
                    raise ParseError("variable indices start at 1", *where)
                max_var = max(max_var, idx)
                if mono is not None:
                    mono |= 1 << (idx - 1)
            elif tok.group() == "0":
                mono = None
            elif tok.group() != "1":
                raise ParseError(f"unexpected character {tok.group()!r}", *where)
            expect_factor = False
            seen = True
        if not seen or expect_factor:
            raise ParseError("empty term" if not seen else "dangling '*'", *_line_col(text, min(hi, len(text) - 1)))
        if mono is not None:
            monos ^= {mono}
    if n is None:
        n = max(max_var, 1)
    elif max_var > n:
        raise ParseError(f"variable index {max_var} exceeds n={n}", 1, 1)
    return AnfForm(n, frozenset(monos))


def format_anf(a: AnfForm, var: str = "x") -> str:
    if not a.monomials:
        return "0"

    def key(mono: int) -> tuple[int, list[int]]:
        return (mono.bit_count(), [i for i in range(a.n) if mono >> i & 1])

    parts = []
    for mono in sorted(a.monomials, key=key):
        if mono == 0:
            parts.append("1")
        else:
            parts.append("*".join(f"{var}{i + 1}" for i in range(a.n) if mono >> i & 1))
    return " + ".join(parts)


def anf_from_terms(n: int, terms: Iterable[Iterable[int]]) -> AnfForm:
    """ANF from 1-based variable index tuples, e.g. ``[(1, 2), (3,), ()]``."""
    monos: set[int] = set()
    for term in terms:
        mono = 0
        for i in term:
            mono |= 1 << (i - 1)
        monos ^= {mono}
    return AnfForm(n, frozenset(monos))
