"""Bent 4-concatenation of Maiorana-McFarland functions and the builders that feed it.

Layout of ``f1||f2||f3||f4`` on ``n + 2`` variables: the two new variables are
the top index bits, ``z_{n+1}`` = bit ``n`` and ``z_{n+2}`` = bit ``n + 1``,
with ``f(z,0,0) = f1``, ``f(z,0,1) = f2``, ``f(z,1,0) = f3``, ``f(z,1,1) = f4``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .boolcore import TruthTable, degree, dual, is_bent, is_homogeneous, lift_to_high, anf_from_tt
from .gf2m import FieldContext
from .permutmap import AmCertificate, PointMap, add, check_Am, inverse, is_permutation, mm_bent


class ConstructionError(ValueError):
    """A construction hypothesis does not hold; ``condition`` names which one."""

    def __init__(self, condition: str, detail: str = ""):
        super().__init__(f"{condition}: {detail}" if detail else condition)
        self.condition = condition
        self.detail = detail


class AmPropertyError(ConstructionError):
    def __init__(self, cert: AmCertificate, which: str = "permutations"):
        super().__init__(
            "(A_m) property",
            f"{which} fail: {cert.failure} at y={cert.point}",
        )
        self.certificate = cert


@dataclass(frozen=True)
class ConcatenationSpec:
    f1: TruthTable
    f2: TruthTable
    f3: TruthTable
    f4: TruthTable
    s: TruthTable | None = None
    metadata: dict = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        n = self.f1.n
        if any(f.n != n for f in self.pieces):
            raise ValueError("all four pieces must have the same number of variables")
        if self.s is not None and 2 * self.s.n != n:
            raise ValueError("s must be a function of the y-half only")

    @property
    def pieces(self) -> tuple[TruthTable, TruthTable, TruthTable, TruthTable]:
        return (self.f1, self.f2, self.f3, self.f4)

    @property
    def n(self) -> int:
        return self.f1.n

    def s_lifted(self) -> TruthTable:
        if self.s is None:
            return TruthTable.zeros(self.n)
        return lift_to_high(self.s, self.n // 2)

    def concatenate(self) -> TruthTable:
        return concat4(*self.pieces)


def concat4(*args: TruthTable | ConcatenationSpec) -> TruthTable:
    """``f1||f2||f3||f4``; accepts four tables or one :class:`ConcatenationSpec`."""
    if len(args) == 1 and isinstance(args[0], ConcatenationSpec):
        args = args[0].pieces
    if len(args) != 4:
        raise TypeError("concat4 takes four truth tables or a ConcatenationSpec")
    f1, f2, f3, f4 = args
    if not f1.n == f2.n == f3.n == f4.n:
        raise ValueError("size mismatch between the four pieces")
    return TruthTable(f1.n + 2, np.concatenate([f1.bits, f3.bits, f2.bits, f4.bits]))


def decompose(f: TruthTable) -> tuple[TruthTable, TruthTable, TruthTable, TruthTable]:
    """Inverse of :func:`concat4`: the restrictions to the four cosets."""
    if f.n < 3:
        raise ValueError("need at least 3 variables")
    q = 1 << (f.n - 2)
    blocks = [TruthTable(f.n - 2, f.bits[i * q : (i + 1) * q]) for i in range(4)]
    return blocks[0], blocks[2], blocks[1], blocks[3]


def dual_bent_condition(f1: TruthTable, f2: TruthTable, f3: TruthTable, f4: TruthTable) -> bool:
    """True iff ``f1* + f2* + f3* + f4*`` is the constant 1."""
    duals = []
    for i, f in enumerate((f1, f2, f3, f4), start=1):
        if f.n % 2 or not is_bent(f):
            raise ValueError(f"f{i} is not bent")
        duals.append(dual(f))
    total = duals[0] + duals[1] + duals[2] + duals[3]
    return bool(np.all(total.bits == 1))


# ---------------------------------------------------------------------------
# condition on the h_i
# ---------------------------------------------------------------------------


def _require_Am(pis: Sequence[PointMap], which: str = "permutations") -> PointMap:
    if len(pis) != 3:
        raise ValueError("expected three permutations")
    try:
        cert = check_Am(*pis)
    except ValueError as exc:
        raise ConstructionError("(A_m) property", f"{which}: {exc}") from None
    if not cert:
        raise AmPropertyError(cert, which)
    return cert.pi4  # type: ignore[return-value]


def hi_condition_values(pis: Sequence[PointMap], hs: Sequence[TruthTable]) -> np.ndarray:
    """``sum_i h_i(pi_i^-1(y))`` for every ``y``, ``pi_4 = pi_1 + pi_2 + pi_3``."""
    pi4 = _require_Am(pis)
    if len(hs) != 4:
        raise ValueError("expected four functions h_1..h_4")
    m = pis[0].m
    total = np.zeros(1 << m, dtype=np.uint8)
    for p, h in zip([*pis, pi4], hs):
        if h.n != m:
            raise ValueError(f"h has {h.n} variables, expected {m}")
        total ^= h.bits[inverse(p).table]
    return total


def check_hi_condition(pis: Sequence[PointMap], hs: Sequence[TruthTable]) -> bool:
    """Whether ``sum_i h_i(pi_i^-1(y)) = 1`` for all ``y``.

    Raises :class:`AmPropertyError` when the permutations lack (A_m).
    """
    return bool(np.all(hi_condition_values(pis, hs) == 1))


def hi_condition_violations(pis: Sequence[PointMap], hs: Sequence[TruthTable]) -> list[int]:
    return np.flatnonzero(hi_condition_values(pis, hs) != 1).tolist()


def build_theorem2(
    pis: Sequence[PointMap],
    hs: Sequence[TruthTable],
    s: TruthTable | None = None,
    form: str = "dot",
    ctx: FieldContext | None = None,
) -> tuple[ConcatenationSpec, TruthTable]:
    """Four MM functions with ``f4 = f1 + f2 + f3 + s(y)`` and their bent concatenation.

    Every hypothesis is re-checked; a failure raises :class:`ConstructionError`.
    """
    pi4 = _require_Am(pis)
    if len(hs) != 3:
        raise ValueError("expected h_1, h_2, h_3")
    m = pis[0].m
    if s is None:
        s = TruthTable.zeros(m)
    h4 = hs[0] + hs[1] + hs[2] + s
    all_h = [*hs, h4]
    bad = hi_condition_violations(pis, all_h)
    if bad:
        raise ConstructionError("dual condition on h", f"sum of h_i(pi_i^-1(y)) is 0 at y={bad[0]}")
    fs = [mm_bent(p, h, form, ctx) for p, h in zip([*pis, pi4], all_h)]
    spec = ConcatenationSpec(
        *fs,
        s=s,
        metadata={"construction": "theorem2", "form": form, "pis": [*pis, pi4], "hs": all_h},
    )
    if fs[3] != fs[0] + fs[1] + fs[2] + spec.s_lifted():
        raise AssertionError("f4 != f1 + f2 + f3 + s")  # pragma: no cover
    f = spec.concatenate()
    if not is_bent(f):
        raise AssertionError("concatenation is not bent although the hypotheses hold")  # pragma: no cover
    return spec, f


# ---------------------------------------------------------------------------
# lifting to m + 1
# ---------------------------------------------------------------------------


def _piecewise(top: PointMap, bottom: PointMap) -> PointMap:
    """``(y, 1) -> (top(y), 1)`` and ``(y, 0) -> (bottom(y), 0)``; ``y_{m+1}`` is the top bit."""
    m = top.m
    return PointMap(m + 1, np.concatenate([bottom.table, top.table + (1 << m)]))


def lift_Am(pis: Sequence[PointMap], sigmas: Sequence[PointMap]) -> tuple[PointMap, PointMap, PointMap]:
    """Piecewise maps ``phi_i`` acting as ``pi_i`` where ``y_{m+1} = 1`` and ``sigma_i`` elsewhere."""
    _require_Am(pis, "pis")
    _require_Am(sigmas, "sigmas")
    if pis[0].m != sigmas[0].m:
        raise ValueError("pis and sigmas live on different spaces")
    phis = tuple(_piecewise(p, q) for p, q in zip(pis, sigmas))
    cert = check_Am(*phis)
    if not cert:  # pragma: no cover - guaranteed by construction
        raise AmPropertyError(cert, "lifted maps")
    return phis  # type: ignore[return-value]


def lift_h(
    hs: Sequence[TruthTable],
    gs: Sequence[TruthTable],
    pis: Sequence[PointMap] | None = None,
    sigmas: Sequence[PointMap] | None = None,
) -> tuple[TruthTable, ...]:
    """``h'_i(y, y_{m+1}) = y_{m+1} h_i(y) + (y_{m+1} + 1) g_i(y)``.

    With ``pis`` and ``sigmas`` the inputs are checked against the condition on
    the h_i and the lifted functions are re-checked against the lifted maps.
    """
    if len(hs) != 4 or len(gs) != 4:
        raise ValueError("expected four h_i and four g_i")
    lifted = tuple(TruthTable(h.n + 1, np.concatenate([g.bits, h.bits])) for h, g in zip(hs, gs))
    if pis is not None and sigmas is not None:
        if not check_hi_condition(pis, hs):
            raise ConstructionError("dual condition on h", "hs do not satisfy it for pis")
        if not check_hi_condition(sigmas, gs):
            raise ConstructionError("dual condition on h", "gs do not satisfy it for sigmas")
        phis = lift_Am(pis, sigmas)
        if not check_hi_condition(phis, lifted):  # pragma: no cover - guaranteed by construction
            raise AssertionError("lifted functions violate the condition")
    return lifted


# ---------------------------------------------------------------------------
# monomial quadruples
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MonomialQuadruple:
    ctx: FieldContext
    d: int
    k: int
    alphas: tuple[int, int, int, int]
    sigma: tuple[int, int, int, int]
    betas: tuple[int, int, int, int]
    pis: tuple[PointMap, PointMap, PointMap, PointMap]
    hs: tuple[TruthTable, TruthTable, TruthTable, TruthTable]

    def functions(self, form: str = "trace") -> list[TruthTable]:
        return [mm_bent(p, h, form, self.ctx) for p, h in zip(self.pis, self.hs)]

    def concatenate(self, form: str = "trace") -> TruthTable:
        return concat4(*self.functions(form))

    def describe(self) -> dict:
        fmt = self.ctx.format_element
        return {
            "m": self.ctx.m,
            "d": self.d,
            "k": self.k,
            "alphas": [fmt(a) for a in self.alphas],
            "sigma": list(self.sigma),
            "betas": [fmt(b) for b in self.betas],
        }


def trace_monomial(ctx: FieldContext, beta: int, k: int, constant: int = 0) -> TruthTable:
    """``y -> Tr(beta * y^k) + constant`` as an ``m``-variable table."""
    values = ctx.trace_table[ctx.mul_table(beta, ctx.pow_table(k))]
    return TruthTable(ctx.m, values ^ (constant & 1))


def monomial_quadruple(
    ctx: FieldContext,
    d: int,
    k: int,
    alphas: Sequence[int],
    sigma: Sequence[int] = (1, 2, 3, 4),
) -> MonomialQuadruple:
    """Involutions ``pi_i(y) = alpha_i y^d`` with ``h_i(y) = Tr(beta_i y^k)`` (``h_4`` gets ``+1``).

    ``sigma`` permutes the indices 1..4 and ``sigma(alpha_j) = alpha_{sigma[j-1]}``;
    ``beta_i = sigma(alpha_{i+1}) / alpha_i^k`` with indices taken cyclically.
    """
    q1 = ctx.group_order
    if (d * d) % q1 != 1:
        raise ConstructionError("d^2 = 1 mod 2^m - 1", f"d={d}, d^2 mod {q1} = {(d * d) % q1}")
    if len(alphas) != 3:
        raise ValueError("expected three alphas")
    alphas = [int(a) for a in alphas]
    if any(a == 0 or a >= ctx.order for a in alphas):
        raise ConstructionError("nonzero alphas", "every alpha_i must be a nonzero field element")
    if len(set(alphas)) != 3:
        raise ConstructionError("pairwise distinct", "alpha_1, alpha_2, alpha_3 must be pairwise distinct")
    a4 = alphas[0] ^ alphas[1] ^ alphas[2]
    if a4 == 0:
        raise ConstructionError("nonzero alpha_4", "alpha_1 + alpha_2 + alpha_3 = 0")
    all_a = (*alphas, a4)
    for i, a in enumerate(all_a, start=1):
        if ctx.pow(a, d + 1) != 1:
            raise ConstructionError("alpha^(d+1) = 1", f"alpha_{i} = {ctx.format_element(a)}")
    sigma = tuple(int(s) for s in sigma)
    if sorted(sigma) != [1, 2, 3, 4]:
        raise ConstructionError("sigma is a permutation", f"{sigma} is not a permutation of 1..4")

    def sig(j: int) -> int:
        return all_a[sigma[j - 1] - 1]

    betas = tuple(ctx.div(sig(i % 4 + 1), ctx.pow(all_a[i - 1], k)) for i in range(1, 5))
    from .permutmap import monomial_map

    pis = tuple(monomial_map(ctx, a, d) for a in all_a)
    hs = tuple(trace_monomial(ctx, b, k, 1 if i == 3 else 0) for i, b in enumerate(betas))
    quad = MonomialQuadruple(ctx, d, k, all_a, sigma, betas, pis, hs)  # type: ignore[arg-type]
    if add(add(pis[0], pis[1]), pis[2]) != pis[3]:  # pragma: no cover
        raise AssertionError("pi_4 != pi_1 + pi_2 + pi_3")
    return quad


def all_sigmas() -> list[tuple[int, int, int, int]]:
    return list(itertools.permutations((1, 2, 3, 4)))  # type: ignore[arg-type]


# ---------------------------------------------------------------------------
# homogeneous cubic concatenation
# ---------------------------------------------------------------------------


def homogeneous_concat(f1: TruthTable, q2: TruthTable, q3: TruthTable, s: TruthTable) -> TruthTable:
    """``f1||f1+q2||f1+q3||f1+q2+q3+s`` for cubic ``f1``, quadratic ``q2, q3``, linear ``s``."""
    n = f1.n
    if any(g.n != n for g in (q2, q3, s)):
        raise ConstructionError("equal sizes", "f1, q2, q3, s must have the same number of variables")

    def homogeneous_of(g: TruthTable, deg: int, name: str) -> None:
        a = anf_from_tt(g)
        if not a.monomials or not is_homogeneous(a) or degree(a) != deg:
            raise ConstructionError(f"{name} homogeneous of degree {deg}", f"{name} has degree {degree(a)}")

    homogeneous_of(f1, 3, "f1")
    homogeneous_of(q2, 2, "q2")
    homogeneous_of(q3, 2, "q3")
    s_anf = anf_from_tt(s)
    if s_anf.monomials and (degree(s_anf) != 1 or 0 in s_anf.monomials):
        raise ConstructionError("s linear", "s must be linear (degree 1, no constant) or zero")
    f2, f3 = f1 + q2, f1 + q3
    f123 = f1 + f2 + f3
    for name, g in (("f1", f1), ("f2", f2), ("f3", f3), ("f1+f2+f3", f123)):
        if not is_bent(g):
            raise ConstructionError(f"{name} bent")
    f4 = f123 + s
    lhs = dual(f1) + dual(f2) + dual(f3)
    if lhs != dual(f4).complement():
        raise ConstructionError("dual condition", "f1* + f2* + f3* != (f1+f2+f3+s)* + 1")
    f = concat4(f1, f2, f3, f4)
    a = anf_from_tt(f)
    if not (is_homogeneous(a) and degree(a) == 3):  # pragma: no cover
        raise AssertionError("concatenation is not homogeneous cubic")
    return f
