"""Published worked-example data, kept verbatim so regressions can rebuild it.

Nothing here is trusted: every consumer re-verifies the claimed properties.
"""

from __future__ import annotations

from .boolcore import TruthTable, parse_anf, tt_from_anf
from .gf2m import FieldContext, field_new
from .permutmap import PointMap, from_coordinates
from .subspace import Subspace

# --- decomposing-h example, m = 4, dot form --------------------------------

PI1_COORDS = (
    "y1 + y2 + y1 y4 + y2 y4 + y3 y4",
    "y1 + y1 y2 + y3 + y2 y3 + y2 y4",
    "y1 y2 + y3 + y1 y3 + y2 y4 + y3 y4",
    "y1 + y3 + y1 y3 + y2 y3 + y4 + y1 y4 + y2 y4",
)
PI2_OFFSET = ("y2 + y3 + y4", "1 + y2 + y3 + y4", "y1 + y3", "y1 + y3")
PI3_OFFSET = ("y1 + y4", "y1 + y2", "1 + y1 + y2", "1 + y1 + y4")
H_ANFS = (
    "y1 y3 y4",
    "y2 y3 + y1 y4 + y2 y4 + y3 y4 + y1 y3 y4",
    "y1 y3 + y2 y3 + y3 y4 + y1 y3 y4",
)
S_ANF = "y1 + y2 + y4"

# the common 3-dim M-subspaces not inside F_2^4 x {0}; leftmost entry is x_1
EXTRA_SUBSPACES = (
    ("10000101", "01100000", "00010101"),
    ("10001111", "01001111", "00110000"),
    ("10010000", "01000101", "00100101"),
    ("10010000", "01010101", "00110101"),
    ("10010000", "01100000", "00000101"),
    ("10011111", "01011111", "00110000"),
    ("11000000", "00101111", "00011111"),
    ("11000000", "00110000", "00001111"),
)

# --- monomial example, m = 4, d = 14, trace form ---------------------------

M4_D = 14
M4_ALPHA_EXPONENTS = (1, 2, 4)
# printed h_i = Tr(beta_i y) + c_i as (beta exponent or None for beta=0, c_i)
M4_PRINTED_H = ((None, 0), (0, 0), (1, 0), (13, 1))
M4_PRINTED_S = (11, 1)

# --- monomial example, m = 3, d = 6, k = 3, sigma = id ---------------------

M3_D = 6
M3_K = 3
M3_ALPHA_EXPONENTS = (1, 4, 6)
M3_PRINTED_BETA_EXPONENTS = (3, 2, 1, 0)

B8_ANF = """
z_2 z_4 + z_1 z_5 + z_4 z_5 + z_3 z_4 z_5 + z_6 + z_1 z_6 + z_3 z_6 + z_1 z_4 z_6 + z_2 z_4 z_6
+ z_2 z_5 z_6 + z_4 z_7 + z_1 z_4 z_7 + z_2 z_4 z_7 + z_3 z_4 z_7 + z_5 z_7 + z_2 z_5 z_7 + z_3 z_5 z_7
+ z_1 z_4 z_5 z_7 + z_3 z_4 z_5 z_7 + z_6 z_7 + z_1 z_6 z_7 + z_2 z_6 z_7 + z_1 z_4 z_6 z_7 + z_5 z_6 z_7
+ z_1 z_5 z_6 z_7 + z_2 z_5 z_6 z_7 + z_3 z_5 z_6 z_7 + z_3 z_4 z_8 + z_2 z_5 z_8 + z_1 z_4 z_5 z_8
+ z_2 z_4 z_5 z_8 + z_1 z_6 z_8 + z_2 z_4 z_6 z_8 + z_3 z_4 z_6 z_8 + z_3 z_5 z_6 z_8 + z_7 z_8 + z_4 z_7 z_8
+ z_5 z_7 z_8 + z_6 z_7 z_8 + z_5 z_6 z_7 z_8
"""

# --- homogeneous cubic example, n = 8 --------------------------------------

HOM_F1 = """
z1 z2 z5 + z1 z2 z8 + z1 z3 z4 + z1 z3 z5 + z1 z3 z6 + z1 z3 z7 + z1 z4 z5 + z1 z4 z7
+ z1 z4 z8 + z1 z5 z8 + z1 z6 z8 + z2 z3 z4 + z2 z3 z5 + z2 z4 z5 + z2 z4 z6 + z2 z4 z8
+ z2 z5 z6 + z2 z6 z7 + z2 z6 z8 + z2 z7 z8 + z3 z4 z6 + z3 z4 z8 + z3 z5 z6 + z3 z5 z7
+ z3 z6 z8 + z4 z7 z8 + z5 z6 z7 + z5 z6 z8
"""
HOM_Q2 = "z1 z4 + z1 z5 + z1 z7 + z5 z7 + z1 z8 + z4 z8 + z6 z7 + z6 z8 + z7 z8"
HOM_Q3 = "z1 z3 + z1 z4 + z1 z7 + z1 z8 + z2 z3 + z2 z8 + z3 z5 + z3 z8 + z4 z7 + z5 z6 + z6 z7 + z7 z8"
HOM_S = "z1 + z4 + z6 + z8"
HOM_A = (
    "10010101",
    "01010110",
    "00110011",
    "00001111",
    "00010000",
    "00000100",
    "00000010",
    "00000001",
)


def anf_table(text: str, n: int) -> TruthTable:
    return tt_from_anf(parse_anf(text, n))


def row_mask(row: str) -> int:
    """Row string with the leftmost character as bit 0."""
    return sum(1 << i for i, c in enumerate(row) if c == "1")


def decomposing_h_pis() -> tuple[PointMap, PointMap, PointMap]:
    pi1 = from_coordinates([anf_table(c, 4) for c in PI1_COORDS], "pi_1")
    out = [pi1]
    for name, offset in (("pi_2", PI2_OFFSET), ("pi_3", PI3_OFFSET)):
        coords = [anf_table(a, 4) + anf_table(b, 4) for a, b in zip(PI1_COORDS, offset)]
        out.append(from_coordinates(coords, name))
    return tuple(out)  # type: ignore[return-value]


def decomposing_h_hs() -> tuple[TruthTable, TruthTable, TruthTable]:
    return tuple(anf_table(h, 4) for h in H_ANFS)  # type: ignore[return-value]


def decomposing_h_s() -> TruthTable:
    return anf_table(S_ANF, 4)


def extra_subspaces() -> list[Subspace]:
    return [Subspace.from_rows(rows) for rows in EXTRA_SUBSPACES]


def b8_function() -> TruthTable:
    return anf_table(B8_ANF, 8)


def homogeneous_data() -> tuple[TruthTable, TruthTable, TruthTable, TruthTable]:
    return tuple(anf_table(t, 8) for t in (HOM_F1, HOM_Q2, HOM_Q3, HOM_S))  # type: ignore[return-value]


def homogeneous_matrix() -> list[int]:
    return [row_mask(r) for r in HOM_A]


def m4_field() -> FieldContext:
    return field_new(4)


def m3_field() -> FieldContext:
    return field_new(3)


def m4_printed_hs(ctx: FieldContext) -> list[TruthTable]:
    from .construct import trace_monomial

    return [trace_monomial(ctx, 0 if e is None else ctx.a(e), 1, c) for e, c in M4_PRINTED_H]
