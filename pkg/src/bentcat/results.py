"""Brute-force re-checks of the published worked examples, rendered as ``docs/results.md``.

Run ``python -m bentcat.results [path]`` to regenerate the document. Every
number in it is recomputed here; nothing is copied from the reference data
except the inputs being checked.
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass, field
from pathlib import Path

from .boolcore import is_bent
from .construct import (
    build_theorem2,
    check_hi_condition,
    concat4,
    hi_condition_violations,
    monomial_quadruple,
    trace_monomial,
)
from .permutmap import add, mm_bent, monomial_map
from .reference import (
    M3_ALPHA_EXPONENTS,
    M3_D,
    M3_K,
    M3_PRINTED_BETA_EXPONENTS,
    M4_ALPHA_EXPONENTS,
    M4_D,
    M4_PRINTED_H,
    M4_PRINTED_S,
    b8_function,
    decomposing_h_hs,
    decomposing_h_pis,
    decomposing_h_s,
    extra_subspaces,
    m3_field,
    m4_field,
    m4_printed_hs,
)
from .subspace import (
    SharingVerdict,
    Subspace,
    canonical_subspace,
    canonical_unique,
    check_sharing_theorem,
    common_m_subspaces,
    is_in_MM_sharp,
    verify_m_subspace,
)


M4_TITLE = "Monomial example, m = 4, d = 14, k = 1 (trace form)"
M3_TITLE = "Monomial example, m = 3, d = 6, k = 3, sigma = identity"
SHARING_TITLE = "Decomposing-h example, m = 4 (dot form): shared-subspace test"
DOC_TITLES = (M4_TITLE, M3_TITLE, SHARING_TITLE)


@dataclass
class Record:
    title: str
    verdict: str  # "confirmed" or "discrepancy"
    lines: list[str] = field(default_factory=list)


def _tr(ctx, beta: int, const: int, k: int = 1) -> str:
    mono = "y" if k == 1 else f"y^{k}"
    if beta == 0:
        core = "0"
    elif beta == 1:
        core = f"Tr({mono})"
    else:
        core = f"Tr({ctx.format_element(beta)}*{mono})"
    return core + (" + 1" if const else "")


def m4_monomial_record() -> Record:
    ctx = m4_field()
    pis = [monomial_map(ctx, ctx.a(e), M4_D) for e in M4_ALPHA_EXPONENTS]
    hs = m4_printed_hs(ctx)
    rec = Record(M4_TITLE, "discrepancy")
    pi4 = add(add(pis[0], pis[1]), pis[2])
    rec.lines.append(f"pi_4 = pi_1 + pi_2 + pi_3 equals a^8*y^14: {pi4 == monomial_map(ctx, ctx.a(8), M4_D)}")
    shown = ", ".join(f"h_{i} = {_tr(ctx, 0 if e is None else ctx.a(e), c)}" for i, (e, c) in enumerate(M4_PRINTED_H, 1))
    rec.lines.append(f"reference values: {shown}")
    bad = hi_condition_violations(pis, hs)
    rec.lines.append(
        f"sum of h_i(pi_i^-1(y)) = 1 fails at {len(bad)} of 16 points: y in "
        + "{" + ", ".join(ctx.format_element(y) for y in bad) + "}"
    )
    s_ref = trace_monomial(ctx, ctx.a(M4_PRINTED_S[0]), 1, M4_PRINTED_S[1])
    rec.lines.append(
        f"reference s = {_tr(ctx, ctx.a(M4_PRINTED_S[0]), 1)} equals h_1+h_2+h_3+h_4 of the reference values: "
        f"{s_ref == hs[0] + hs[1] + hs[2] + hs[3]}"
    )
    # keep h_1..h_3 and search h_4 = Tr(beta y) + c
    found = [
        (b, c)
        for b in range(ctx.order)
        for c in (0, 1)
        if check_hi_condition(pis, [*hs[:3], trace_monomial(ctx, b, 1, c)])
    ]
    rec.lines.append(
        "changing only h_4 within Tr(beta*y) + c, the solutions are: " + ", ".join(_tr(ctx, b, c) for b, c in found)
    )
    b, c = found[0]
    h4 = trace_monomial(ctx, b, 1, c)
    s = hs[0] + hs[1] + hs[2] + h4
    s_beta = next(x for x in range(ctx.order) for cc in (0, 1) if trace_monomial(ctx, x, 1, cc) == s)
    rec.lines.append(f"witness set: h_1..h_3 as given, h_4 = {_tr(ctx, b, c)}, hence s = {_tr(ctx, s_beta, s[0])}")
    spec, f = build_theorem2(pis, hs[:3], s, "trace", ctx)
    report = check_sharing_theorem(*spec.pieces)
    rec.lines.append(f"with the witness set: concatenation bent = {is_bent(f)}")
    rec.lines.append(f"with the witness set: exactly one common 4-dim M-subspace = {canonical_unique(list(spec.pieces))}")
    rec.lines.append(f"with the witness set: shared-subspace test verdict = {report.verdict.value}")
    rec.lines.append(f"with the witness set: exhaustive search finds the concatenation in M# = {is_in_MM_sharp(f)}")
    return rec


def m3_monomial_record() -> Record:
    ctx = m3_field()
    alphas = [ctx.a(e) for e in M3_ALPHA_EXPONENTS]
    q = monomial_quadruple(ctx, M3_D, M3_K, alphas)
    rec = Record(M3_TITLE, "discrepancy")
    fmt = ctx.format_element
    rec.lines.append("formula betas: (" + ", ".join(fmt(b) for b in q.betas) + ")")
    ref = [ctx.a(e) for e in M3_PRINTED_BETA_EXPONENTS]
    rec.lines.append("reference betas: (" + ", ".join(fmt(b) for b in ref) + ")")
    pis = list(q.pis[:3])
    rec.lines.append(f"formula betas satisfy sum of h_i(pi_i^-1(y)) = 1: {check_hi_condition(pis, q.hs)}")
    ref_hs = [trace_monomial(ctx, b, M3_K, 1 if i == 3 else 0) for i, b in enumerate(ref)]
    bad = hi_condition_violations(pis, ref_hs)
    rec.lines.append(
        f"reference betas fail it at {len(bad)} of 8 points: y in " + "{" + ", ".join(fmt(y) for y in bad) + "}"
    )
    b8 = b8_function()
    rec.lines.append(f"reference B_8 ANF: bent = {is_bent(b8)}, in M# = {is_in_MM_sharp(b8)}")
    rec.lines.append(f"reference ANF equals the formula quadruple in dot form x.pi(y): {q.concatenate('dot') == b8}")
    rec.lines.append(f"reference ANF equals the formula quadruple in trace form Tr(x pi(y)): {q.concatenate('trace') == b8}")
    for form in ("dot", "trace"):
        ref_f = concat4(*[mm_bent(p, h, form, ctx) for p, h in zip(q.pis, ref_hs)])
        rec.lines.append(f"reference betas in {form} form reproduce the ANF: {ref_f == b8}, bent: {is_bent(ref_f)}")
    return rec


def _basis_text(u: Subspace) -> str:
    return "[" + " ".join(u.rows()) + "]"


def sharing_record() -> Record:
    spec, f = build_theorem2(decomposing_h_pis(), decomposing_h_hs(), decomposing_h_s())
    rec = Record(SHARING_TITLE, "discrepancy")
    common = common_m_subspaces(list(spec.pieces), 3)
    can = canonical_subspace(8)
    inside = [u for u in common if u.issubspace(can)]
    outside = {u for u in common if not u.issubspace(can)}
    rec.lines.append(
        f"common 3-dim M-subspaces: {len(common)} ({len(inside)} inside F_2^4 x 0, "
        f"the other {len(outside)} equal the 8 reference bases: {outside == set(extra_subspaces())})"
    )
    report = check_sharing_theorem(*spec.pieces)
    rec.lines.append(f"shared-subspace test verdict: {report.verdict.value}")
    bad_vs = sorted({V for V, _, _ in report.failures}, key=lambda u: u.basis)
    conds = sorted({c for _, _, c in report.failures})
    rec.lines.append(
        f"{len(report.failures)} (V, v) pairs have no witness u, all for condition {conds}, "
        f"over {len(bad_vs)} subspaces V and {len({v for _, v, _ in report.failures})} distinct shifts v"
    )
    for V in bad_vs:
        rec.lines.append(f"V without witness: {_basis_text(V)}")
    V, v, _ = next(t for t in report.failures if t[0] == bad_vs[0])
    w = Subspace.from_vectors(10, [*V.basis, v | 0b11 << 8])
    rec.lines.append(
        f"for V = {_basis_text(V)} and v = {format(v, '08b')[::-1]} the subspace W = V + <(v, 1, 1)> "
        f"is a 4-dim M-subspace of the concatenation: {verify_m_subspace(f, w)}"
    )
    rec.lines.append("a subspace like W is what the missing condition is meant to rule out")
    rec.lines.append(f"exhaustive 5-dim M-subspace search: concatenation in M# = {is_in_MM_sharp(f)}")
    if report.verdict is SharingVerdict.CERTIFIED:  # pragma: no cover
        rec.verdict = "confirmed"
    return rec


def records() -> list[Record]:
    return [m4_monomial_record(), m3_monomial_record(), sharing_record()]


def render() -> str:
    out = [
        "# Re-checked worked examples",
        "",
        "Generated by `python -m bentcat.results`. Do not edit by hand.",
        "",
        "Each record evaluates the published values by brute force. Where they fail, the record",
        "gives a witness set derived from the formulas. The acceptance suite only uses witness sets.",
        "",
    ]
    for rec in records():
        out.append(f"## {rec.title}")
        out.append("")
        out.append(f"Outcome: **{rec.verdict}**")
        out.append("")
        out.extend(f"- {ln}" for ln in rec.lines)
        out.append("")
    return "\n".join(out)


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(description="regenerate the results document")
    ap.add_argument("path", nargs="?", default="docs/results.md")
    args = ap.parse_args(argv)
    path = Path(args.path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(render(), encoding="utf-8")
    print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
