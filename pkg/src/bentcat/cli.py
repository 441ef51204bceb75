"""``bentcat`` command line: analyze, construct, verify, lift, catalog.

Exit codes: 0 verified or constructed, 1 a property fails, 2 bad input,
3 a search budget ran out.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .boolcore import (
    ParseError,
    TruthTable,
    anf_from_tt,
    degree,
    dual,
    format_truth_table,
    is_affine,
    is_bent,
    is_homogeneous,
    linear_structures,
    parse_anf,
    parse_truth_table,
    tt_from_anf,
    lift_to_high,
)
from .construct import (
    ConstructionError,
    build_theorem2,
    check_hi_condition,
    concat4,
    dual_bent_condition,
    homogeneous_concat,
    lift_Am,
    lift_h,
    monomial_quadruple,
)
from .gf2m import ModulusError, field_new, parse_modulus
from .permutmap import format_permutation, parse_permutation
from .subspace import Membership, SharingVerdict, check_sharing_theorem, mm_sharp_verdict

EXIT_OK, EXIT_PROPERTY, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3
CATALOG_NAME = "catalog.jsonl"


class InputError(Exception):
    pass


# ---------------------------------------------------------------------------
# catalog
# ---------------------------------------------------------------------------


def table_id(t: TruthTable) -> str:
    return hashlib.sha256(f"n={t.n};".encode() + t.to_bytes()).hexdigest()


@dataclass
class CatalogRecord:
    id: str
    n: int
    recipe: dict
    verdicts: dict
    timing: dict = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_json(cls, line: str) -> CatalogRecord:
        return cls(**json.loads(line))

    def same_result(self, other: CatalogRecord) -> bool:
        return (self.id, self.n, self.recipe, self.verdicts) == (other.id, other.n, other.recipe, other.verdicts)


def append_record(path: Path, rec: CatalogRecord) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("a", encoding="utf-8") as fh:
        fh.write(rec.to_json() + "\n")


def read_catalog(path: Path) -> list[CatalogRecord]:
    if not path.exists():
        return []
    return [CatalogRecord.from_json(ln) for ln in path.read_text(encoding="utf-8").splitlines() if ln.strip()]


def analyze_table(t: TruthTable, budget: float | None = None) -> tuple[dict, dict]:
    """Verdicts and timings for one table; the same dict the catalog stores."""
    timing: dict[str, float] = {}
    t0 = time.perf_counter()
    a = anf_from_tt(t)
    verdicts: dict = {"degree": degree(a), "homogeneous": is_homogeneous(a), "affine": is_affine(t)}
    bent = t.n % 2 == 0 and not verdicts["affine"] and is_bent(t)
    verdicts["bent"] = bent
    verdicts["linear_structures_dim"] = len(linear_structures(t)).bit_length() - 1
    timing["basic"] = time.perf_counter() - t0
    if bent:
        verdicts["dual_degree"] = degree(dual(t))
        v = mm_sharp_verdict(t, budget)
        verdicts["mm_sharp"] = v.status.value
        verdicts["method"] = "exhaustive M-subspace search"
        verdicts["canonical_witness"] = v.canonical
        timing["mm_sharp"] = v.elapsed
    return verdicts, timing


# ---------------------------------------------------------------------------
# input helpers
# ---------------------------------------------------------------------------


def _read_text(source: str) -> str:
    if source == "-":
        return sys.stdin.read()
    p = Path(source)
    if p.is_file():
        return p.read_text(encoding="utf-8")
    return source


def load_function(source: str, n: int | None = None) -> TruthTable:
    """File path or inline text, either a truth table (``n=...`` header) or an ANF."""
    text = _read_text(source)
    if text.lstrip().startswith("n=") or text.lstrip().startswith("#"):
        return parse_truth_table(text)
    return tt_from_anf(parse_anf(text, n))


def load_permutation(source: str, base: Path | None = None):
    p = Path(source)
    if base is not None and not p.is_absolute():
        p = base / p
    if not p.is_file():
        raise InputError(f"permutation file not found: {p}")
    return parse_permutation(p.read_text(encoding="utf-8"))


def parse_recipe(text: str) -> dict[str, str]:
    recipe: dict[str, str] = {}
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError(f"expected key=value, got {line!r}", no, 1)
        key, value = (s.strip() for s in line.split("=", 1))
        if not key:
            raise ParseError("empty key", no, 1)
        recipe[key] = value
    return recipe


def _split(value: str) -> list[str]:
    return [v.strip() for v in value.split(",") if v.strip()]


def _need(recipe: dict, key: str) -> str:
    if key not in recipe:
        raise InputError(f"recipe is missing '{key}'")
    return recipe[key]


def _recipe_function(recipe: dict, key: str, n: int, base: Path) -> TruthTable:
    value = _need(recipe, key)
    p = base / value
    if p.is_file():
        t = load_function(str(p), n)
    else:
        t = tt_from_anf(parse_anf(value, n))
    if t.n != n:
        raise InputError(f"'{key}' has {t.n} variables, expected {n}")
    return t


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_analyze(args) -> int:
    t = load_function(args.source, args.n)
    print(f"n: {t.n}")
    if is_affine(t):
        print("bent: no (affine)")
        return EXIT_PROPERTY
    verdicts, timing = analyze_table(t, args.mm_search_budget)
    print(f"degree: {verdicts['degree']}")
    print(f"homogeneous: {'yes' if verdicts['homogeneous'] else 'no'}")
    print(f"linear structures: dimension {verdicts['linear_structures_dim']}")
    if t.n % 2:
        print("bent: no (odd number of variables)")
        return EXIT_PROPERTY
    if not verdicts["bent"]:
        print("bent: no")
        return EXIT_PROPERTY
    print("bent: yes")
    print(f"dual degree: {verdicts['dual_degree']}")
    status = verdicts["mm_sharp"]
    if status == Membership.INSIDE.value:
        how = "canonical subspace found" if verdicts["canonical_witness"] else "M-subspace found"
        print(f"M#: inside ({how})")
    elif status == Membership.OUTSIDE.value:
        print(f"M#: outside (no {t.n // 2}-dim M-subspace, {timing['mm_sharp']:.2f} s)")
    else:
        print("M#: inconclusive (search budget exhausted)")
        return EXIT_BUDGET
    return EXIT_OK


def _construct(recipe: dict, args, base: Path) -> tuple[TruthTable, dict, dict[str, str]]:
    """Run a recipe; returns the function, the normalized recipe and extra files to write."""
    kind = recipe.get("construction", "monomial")
    form = recipe.get("form", args.form or ("trace" if kind == "monomial" else "dot"))
    modulus = parse_modulus(recipe.get("modulus", args.modulus))
    extra: dict[str, str] = {}
    if kind == "monomial":
        m = int(_need(recipe, "m"))
        ctx = field_new(m, modulus)
        alphas = [ctx.parse_element(a) for a in _split(_need(recipe, "alphas"))]
        sigma = tuple(int(s) for s in _split(recipe.get("sigma", "1,2,3,4")))
        q = monomial_quadruple(ctx, int(_need(recipe, "d")), int(_need(recipe, "k")), alphas, sigma)
        f = q.concatenate(form)
        norm = {"construction": kind, "form": form, "modulus": hex(ctx.modulus), **q.describe()}
        return f, norm, extra
    if kind == "theorem2":
        pis = [load_permutation(p, base) for p in _split(_need(recipe, "pis"))]
        if len(pis) != 3:
            raise InputError("'pis' must list three permutation files")
        m = pis[0].m
        hs = [_recipe_function(recipe, f"h{i}", m, base) for i in (1, 2, 3)]
        s = _recipe_function(recipe, "s", m, base) if "s" in recipe else None
        ctx = field_new(m, modulus) if form == "trace" else None
        _, f = build_theorem2(pis, hs, s, form, ctx)
        return f, {"construction": kind, "form": form, **{k: recipe[k] for k in sorted(recipe) if k != "construction"}}, extra
    if kind == "homogeneous":
        n = int(_need(recipe, "n"))
        parts = [_recipe_function(recipe, key, n, base) for key in ("f1", "q2", "q3", "s")]
        f = homogeneous_concat(*parts)
        return f, {"construction": kind, **{k: recipe[k] for k in sorted(recipe) if k != "construction"}}, extra
    if kind == "lift":
        pis = [load_permutation(p, base) for p in _split(_need(recipe, "pis"))]
        sigmas = [load_permutation(p, base) for p in _split(_need(recipe, "sigmas"))]
        phis = lift_Am(pis, sigmas)
        for i, phi in enumerate(phis, start=1):
            extra[f"phi{i}.perm"] = format_permutation(phi)
        m = pis[0].m
        if "h1" not in recipe:
            # no h data: the result is the plain lifted permutation triple
            return None, {"construction": kind, "pis": recipe["pis"], "sigmas": recipe["sigmas"]}, extra  # type: ignore[return-value]
        hs = [_recipe_function(recipe, f"h{i}", m, base) for i in (1, 2, 3, 4)]
        gs = [_recipe_function(recipe, f"g{i}", m, base) for i in (1, 2, 3, 4)]
        lifted = lift_h(hs, gs, pis, sigmas)
        s = lifted[0] + lifted[1] + lifted[2] + lifted[3]
        _, f = build_theorem2(phis, lifted[:3], s)
        norm = {"construction": kind, **{k: recipe[k] for k in sorted(recipe) if k != "construction"}}
        return f, norm, extra
    raise InputError(f"unknown construction {kind!r}; expected theorem2, monomial, lift or homogeneous")


def cmd_construct(args) -> int:
    recipe_path = Path(args.recipe)
    if not recipe_path.is_file():
        raise InputError(f"recipe file not found: {recipe_path}")
    recipe = parse_recipe(recipe_path.read_text(encoding="utf-8"))
    out = Path(args.out)
    t0 = time.perf_counter()
    f, norm, extra = _construct(recipe, args, recipe_path.parent)
    build_time = time.perf_counter() - t0
    out.mkdir(parents=True, exist_ok=True)
    for name, body in extra.items():
        (out / name).write_text(body, encoding="utf-8")
        print(f"wrote {out / name}")
    if f is None:
        return EXIT_OK
    verdicts, timing = analyze_table(f, args.mm_search_budget)
    timing["construct"] = build_time
    rec = CatalogRecord(table_id(f), f.n, norm, verdicts, timing)
    table_path = out / f"{rec.id[:16]}.tt"
    table_path.write_text(format_truth_table(f), encoding="utf-8")
    append_record(out / CATALOG_NAME, rec)
    print(f"wrote {table_path}")
    print(f"bent: {'yes' if verdicts['bent'] else 'no'}, degree {verdicts['degree']}, M#: {verdicts.get('mm_sharp', 'n/a')}")
    if verdicts.get("mm_sharp") == Membership.INCONCLUSIVE.value:
        return EXIT_BUDGET
    return EXIT_OK if verdicts["bent"] else EXIT_PROPERTY


def cmd_verify(args) -> int:
    fs = [load_function(p) for p in args.tables]
    n = fs[0].n
    if any(f.n != n for f in fs):
        raise InputError("the four tables must have the same number of variables")
    status = EXIT_OK
    bad = [i for i, f in enumerate(fs, start=1) if n % 2 or not is_bent(f)]
    for i in bad:
        print(f"f{i}: not bent")
    if args.s is not None:
        s = load_function(args.s)
        if s.n == n // 2:
            s = lift_to_high(s, n // 2)
        holds = fs[3] == fs[0] + fs[1] + fs[2] + s
        print(f"f4 = f1+f2+f3+s: {'yes' if holds else 'no'}")
        status = status or (EXIT_OK if holds else EXIT_PROPERTY)
    f = concat4(*fs)
    concat_bent = f.n % 2 == 0 and is_bent(f)
    if bad:
        print("dual condition: undefined (non-bent piece)")
    else:
        print(f"dual condition: {'holds' if dual_bent_condition(*fs) else 'fails'}")
    print(f"concat: {'bent' if concat_bent else 'not bent'}")
    if args.sharing:
        report = check_sharing_theorem(*fs, concat_bent=concat_bent)
        print(f"sharing-theorem: {report}")
        if report.verdict is not SharingVerdict.CERTIFIED:
            status = status or EXIT_PROPERTY
    if bad or not concat_bent:
        return EXIT_PROPERTY
    return status


def cmd_lift(args) -> int:
    pis = [load_permutation(p) for p in args.pis]
    sigmas = [load_permutation(p) for p in args.sigmas]
    phis = lift_Am(pis, sigmas)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for i, phi in enumerate(phis, start=1):
        path = out / f"phi{i}.perm"
        path.write_text(format_permutation(phi), encoding="utf-8")
        print(f"wrote {path}")
    if args.hs or args.gs:
        if not (args.hs and args.gs):
            raise InputError("--hs and --gs go together")
        m = pis[0].m
        hs = [load_function(p, m) for p in args.hs]
        gs = [load_function(p, m) for p in args.gs]
        lifted = lift_h(hs, gs, pis, sigmas)
        for i, h in enumerate(lifted, start=1):
            path = out / f"h{i}.tt"
            path.write_text(format_truth_table(h), encoding="utf-8")
            print(f"wrote {path}")
        print(f"lifted condition: {'holds' if check_hi_condition(phis, lifted) else 'fails'}")
    print(f"(A_{pis[0].m + 1}): holds")
    return EXIT_OK


def cmd_catalog(args) -> int:
    path = Path(args.catalog) if args.catalog else Path(args.out) / CATALOG_NAME
    recs = read_catalog(path)
    if not recs:
        print(f"no records in {path}")
        return EXIT_OK
    for r in recs:
        v = r.verdicts
        print(
            f"{r.id[:16]}  n={r.n}  {r.recipe.get('construction', '?'):<11} "
            f"bent={'yes' if v.get('bent') else 'no'}  deg={v.get('degree')}  M#={v.get('mm_sharp', 'n/a')}"
        )
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--form", choices=("dot", "trace"), default=None, help="inner product used by MM pieces")
    common.add_argument("--mm-search-budget", type=float, default=None, metavar="SECONDS")
    common.add_argument("--modulus", default="default", help="field modulus as a hex mask, or 'default'")
    common.add_argument("--out", default="out", help="output directory (default: ./out)")

    parser = argparse.ArgumentParser(prog="bentcat", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="report bentness, degree and M# membership")
    p.add_argument("source", help="truth-table or ANF file, inline text, or - for stdin")
    p.add_argument("--n", type=int, default=None, help="number of variables for ANF input")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("construct", parents=[common], help="run a key=value recipe")
    p.add_argument("recipe")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", parents=[common], help="check a quadruple f1..f4")
    p.add_argument("tables", nargs=4)
    p.add_argument("--s", default=None, help="claimed s with f4 = f1+f2+f3+s")
    p.add_argument("--sharing", action="store_true", help="also run the shared-M-subspace test")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("lift", parents=[common], help="lift (A_m) triples and h data to m+1")
    p.add_argument("--pis", nargs=3, required=True)
    p.add_argument("--sigmas", nargs=3, required=True)
    p.add_argument("--hs", nargs=4)
    p.add_argument("--gs", nargs=4)
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("catalog", parents=[common], help="inspect the JSON-lines catalog")
    csub = p.add_subparsers(dest="action", required=True)
    pl = csub.add_parser("list", parents=[common])
    pl.add_argument("--catalog", default=None, help="catalog file (default: <out>/catalog.jsonl)")
    pl.set_defaults(func=cmd_catalog)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ConstructionError as exc:
        print(f"construction failed: {exc}", file=sys.stderr)
        return EXIT_PROPERTY
    except (InputError, ModulusError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
