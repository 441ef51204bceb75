import numpy as np
import pytest

from bentcat.boolcore import TruthTable, anf_from_tt, compose_affine, degree, dual, is_bent, is_homogeneous, parse_anf, tt_from_anf
from bentcat.construct import (
    AmPropertyError,
    ConcatenationSpec,
    ConstructionError,
    all_sigmas,
    build_theorem2,
    check_hi_condition,
    concat4,
    decompose,
    dual_bent_condition,
    hi_condition_violations,
    homogeneous_concat,
    lift_Am,
    lift_h,
    monomial_quadruple,
    trace_monomial,
)
from bentcat.gf2m import field_new
from bentcat.permutmap import PointMap, add, check_Am, compose, inverse, mm_bent, monomial_map
from bentcat.reference import (
    decomposing_h_hs,
    decomposing_h_pis,
    decomposing_h_s,
    homogeneous_data,
    homogeneous_matrix,
    m4_printed_hs,
)
from bentcat.subspace import is_in_MM_sharp

from conftest import random_perm, random_table


def concat_by_anf(f1, f2, f3, f4):
    """Coset-wise definition: f(z, z_{n+1}, z_{n+2}) picks f1, f3, f2, f4."""
    n = f1.n
    pick = {(0, 0): f1, (1, 0): f3, (0, 1): f2, (1, 1): f4}
    bits = [pick[(i >> n & 1, i >> (n + 1) & 1)][i & ((1 << n) - 1)] for i in range(1 << (n + 2))]
    return TruthTable(n + 2, bits)


def test_concat4_layout_and_anf(rng):
    fs = [random_table(rng, 4) for _ in range(4)]
    f = concat4(*fs)
    assert f == concat_by_anf(*fs)
    # ANF identity f1 + z_{n+1}(f1+f3) + z_{n+2}(f1+f2) + z_{n+1}z_{n+2}(f1+f2+f3+f4)
    n = 4
    monos = set()
    for g, tag in ((fs[0], 0), (fs[0] + fs[2], 1), (fs[0] + fs[1], 2), (fs[0] + fs[1] + fs[2] + fs[3], 3)):
        monos ^= {m | tag << n for m in anf_from_tt(g).monomials}
    assert anf_from_tt(f).monomials == monos
    assert decompose(f) == tuple(fs)
    g = fs[0]
    same = concat4(g, g, g, g)
    assert all(same[i] == g[i % 16] for i in range(64))
    with pytest.raises(ValueError):
        concat4(fs[0], fs[1], fs[2], random_table(rng, 2))
    spec = ConcatenationSpec(*fs)
    assert concat4(spec) == f


def test_decompose_round_trip_random(rng):
    for _ in range(50):
        fs = tuple(random_table(rng, 3) for _ in range(4))
        assert decompose(concat4(*fs)) == fs


def test_dual_bent_condition_small_cases(rng):
    f = mm_bent(random_perm(rng, 2), random_table(rng, 2))
    g = mm_bent(random_perm(rng, 2), random_table(rng, 2))
    assert dual_bent_condition(f, f, g, g.complement())
    assert not dual_bent_condition(f, f, g, g)
    with pytest.raises(ValueError, match="f3 is not bent"):
        dual_bent_condition(f, f, TruthTable.zeros(4), g)


def test_dual_condition_equivalent_to_bent_concat(rng):
    agree = {True: 0, False: 0}
    for trial in range(200):
        p, q = random_perm(rng, 3), random_perm(rng, 3)
        h1, h2, h3 = (random_table(rng, 3) for _ in range(3))
        # with pi1 = pi2 = p and pi3 = pi4 = q the h-condition fixes h4 up to a complement
        h4 = TruthTable(3, (h1 + h2).bits[inverse(p).table[q.table]]) + h3
        if trial % 2:
            h4 = h4.complement()
        if trial % 4 == 1:
            bits = h4.bits.copy()
            bits[int(rng.integers(8))] ^= 1
            h4 = TruthTable(3, bits)
        fs = [mm_bent(p, h1), mm_bent(p, h2), mm_bent(q, h3), mm_bent(q, h4)]
        order = rng.permutation(4)
        fs = [fs[i] for i in order]
        lhs = dual_bent_condition(*fs)
        assert lhs == is_bent(concat4(*fs))
        agree[lhs] += 1
    assert agree[True] >= 30 and agree[False] >= 30


def test_decomposing_h_example():
    pis, hs, s = decomposing_h_pis(), decomposing_h_hs(), decomposing_h_s()
    h4 = hs[0] + hs[1] + hs[2] + s
    assert check_hi_condition(pis, [*hs, h4])
    spec, f = build_theorem2(pis, hs, s)
    assert f.n == 10 and is_bent(f)
    assert dual_bent_condition(*spec.pieces)
    assert spec.f4 == spec.f1 + spec.f2 + spec.f3 + spec.s_lifted()
    assert spec.f1 + spec.f2 + spec.f3 != spec.f4  # s is not zero here


def test_hi_condition_pointwise_oracle():
    pis, hs, s = decomposing_h_pis(), decomposing_h_hs(), decomposing_h_s()
    h4 = hs[0] + hs[1] + hs[2] + s
    pi4 = add(add(*pis[:2]), pis[2])
    invs = [inverse(p) for p in (*pis, pi4)]
    for x in range(16):
        assert sum(h[inv(x)] for h, inv in zip((*hs, h4), invs)) % 2 == 1


def test_hi_condition_by_cancellation(rng):
    p, q = random_perm(rng, 3), random_perm(rng, 3)
    h, g = random_table(rng, 3), random_table(rng, 3)
    # pi1 = pi2, pi4 = pi3: choose h4 so that h4(pi3^-1) = h3(pi3^-1) + 1
    assert check_hi_condition([p, p, q], [h, h, g, g.complement()])
    assert not check_hi_condition([p, p, q], [h, h, g, g])
    assert hi_condition_violations([p, p, q], [h, h, g, g]) == list(range(8))


def test_hi_condition_rejects_non_Am(rng):
    for _ in range(100):
        ps = [random_perm(rng, 3) for _ in range(3)]
        if not check_Am(*ps):
            break
    with pytest.raises(AmPropertyError) as err:
        check_hi_condition(ps, [TruthTable.zeros(3)] * 4)
    assert err.value.condition == "(A_m) property"


def test_build_theorem2_s_zero_and_failure(rng):
    ctx = field_new(3)
    q = monomial_quadruple(ctx, 6, 2, [ctx.a(e) for e in (1, 4, 6)])
    spec, f = build_theorem2(q.pis[:3], q.hs[:3], q.hs[0] + q.hs[1] + q.hs[2] + q.hs[3], "trace", ctx)
    assert is_bent(f)
    pis = decomposing_h_pis()
    with pytest.raises(ConstructionError, match="dual condition on h") as err:
        build_theorem2(pis, decomposing_h_hs(), None)
    assert "y=" in str(err.value)


def test_theorem2_with_s_zero_is_plain_sum(rng):
    # pi1 = pi2 = p, pi3 = p(y + e1) and h1 + h2 = y1 makes the s = 0 condition hold
    p = random_perm(rng, 3)
    q = PointMap(3, p.table[np.arange(8) ^ 1])
    hs = [TruthTable(3, [y & 1 for y in range(8)]), TruthTable.zeros(3), random_table(rng, 3)]
    spec, f = build_theorem2([p, p, q], hs)
    assert spec.f4 == spec.f1 + spec.f2 + spec.f3
    assert is_bent(f)


def test_m4_printed_hs_fail_and_witness_passes():
    ctx = field_new(4)
    pis = [monomial_map(ctx, ctx.a(e), 14) for e in (1, 2, 4)]
    printed = m4_printed_hs(ctx)
    bad = hi_condition_violations(pis, printed)
    assert len(bad) == 8
    witness = [trace_monomial(ctx, b, 1, c) for b, c in ((0, 0), (1, 0), (ctx.a(1), 0), (ctx.a(8), 1))]
    assert check_hi_condition(pis, witness)
    s = witness[0] + witness[1] + witness[2] + witness[3]
    assert s == trace_monomial(ctx, ctx.a(5), 1, 1)
    spec, f = build_theorem2(pis, witness[:3], s, "trace", ctx)
    assert is_bent(f)


def test_monomial_quadruple_m3_betas():
    ctx = field_new(3)
    alphas = [ctx.a(e) for e in (1, 4, 6)]
    q = monomial_quadruple(ctx, 6, 3, alphas)
    assert q.alphas[3] == 1
    # beta_i = alpha_{i+1} / alpha_i^3
    expected = [ctx.div(q.alphas[(i + 1) % 4], ctx.pow(q.alphas[i], 3)) for i in range(4)]
    assert list(q.betas) == expected
    assert [ctx.format_element(b) for b in q.betas] == ["a", "a", "a^3", "a"]
    assert check_hi_condition(q.pis[:3], q.hs)
    assert is_bent(q.concatenate())
    assert q.hs[3] == trace_monomial(ctx, q.betas[3], 3).complement()


def test_monomial_quadruple_k0_constants():
    ctx = field_new(3)
    q = monomial_quadruple(ctx, 6, 0, [ctx.a(e) for e in (1, 4, 6)])
    assert all(h.is_constant() for h in q.hs)
    assert sum(h[0] for h in q.hs) % 2 == 1
    assert check_hi_condition(q.pis[:3], q.hs)


@pytest.mark.parametrize(
    "d, alphas, condition",
    [
        (3, (1, 4, 6), "d^2 = 1 mod 2^m - 1"),
        (6, (1, 1, 6), "pairwise distinct"),
        (6, (0, 4, 6), "nonzero alphas"),
    ],
)
def test_monomial_quadruple_preconditions(d, alphas, condition):
    ctx = field_new(3)
    elems = [ctx.a(e) if e else 0 for e in alphas]
    with pytest.raises(ConstructionError) as err:
        monomial_quadruple(ctx, d, 1, elems)
    assert err.value.condition == condition


def test_monomial_preconditions_on_alpha4_and_order():
    ctx = field_new(4)
    a = ctx.a
    with pytest.raises(ConstructionError) as err:
        monomial_quadruple(ctx, 14, 1, [a(1), a(4), a(1) ^ a(4)])
    assert err.value.condition == "nonzero alpha_4"
    with pytest.raises(ConstructionError) as err:
        monomial_quadruple(ctx, 1, 1, [a(1), a(2), a(4)])
    assert err.value.condition == "alpha^(d+1) = 1"
    with pytest.raises(ConstructionError) as err:
        monomial_quadruple(ctx, 14, 1, [a(1), a(2), a(4)], (1, 1, 2, 3))
    assert err.value.condition == "sigma is a permutation"


def test_monomial_quadruple_totality_m3():
    ctx = field_new(3)
    alphas = [ctx.a(e) for e in (1, 4, 6)]
    for sigma in all_sigmas():
        for k in range(0, 7):
            q = monomial_quadruple(ctx, 6, k, alphas, sigma)
            assert check_hi_condition(q.pis[:3], q.hs)
            assert all(inverse(p) == p for p in q.pis)
            assert is_bent(q.concatenate())
            assert dual_bent_condition(*q.functions())


def test_monomial_quadruple_m5_all_sigma():
    ctx = field_new(5)
    rng = np.random.default_rng(5)
    for _ in range(4):
        exps = rng.choice(31, 3, replace=False)
        alphas = [ctx.a(int(e)) for e in exps]
        if alphas[0] ^ alphas[1] ^ alphas[2] == 0:
            continue
        for sigma in all_sigmas():
            q = monomial_quadruple(ctx, 30, int(rng.integers(1, 31)), alphas, sigma)
            assert check_hi_condition(q.pis[:3], q.hs)


def test_lift_Am_duplicate_branch_and_chain():
    pis = decomposing_h_pis()
    phis = lift_Am(pis, pis)
    for phi, p in zip(phis, pis):
        assert phi.table[:16].tolist() == p.table.tolist()
        assert (phi.table[16:] - 16).tolist() == p.table.tolist()
    assert check_Am(*phis)
    ctx = field_new(4)
    mono = [monomial_map(ctx, ctx.a(e), 14) for e in (1, 2, 4)]
    up = lift_Am(pis, mono)
    assert check_Am(*up)
    up2 = lift_Am(up, lift_Am(mono, pis))
    assert up2[0].m == 6 and check_Am(*up2)


def test_lift_Am_with_linear_precomposition():
    pis = decomposing_h_pis()
    rows = [1, 3, 6, 12]
    table = np.zeros(16, dtype=int)
    for y in range(16):
        for i in range(4):
            if y >> i & 1:
                table[y] ^= rows[i]
    L = PointMap(4, table)
    sigmas = [compose(p, L) for p in pis]
    assert check_Am(*sigmas)
    assert check_Am(*lift_Am(pis, sigmas))


def test_lift_Am_rejects_bad_input(rng):
    pis = decomposing_h_pis()
    for _ in range(100):
        ps = [random_perm(rng, 4) for _ in range(3)]
        if not check_Am(*ps):
            break
    with pytest.raises(AmPropertyError):
        lift_Am(pis, ps)


def test_lift_h_cases():
    pis, hs3, s = decomposing_h_pis(), decomposing_h_hs(), decomposing_h_s()
    hs = [*hs3, hs3[0] + hs3[1] + hs3[2] + s]
    lifted = lift_h(hs, hs, pis, pis)
    for h, lh in zip(hs, lifted):
        assert lh.bits[:16].tolist() == h.bits.tolist() == lh.bits[16:].tolist()
    phis = lift_Am(pis, pis)
    assert check_hi_condition(phis, lifted)
    with pytest.raises(ConstructionError, match="gs do not satisfy"):
        lift_h(hs, [TruthTable.zeros(4)] * 4, pis, pis)


def test_lift_h_from_two_monomial_quadruples_and_bent_chain():
    ctx = field_new(3)
    q1 = monomial_quadruple(ctx, 6, 3, [ctx.a(e) for e in (1, 4, 6)])
    q2 = monomial_quadruple(ctx, 6, 5, [ctx.a(e) for e in (2, 3, 4)], (2, 3, 4, 1))
    lifted = lift_h(q1.hs, q2.hs, q1.pis[:3], q2.pis[:3])
    phis = lift_Am(q1.pis[:3], q2.pis[:3])
    assert check_hi_condition(phis, lifted)
    s = lifted[0] + lifted[1] + lifted[2] + lifted[3]
    _, f = build_theorem2(phis, lifted[:3], s)
    assert f.n == 10 and is_bent(f)
    # second lift: B_{2m+2k+2} with k = 2
    lifted2 = lift_h(lifted, lifted, phis, phis)
    phis2 = lift_Am(phis, phis)
    _, f2 = build_theorem2(phis2, lifted2[:3], lifted2[0] + lifted2[1] + lifted2[2] + lifted2[3])
    assert f2.n == 12 and is_bent(f2)


def test_homogeneous_example():
    f1, q2, q3, s = homogeneous_data()
    f = homogeneous_concat(f1, q2, q3, s)
    a = anf_from_tt(f)
    assert f.n == 10 and is_bent(f)
    assert degree(a) == 3 and all(m.bit_count() == 3 for m in a.monomials)
    assert not is_in_MM_sharp(f)


def test_homogeneous_matrix_maps_to_mm_forms():
    f1, q2, q3, s = homogeneous_data()
    fs = [f1, f1 + q2, f1 + q3, f1 + q2 + q3 + s]
    spec, _ = build_theorem2(decomposing_h_pis(), decomposing_h_hs(), decomposing_h_s())
    A = homogeneous_matrix()
    for fi, gi in zip(fs, spec.pieces):
        assert compose_affine(fi, A) == gi


def test_homogeneous_preconditions():
    f1, q2, q3, s = homogeneous_data()
    quad_s = s + tt_from_anf(parse_anf("z1 z2", 8))
    with pytest.raises(ConstructionError, match="s linear"):
        homogeneous_concat(f1, q2, q3, quad_s)
    with pytest.raises(ConstructionError, match="q2 homogeneous of degree 2"):
        homogeneous_concat(f1, f1, q3, s)
    with pytest.raises(ConstructionError, match="f1 homogeneous of degree 3"):
        homogeneous_concat(q2, q2, q3, s)
    other = tt_from_anf(parse_anf("z1 + z2", 8))
    with pytest.raises(ConstructionError, match="dual condition"):
        homogeneous_concat(f1, q2, q3, other)
