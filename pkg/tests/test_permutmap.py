import itertools

import numpy as np
import pytest

from bentcat.boolcore import AnfForm, ParseError, TruthTable, dual, is_bent, parse_anf, tt_from_anf
from bentcat.gf2m import field_new
from bentcat.permutmap import (
    PointMap,
    add,
    check_Am,
    check_P1,
    component,
    component_linear_structures,
    compose,
    coordinate_anfs,
    differential_uniformity,
    format_permutation,
    from_coordinates,
    identity,
    inverse,
    is_APN,
    is_permutation,
    map_degree,
    mm_bent,
    mm_dual,
    monomial_map,
    parse_permutation,
)
from bentcat.reference import PI2_OFFSET, anf_table, decomposing_h_hs, decomposing_h_pis

from conftest import dot, random_perm, random_table


def second_derivative_never_zero(p):
    size = 1 << p.m
    for v in range(1, size):
        for w in range(1, size):
            if w == v:
                continue
            for y in range(size):
                if p(y) ^ p(y ^ v) ^ p(y ^ w) ^ p(y ^ v ^ w) == 0:
                    return False
    return True


def random_quadratic_map(rng, m):
    """Each output coordinate a random quadratic ANF plus linear terms."""
    coords = []
    quad = [a | b for a, b in itertools.combinations([1 << i for i in range(m)], 2)]
    for _ in range(m):
        monos = {mono for mono in quad if rng.integers(2)}
        monos |= {1 << i for i in range(m) if rng.integers(2)}
        coords.append(tt_from_anf(AnfForm(m, frozenset(monos))))
    return from_coordinates(coords)


def test_identity_constant_and_inverse(rng):
    e = identity(3)
    assert inverse(e) == e
    const = PointMap(3, np.zeros(8, dtype=int))
    assert not is_permutation(const)
    with pytest.raises(ValueError):
        inverse(const)
    for _ in range(20):
        p = random_perm(rng, 5)
        assert inverse(inverse(p)) == p
        assert compose(p, inverse(p)) == identity(5)
        assert all(inverse(p)(p(i)) == i for i in range(32))


def test_monomial_involution_m3():
    ctx = field_new(3)
    p = monomial_map(ctx, ctx.a(1), 6)
    assert ctx.pow(ctx.a(1), 7) == 1
    assert inverse(p) == p
    assert all(p(p(y)) == y for y in range(8))
    assert p.tag == "monomial alpha=a, d=6"
    assert monomial_map(ctx, 1, 1) == identity(3)
    with pytest.raises(ValueError, match="gcd"):
        monomial_map(field_new(4), 1, 3)
    with pytest.raises(ValueError):
        monomial_map(ctx, 0, 1)


def test_add_and_printed_offset():
    pis = decomposing_h_pis()
    assert add(pis[0], pis[0]) == PointMap(4, np.zeros(16, dtype=int))
    offset = from_coordinates([anf_table(a, 4) for a in PI2_OFFSET])
    assert add(pis[0], pis[1]) == offset
    with pytest.raises(ValueError):
        add(identity(3), identity(4))


def test_m4_monomial_sum_is_a8_y14():
    ctx = field_new(4)
    assert (14 * 14) % 15 == 1
    pis = [monomial_map(ctx, ctx.a(e), 14) for e in (1, 2, 4)]
    assert add(add(pis[0], pis[1]), pis[2]) == monomial_map(ctx, ctx.a(8), 14)


def test_check_Am_cases(rng):
    pis = decomposing_h_pis()
    cert = check_Am(*pis)
    assert cert and cert.pi4 == add(add(pis[0], pis[1]), pis[2])
    for perm in itertools.permutations(pis):
        assert check_Am(*perm)
    ctx = field_new(3)
    mono = [monomial_map(ctx, ctx.a(e), 6) for e in (1, 4, 6)]
    assert check_Am(*mono)
    # pi_1 = pi_2 reduces to pi_4 = pi_3
    p, q = random_perm(rng, 4), random_perm(rng, 4)
    cert = check_Am(p, p, q)
    assert cert and cert.pi4 == q
    with pytest.raises(ValueError, match="not a permutation"):
        check_Am(PointMap(2, [0, 0, 1, 2]), p, q)


def test_check_Am_failure_certificate(rng):
    hits = 0
    for _ in range(50):
        ps = [random_perm(rng, 3) for _ in range(3)]
        cert = check_Am(*ps)
        s = add(add(ps[0], ps[1]), ps[2])
        if not is_permutation(s):
            assert not cert and cert.failure == "sum is not a permutation"
            collide = [y for y in range(8) if s(y) == s(cert.point) and y != cert.point]
            assert collide
            hits += 1
        elif not cert:
            inv_sum = [inverse(ps[0])(y) ^ inverse(ps[1])(y) ^ inverse(ps[2])(y) for y in range(8)]
            assert inverse(s)(cert.point) != inv_sum[cert.point]
            hits += 1
        else:
            inv_sum = [inverse(ps[0])(y) ^ inverse(ps[1])(y) ^ inverse(ps[2])(y) for y in range(8)]
            assert inverse(s).table.tolist() == inv_sum
    assert hits


@pytest.mark.parametrize("m", [2, 3])
def test_check_P1_against_brute_force(m, rng):
    for _ in range(20):
        p = random_perm(rng, m)
        assert check_P1(p) == second_derivative_never_zero(p)


def test_P1_and_APN_on_quadratic_maps(rng):
    for m in (3, 4, 5):
        ctx = field_new(m)
        for i in range(1, m):
            gold = monomial_map(ctx, 1, (1 << i) + 1, strict=False)
            assert check_P1(gold) == is_APN(gold)
        for _ in range(60 if m == 3 else 15):
            p = random_quadratic_map(rng, m)
            assert map_degree(p) <= 2
            assert check_P1(p) == (differential_uniformity(p) == 2)


def test_inverse_map_is_apn_for_odd_m():
    for m in (3, 5):
        ctx = field_new(m)
        p = monomial_map(ctx, 1, (1 << m) - 2)
        assert is_APN(p) and check_P1(p)
    p = monomial_map(field_new(4), 1, 14)
    assert not is_APN(p)


def test_affine_maps_are_not_P1(rng):
    rows = [1, 3, 4, 12]
    table = np.zeros(16, dtype=int)
    for y in range(16):
        for i in range(4):
            if y >> i & 1:
                table[y] ^= rows[i]
    p = PointMap(4, table ^ 5)
    assert is_permutation(p)
    assert not check_P1(p) and not is_APN(p)


def test_component_linear_structures():
    ctx = field_new(4)
    pis = [monomial_map(ctx, ctx.a(e), 14) for e in (1, 2, 4)]
    assert component_linear_structures(add(pis[0], pis[1])).trivial
    assert component_linear_structures(pis[0]).trivial
    # quadratic power map y^3 over GF(16): Tr(delta y^3) with delta a cube has nonzero structures
    cube = monomial_map(ctx, 1, 3, strict=False)
    report = component_linear_structures(cube)
    assert not report.trivial and report.offending
    lin = from_coordinates([anf_table(t, 3) for t in ("y1 + y2", "y2", "y3 + y1")])
    assert all(len(s) == 8 for s in component_linear_structures(lin).structures.values())


def test_component_is_dot_product(rng):
    p = random_perm(rng, 4)
    for b in range(16):
        assert component(p, b).bits.tolist() == [dot(b, p(y)) for y in range(16)]


def test_coordinate_anfs_round_trip():
    pis = decomposing_h_pis()
    anfs = coordinate_anfs(pis[0])
    assert anfs[0] == parse_anf("y1 + y2 + y1 y4 + y2 y4 + y3 y4", 4)
    assert map_degree(pis[0]) == 2


def test_mm_bent_basic(rng):
    ip = mm_bent(identity(3))
    assert ip.bits.tolist() == [dot(x, y) for y in range(8) for x in range(8)]
    assert is_bent(ip)
    f1 = mm_bent(decomposing_h_pis()[0], decomposing_h_hs()[0])
    assert is_bent(f1)
    ctx = field_new(3)
    ft = mm_bent(monomial_map(ctx, ctx.a(1), 6), None, "trace", ctx)
    assert is_bent(ft)
    for x in range(8):
        for y in range(8):
            assert ft[x + 8 * y] == ctx.trace(ctx.mul(x, ctx.mul(ctx.a(1), ctx.pow(y, 6))))
    with pytest.raises(ValueError):
        mm_bent(PointMap(2, [0, 0, 1, 2]))
    with pytest.raises(ValueError):
        mm_bent(identity(3), None, "trace")
    with pytest.raises(ValueError):
        mm_bent(identity(3), None, "other")


@pytest.mark.parametrize("form", ["dot", "trace"])
def test_mm_dual_matches_walsh_dual(form, rng):
    ctx = field_new(3)
    for _ in range(30):
        p, h = random_perm(rng, 3), random_table(rng, 3)
        f = mm_bent(p, h, form, ctx)
        assert dual(f) == mm_dual(p, h, form, ctx)
    # closed form for dot: f*(u, v) = v . p^-1(u) + h(p^-1(u))
    pinv = inverse(p)
    d = mm_dual(p, h)
    for u in range(8):
        for v in range(8):
            assert d[u + 8 * v] == dot(v, pinv(u)) ^ h[pinv(u)]


def test_permutation_file_format(rng):
    p = random_perm(rng, 3)
    text = format_permutation(p)
    assert text.splitlines()[0] == "m=3"
    assert parse_permutation(text) == p
    with pytest.raises(ParseError) as err:
        parse_permutation("m=2\n0 1 x 3\n")
    assert (err.value.line, err.value.column) == (2, 5)
    with pytest.raises(ParseError):
        parse_permutation("m=2\n0 1 2\n")
    with pytest.raises(ParseError):
        parse_permutation("m=2\n0 1 2 9\n")
