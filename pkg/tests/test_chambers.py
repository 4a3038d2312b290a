import random
from fractions import Fraction

import pytest

from hilbcone import chambers as ch
from hilbcone import hilbpic as hp
from hilbcone import nslattice as ns


def test_quadrant_facets():
    C = ch.cone_from_generators([(1, 0), (0, 1)])
    assert set(C.rays) == {(1, 0), (0, 1)}
    assert set(C.facets) == {(1, 0), (0, 1)}
    assert C.lineality == () and C.equations == ()


def test_single_ray_canonical_form():
    C = ch.cone_from_generators([(3, 0)])
    assert C.rays == ((1, 0),)
    assert C.facets == ((1, 0),)
    assert C.equations == ((0, 1),)
    assert ch.contains(C, (5, 0))
    assert not ch.contains(C, (5, 1))
    assert not ch.contains(C, (-1, 0))


def test_generator_order_and_scale_do_not_matter():
    A = ch.cone_from_generators([(0, 1), (7, -1), (2, 0)])
    B = ch.cone_from_generators([(14, -2), (0, 3)])
    assert A == B
    assert A.rays == ((0, 1), (7, -1))


def test_effective_cone_p2_n12_memberships():
    eff = ch.cone_from_generators([(0, 1), (7, -1)])
    assert set(eff.facets) == {(1, 0), (1, 7)}
    # twice the Severi class and twice the one-cycle-splitting class
    assert ch.contains(eff, (36, -5))
    assert ch.contains(eff, (50, -7))
    assert ch.contains_interior(eff, (36, -5))
    # the boundary ray is in the cone but not its interior
    assert ch.contains(eff, (7, -1))
    assert not ch.contains_interior(eff, (7, -1))
    assert not ch.contains(eff, (1, -1))


def test_dual_description_halfspace():
    rays, lineality = ch.dual_description([(1, 0, 0)], 3)
    assert rays == [(1, 0, 0)]
    assert lineality == [(0, 0, 1), (0, 1, 0)]


def test_full_plane_is_pure_lineality():
    C = ch.cone_from_generators([(1, 0), (-1, 0), (0, 1), (0, -1)])
    assert C.rays == ()
    assert set(C.lineality) == {(0, 1), (1, 0)}
    assert C.facets == () and C.equations == ()
    assert ch.contains(C, (-13, 7))


def test_intersect_subspace_identity_basis():
    C = ch.cone_from_generators([(0, 0, 1), (1, 0, 0), (0, 4, -1), (2, 2, -1)])
    D = ch.intersect_subspace(C, [(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert D == C


def test_intersect_quadrant_with_diagonal():
    C = ch.cone_from_generators([(1, 0), (0, 1)])
    D = ch.intersect_subspace(C, [(1, 1)])
    assert D.rays == ((1,),)


def test_intersect_can_be_zero():
    C = ch.cone_from_generators([(1, 0)])
    D = ch.intersect_subspace(C, [(0, 1)])
    assert D.rays == () and D.lineality == ()
    assert ch.contains(D, (0,))
    assert not ch.contains(D, (1,))


def test_fixture_lookup_order(tmp_path, monkeypatch):
    fx = ch.load_fixture("p2n3.json")
    assert fx.wallset.n == 3
    custom = tmp_path / "custom.json"
    custom.write_text(ch.fixture_path("p2n3.json").read_text())
    monkeypatch.setenv("HILBCONE_FIXTURES", str(tmp_path))
    assert ch.load_fixture("custom.json").wallset.n == 3
    with pytest.raises(FileNotFoundError):
        ch.load_fixture("nonexistent.json")


def test_f1n3_fixture_shape():
    fx = ch.load_fixture("f1n3.json")
    ws = fx.wallset
    assert ws.basis_labels == ("E", "F", "B")
    assert ws.surface_kind == "hirzebruch" and ws.surface_r == 1
    assert set(ws.bounding_cone.rays) == {(0, 0, 1), (1, 0, 0), (0, 4, -1), (2, 2, -1)}
    assert len(ws.walls) == 7
    # every wall separates: the bounding cone has rays on both sides of it
    for w in ws.walls:
        vals = [sum(a * b for a, b in zip(w.functional, r))
                for r in ws.bounding_cone.rays]
        assert any(v >= 0 for v in vals) and any(v <= 0 for v in vals)


def test_restriction_of_f1_walls_is_the_p2_wall_set():
    f1 = ch.load_fixture("f1n3.json").wallset
    p2 = ch.load_fixture("p2n3.json").wallset
    restricted, dropped = ch.restrict_walls(
        f1, [(1, 1, 0), (0, 0, 1)], labels=("H", "B"))
    assert [w.functional for w in restricted.walls] == [
        w.functional for w in p2.walls]
    assert [w.label for w in dropped] == ["CE"]
    assert restricted.bounding_cone == p2.bounding_cone
    assert restricted.bounding_cone.rays == ((0, 1), (2, -1))


def test_restriction_is_idempotent():
    p2 = ch.load_fixture("p2n3.json").wallset
    again, dropped = ch.restrict_walls(p2, [(1, 0), (0, 1)], labels=("H", "B"))
    assert [w.functional for w in again.walls] == [w.functional for w in p2.walls]
    assert dropped == []
    assert again.bounding_cone == p2.bounding_cone


def test_locate_sign_vectors_n12():
    ws = ch.load_fixture("p2n12_dk.json").wallset
    assert ch.locate(ws, (36, -5)) == (-1, -1, -1, -1, -1)
    assert ch.locate(ws, (1, 0)) == (1, 1, 1, 1, 1)
    assert ch.locate(ws, (8, -1)) == (0, -1, -1, -1, -1)


def test_locate_sign_vectors_n145():
    ws = ch.load_fixture("p2n145_dk.json").wallset
    # 2 * (81H - 5/2 B): positive against the degree-16 wall, negative from 17 on
    assert ch.locate(ws, (162, -5)) == (1, -1, -1, -1, -1)
    assert ch.locate(ws, (1152, -37))[-1] == -1


def test_locate_rejects_outside_classes():
    ws = ch.load_fixture("p2n3.json").wallset
    with pytest.raises(ValueError):
        ch.locate(ws, (-1, 0))


def test_transport_down_wall_functionals():
    f1 = ch.load_fixture("f1n3.json").wallset
    down = ch.transport_wallset_down(f1)
    assert down.surface_r == 0
    got = [w.functional for w in down.walls]
    assert got == [(0, 1, 0), (0, 0, 1), (1, 1, 4), (1, 0, 4),
                   (1, 0, 2), (0, 1, 4), (0, 1, 2)]
    assert all("not verified" in w.side_data for w in down.walls)
    assert down.bounding_cone.rays == f1.bounding_cone.rays


def test_transport_down_preserves_pairings():
    f1 = ch.load_fixture("f1n3.json").wallset
    down = ch.transport_wallset_down(f1)
    f0 = ns.make_hirzebruch(0)
    rng = random.Random(3131)
    for _ in range(20):
        a, b = rng.randint(-5, 5), rng.randint(-5, 5)
        beta = Fraction(rng.randint(-6, 6), 2)
        D = hp.hilb_class(f0, (a, b), beta, 3)
        up = hp.transport_up(D)
        upc = tuple(up.surface_part.coeffs) + (up.b_coeff,)
        for w_up, w_down in zip(f1.walls, down.walls):
            lhs = sum(Fraction(p) * q for p, q in zip(w_down.functional, (a, b, beta)))
            rhs = sum(Fraction(p) * q for p, q in zip(w_up.functional, upc))
            assert lhs == rhs


def test_transport_down_stops_at_f0():
    f1 = ch.load_fixture("f1n3.json").wallset
    down = ch.transport_wallset_down(f1)
    with pytest.raises(ValueError):
        ch.transport_wallset_down(down)
    p2 = ch.load_fixture("p2n3.json").wallset
    with pytest.raises(ValueError):
        ch.transport_wallset_down(p2)


def _random_cone(rng):
    dim = rng.randint(2, 4)
    k = rng.randint(1, 4)
    gens = []
    while len(gens) < k:
        v = tuple(rng.randint(-4, 4) for _ in range(dim))
        if any(x != 0 for x in v):
            gens.append(v)
    return ch.cone_from_generators(gens, dim), gens, dim


def test_random_cones_roundtrip_and_membership_oracle():
    rng = random.Random(20260816)
    for _ in range(100):
        C, gens, dim = _random_cone(rng)
        regen = list(C.rays) + list(C.lineality) + [
            tuple(-x for x in l) for l in C.lineality]
        assert ch.cone_from_generators(regen, dim) == C
        for g in gens:
            assert ch.contains(C, g)
            assert ch.fm_member(C, g)
        coeffs = [rng.randint(0, 3) for _ in gens]
        combo = tuple(
            sum(c * Fraction(g[i]) for c, g in zip(coeffs, gens))
            for i in range(dim))
        assert ch.contains(C, combo) == ch.fm_member(C, combo) == True  # noqa: E712
        for _ in range(3):
            probe = tuple(rng.randint(-6, 6) for _ in range(dim))
            assert ch.contains(C, probe) == ch.fm_member(C, probe)


def test_wallset_json_roundtrip():
    fx = ch.load_fixture("p2n12_dk.json")
    blob = ch.wallset_to_json(fx.wallset)
    assert blob["basis"] == ["H", "B"]
    assert blob["n"] == 12
    assert blob["bounding_cone"] == [[0, 1], [7, -1]]
    assert [w["functional"] for w in blob["walls"]] == [
        [1, 8], [1, 10], [1, 12], [1, 14], [1, 16]]
