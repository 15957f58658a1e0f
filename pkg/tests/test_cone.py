"""Surgery cone assembly, sectors, truncation, vertex inclusion."""

from fractions import Fraction
from math import gcd

import pytest

from floercone.algebra import check_complex, homology
from floercone.cone import (
    MappingCone,
    build_cone,
    effective_genus,
    hat_map_is_quasi_iso,
    include_B,
)
from floercone.errors import BadCoefficients, NoSuchVertex
from floercone.models import (
    box,
    dual_normal_form_model,
    flip,
    minus_twist_knot,
    mirror,
    staircase,
    unknot,
)

from oracles import dense_homology_by_maslov, enumerate_hat_A_elements


def cone_for(c, p, q, mode="paper"):
    return build_cone(c, flip(c), p, q, mode)


class TestAssembly:
    def test_bad_coefficients_rejected(self):
        c = staircase()
        f = flip(c)
        for p, q in [(0, 1), (2, 0), (2, -1), (4, 2)]:
            with pytest.raises(BadCoefficients):
                build_cone(c, f, p, q)

    def test_paper_ranges_match_minimal_truncation(self):
        cone = cone_for(minus_twist_knot(5), 1, 1)
        assert cone.a_ts == (0,)
        assert cone.b_ts == ()
        cone = cone_for(minus_twist_knot(5), -1, 1)
        assert cone.a_ts == (0,)
        assert cone.b_ts == (-1, 0)

    def test_paper_range_covers_every_sector(self):
        for p in (2, 3, 5, -4):
            cone = cone_for(staircase(), p, 1)
            for i in cone.sectors:
                assert any(v.t % abs(p) == i for v in cone.vertices())

    @pytest.mark.parametrize("p,q", [(1, 1), (-1, 1), (3, 1), (-2, 1), (3, 2), (-3, 2), (2, 3)])
    def test_total_complex_is_valid(self, p, q):
        for model in (staircase(), box()):
            cone = cone_for(model, p, q)
            total, _ = cone.total_complex()
            assert check_complex(total).ok

    @pytest.mark.parametrize("p,q", [(3, 1), (3, 2), (-3, 2)])
    def test_spin_c_splitting(self, p, q):
        cone = cone_for(minus_twist_knot(5), p, q)
        total, table = cone.total_complex()
        for src, tgt, _ in total.entries():
            assert table[src].t % abs(p) == table[tgt].t % abs(p)

    def test_hat_vertex_element_counts_match_enumeration(self):
        c = staircase()
        cone = MappingCone(c, flip(c), 1, 1, [0], [0])
        hat, table = cone.hat_complex()
        a_elements = [n for n, info in table.items() if info.segment == "A"]
        assert len(a_elements) == len(enumerate_hat_A_elements(c, 0)) == 3
        b_elements = [n for n, info in table.items() if info.segment == "B"]
        assert len(b_elements) == 3  # one i = 0 translate per generator

    def test_box_hat_vertex_count(self):
        c = box()
        cone = MappingCone(c, flip(c), 1, 1, [0], [])
        assert len(cone.hat_complex()[0]) == len(enumerate_hat_A_elements(c, 0)) == 4


class TestQuasiIsoRange:
    @pytest.mark.parametrize("name,build", [
        ("staircase", staircase), ("box", box),
        ("twist5", lambda: minus_twist_knot(5)),
        ("dual5", lambda: dual_normal_form_model(5)),
        ("mirror5", lambda: mirror(minus_twist_knot(5))),
    ])
    def test_v_and_h_hat_maps(self, name, build):
        c = build()
        f = flip(c)
        g = effective_genus(c)
        for s in range(g, g + 3):
            assert hat_map_is_quasi_iso(c, f, s, "v")
        for s in range(-g - 2, -g + 1):
            assert hat_map_is_quasi_iso(c, f, s, "h")
        # inside the window neither map needs to be one
        assert not hat_map_is_quasi_iso(c, f, 0, "v") or not hat_map_is_quasi_iso(c, f, 0, "h") \
            or len(c) == 1


class TestSectorHomology:
    def test_poincare_type_answer(self):
        cone = cone_for(mirror(staircase()), 1, 1)
        ranks = cone.sector_homology(0)
        assert dict(ranks.ranks) == {(-2,): 1}

    def test_plus_one_on_unknot_is_three_sphere(self):
        for p in (1, -1):
            cone = cone_for(unknot(), p, 1)
            assert dict(cone.sector_homology(0).ranks) == {(0,): 1}

    @pytest.mark.parametrize("p,q", [(3, 1), (5, 1), (3, 2), (-3, 2), (5, 2), (4, 3), (-5, 3)])
    def test_lens_spaces_have_rank_one_sectors(self, p, q):
        cone = cone_for(unknot(), p, q)
        assert cone.all_sector_ranks() == {i: 1 for i in range(abs(p))}

    def test_l_space_surgery_on_trefoil(self):
        cone = cone_for(mirror(staircase()), 3, 1)
        assert cone.all_sector_ranks() == {0: 1, 1: 1, 2: 1}

    def test_minus_one_matches_mirror_plus_one(self):
        c = minus_twist_knot(5)
        left = cone_for(c, -1, 1).sector_homology(0).total_rank
        right = cone_for(mirror(c), 1, 1).sector_homology(0).total_rank
        assert left == right

    def test_sector_ranks_are_odd(self):
        for p, q in [(1, 1), (-1, 1), (3, 1), (3, 2), (-3, 2)]:
            for model in (staircase(), minus_twist_knot(5)):
                cone = cone_for(model, p, q)
                for rank in cone.all_sector_ranks().values():
                    assert rank % 2 == 1

    def test_infinity_flavor_rank_one_per_sector(self):
        for p, q in [(1, 1), (-2, 1), (3, 2)]:
            cone = cone_for(staircase(), p, q)
            for i in cone.sectors:
                assert cone.sector_homology(i, "infinity").total_rank == 1

    @pytest.mark.parametrize("p", [2, 3, 5])
    def test_lens_space_correction_terms(self, p):
        # absolute gradings of the surgered unknot reproduce the classical
        # lens-space correction terms d(L(p,1), i) = (2i-p)^2/(4p) - 1/4
        cone = cone_for(unknot(), p, 1)
        for i in cone.sectors:
            ranks = cone.sector_homology(i)
            expected = Fraction((2 * i - p) ** 2, 4 * p) - Fraction(1, 4)
            assert dict(ranks.ranks) == {(expected if expected.denominator > 1
                                          else int(expected),): 1}

    @pytest.mark.parametrize("p", [2, 3, 5])
    def test_mirror_lens_space_correction_terms(self, p):
        cone = cone_for(unknot(), -p, 1)
        for i in cone.sectors:
            ranks = cone.sector_homology(i)
            expected = Fraction(1, 4) - Fraction((2 * i - p) ** 2, 4 * p)
            assert dict(ranks.ranks) == {(expected if expected.denominator > 1
                                          else int(expected),): 1}

    def test_hat_cone_wrapper(self):
        from floercone.cone import hat, sector_homology
        cone = cone_for(minus_twist_knot(5), 3, 1)
        hc = hat(cone)
        for i in cone.sectors:
            assert sector_homology(hc, i) == sector_homology(cone, i)
        assert len(hc.vertex_elements("A", 0)) == len(cone.source)

    def test_hat_ranks_against_dense_oracle(self):
        for p, q in [(1, 1), (-1, 1), (2, 1), (-3, 2)]:
            cone = cone_for(minus_twist_knot(5), p, q)
            for i in cone.sectors:
                hat, _ = cone.hat_complex(i)
                got = {Fraction(k[0]): v
                       for k, v in cone.sector_homology(i).ranks.items()}
                assert got == dense_homology_by_maslov(hat)


class TestFullWindowAndTruncation:
    @pytest.mark.parametrize("p", [1, -1, 2, -3, 5, 7, -7])
    @pytest.mark.parametrize("q", [1, 2, 3, 5])
    def test_full_and_paper_agree_on_staircase(self, p, q):
        if gcd(p, q) != 1:
            pytest.skip("not coprime")
        full = cone_for(staircase(), p, q, "full")
        truncated = full.truncate()  # verifies per-sector rank equality
        assert truncated.range_mode == "paper"

    @pytest.mark.parametrize("p,q", [(1, 1), (-2, 1), (3, 2)])
    def test_full_and_paper_agree_on_box(self, p, q):
        full = cone_for(box(), p, q, "full")
        assert full.truncate().range_mode == "paper"

    def test_truncate_fixed_point(self):
        cone = cone_for(staircase(), 2, 1)
        assert cone.truncate() is cone

    def test_truncated_cone_within_printed_window(self):
        cone = cone_for(minus_twist_knot(5), -3, 1, "full").truncate()
        g, q = cone.genus, cone.q
        for v in cone.vertices():
            if v.segment == "A":
                assert -(g - 1) * q <= v.t <= g * q - 1


class TestIncludeB:
    def test_missing_vertex(self):
        cone = cone_for(staircase(), 1, 1)
        with pytest.raises(NoSuchVertex):
            include_B(cone, 0)

    def test_identity_when_sector_is_one_vertex(self):
        cone = cone_for(dual_normal_form_model(5), -2, 1)
        rep = include_B(cone, -1)
        assert rep.sector == 1
        if rep.domain_rank == rep.codomain_rank:
            assert rep.isomorphism

    def test_structure_of_negative_fraction_cone(self):
        # sector t = -1 of the -(k+1)/k cone: the s = 1 vertex maps onto B(-1)
        k = 2
        model = dual_normal_form_model(5)
        cone = cone_for(model, -(k + 1), k, "full")
        sector = (-1) % (k + 1)
        ts = {(v.segment, v.t) for v in cone.vertices() if cone.spin_c(v.t) == sector}
        assert ("A", -1) in ts and ("A", k) in ts and ("B", -1) in ts
        total, table = cone.total_complex(sector)
        crossing = [(s, t) for s, t, _ in total.entries()
                    if table[s].segment == "A" and table[s].t == k
                    and table[t].segment == "B" and table[t].t == -1]
        assert crossing
        rep = include_B(cone, -1)
        assert rep.isomorphism
