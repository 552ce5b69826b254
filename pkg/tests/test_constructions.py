import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symquot.constructions import (
    AFFINE_NON_PLANE,
    AFFINE_PLANE,
    ALL_DISTINCT,
    COMMON_TWO_POINTS,
    DISJOINT_BLOCKS,
    M22_DISJOINT,
    M22_MEET_TWO,
    OPPOSITE_NON_COMPLEMENT,
    SAME_BLOCK,
    SAME_SECOND,
    PairRule,
    Provenance,
    Triple,
    cross_ratio_graph,
    design_in,
    design_out,
    flag_graph,
    matching_graph,
    pair_action,
    pair_graph,
    pair_partition,
    star_transform,
    twisted_cross_ratio_graph,
)
from symquot.designs import (
    IncidenceStructure,
    ag_design,
    design_3_12_6_2,
    steiner_3_22_6,
)
from symquot.errors import ConstructionError, NotSelfPairedError, SymquotError
from symquot.ffield import field
from symquot.graphs import (
    bipartite_between,
    connected_components,
    is_isomorphic,
    quotient_graph,
    recognize_structure,
)
from symquot.groups_catalog import agl, mathieu, sym_alt
from symquot.permgroup import PermutationGroup


def measure(triple):
    """Independent readback of (block size, quotient valency, k, t) from the
    first adjacent block pair."""
    g, P = triple.graph, triple.partition
    quot = quotient_graph(g, P)
    i, j = quot.edges()[0]
    tset = bipartite_between(g, P.blocks[i], P.blocks[j])
    assert len(tset) == 1, f"uneven cross valencies {tset}"
    t = tset.pop()
    mask = P.block_mask(j)
    k = sum(1 for x in P.blocks[i] if g.adj[x] & mask)
    return len(P.blocks[i]), quot.valency(), k, t


class TestProvenance:
    def test_flat_tag(self):
        p = Provenance("cr", (("q", "9"), ("d", "4"), ("s", "1")))
        assert p.tag == "cr:q=9:d=4:s=1"

    def test_nested_tag(self):
        inner = Provenance("pair", (("rule", "all_distinct"),))
        assert Provenance("star", (), inner).tag == "star:pair:rule=all_distinct"

    def test_bare_kind(self):
        assert Provenance("match").tag == "match"


class TestPairAction:
    def test_degree_and_blocks(self):
        G = pair_action(sym_alt(5, False))
        assert G.degree == 20
        P = pair_partition(5)
        assert P.n == 20
        assert all(len(b) == 4 for b in P.blocks)
        assert G.is_block_system(P.blocks)

    def test_too_small(self):
        with pytest.raises(ConstructionError):
            pair_action(sym_alt(2, False))

    @given(st.integers(min_value=3, max_value=7))
    @settings(max_examples=10, deadline=None)
    def test_faithful(self, m):
        G = sym_alt(m, False)
        assert pair_action(G).order() == G.order()


def _valid_cr_triples(qs):
    from symquot.groups_catalog import _field_for

    out = []
    for q in qs:
        F = _field_for(q)
        for i in range(2, q):
            sd = F.subfield_degree(F.element(i))
            for s in range(1, sd + 1):
                if sd % s == 0:
                    out.append((q, i, s))
    return out


class TestCrossRatio:
    def test_smallest_field_gives_squares(self):
        T = cross_ratio_graph(3, 2, 1)
        tag = recognize_structure(T.graph)
        assert tag.kind == "DisjointCycles"
        assert tag.params == (3, 4)

    def test_q5_gives_multipartite(self):
        tag = recognize_structure(cross_ratio_graph(5, 4, 1).graph)
        assert tag.kind == "DisjointCompleteMultipartite"
        assert tag.params == (5, 3, 2)

    @pytest.mark.parametrize("q,d,s", _valid_cr_triples([3, 4, 5, 7, 8, 9]))
    def test_parameter_law(self, q, d, s):
        T = cross_ratio_graph(q, d, s)
        assert T.graph.n == q * (q + 1)
        sd = field_degree_of(q, d)
        v, b, k, t = measure(T)
        assert (v, b, k, t) == (q, q, q - 1, sd // s)
        quot = quotient_graph(T.graph, T.partition)
        qt = recognize_structure(quot)
        assert qt.kind == "DisjointComplete"
        assert qt.params == (1, q + 1)

    def test_matches_pair_labeling_for_q4(self):
        # the projective semilinear group on 5 points is the symmetric group,
        # so the same graph arises from the all-distinct pair rule
        T = cross_ratio_graph(4, 2, 1)
        P = pair_graph(sym_alt(5, False), ALL_DISTINCT)
        assert T.group.order() == 120
        assert is_isomorphic(T.graph, P.graph)

    def test_rejects_bad_inputs(self):
        with pytest.raises(ConstructionError):
            cross_ratio_graph(3, 0, 1)
        with pytest.raises(ConstructionError):
            cross_ratio_graph(3, 1, 1)
        with pytest.raises(ConstructionError):
            cross_ratio_graph(2, 0, 1)
        with pytest.raises(ConstructionError):
            cross_ratio_graph(9, 4, 3)  # 3 does not divide s(d)=2
        with pytest.raises(SymquotError):
            cross_ratio_graph(6, 2, 1)

    def test_wrong_field_element(self):
        F25 = field(5, 2)
        with pytest.raises(ConstructionError):
            cross_ratio_graph(9, F25.element(3), 1)

    def test_provenance_tag(self):
        assert cross_ratio_graph(5, 3, 1).provenance.tag == "cr:q=5:d=3:s=1"


def field_degree_of(q, index):
    from symquot.groups_catalog import _field_for

    F = _field_for(q)
    return F.subfield_degree(F.element(index))


class TestTwisted:
    # in GF(9) with modulus x^2+1 the elements off the prime subfield have
    # indices 3..8; d-1 lands on a square for indices 4 and 7
    def test_square_case_builds(self):
        T = twisted_cross_ratio_graph(9, 4, 2)
        v, b, k, t = measure(T)
        assert (v, b, k, t) == (9, 9, 8, 1)
        assert T.group.order() == 720
        assert T.provenance.tag == "tcr:q=9:d=4:s=2"

    def test_nonsquare_case_refuses(self):
        with pytest.raises(NotSelfPairedError):
            twisted_cross_ratio_graph(9, 3, 2)

    @pytest.mark.parametrize(
        "q,d,s",
        [
            (8, 2, 2),  # even characteristic
            (27, 4, 2),  # odd field degree
            (3, 2, 2),  # too small
            (9, 2, 2),  # d inside the prime field: s(d) odd
            (9, 4, 1),  # odd s
            (9, 4, 4),  # s does not divide s(d)
        ],
    )
    def test_preconditions(self, q, d, s):
        with pytest.raises(ConstructionError):
            twisted_cross_ratio_graph(q, d, s)


class TestPairRules:
    def test_all_distinct_on_five_points(self):
        T = pair_graph(sym_alt(5, False), ALL_DISTINCT, group_label="s:n=5")
        assert measure(T) == (4, 4, 3, 2)
        assert T.graph.valency() == 6
        assert len(connected_components(T.graph)) == 1
        quot = recognize_structure(quotient_graph(T.graph, T.partition))
        assert quot.params == (1, 5)
        assert T.provenance.tag == "pair:group=s:n=5:rule=all_distinct"

    def test_same_second_components(self):
        T = pair_graph(sym_alt(5, False), SAME_SECOND)
        tag = recognize_structure(T.graph)
        assert tag.kind == "DisjointComplete"
        assert tag.params == (5, 4)

    def test_affine_plane_rule(self):
        T = pair_graph(agl(3, 2), AFFINE_PLANE)
        assert measure(T) == (7, 7, 6, 1)
        tag = recognize_structure(T.graph)
        assert tag.kind == "DisjointCompleteMultipartite"
        assert tag.params == (7, 4, 2)

    def test_affine_plane_d4(self):
        tag = recognize_structure(pair_graph(agl(4, 2), AFFINE_PLANE).graph)
        assert tag.params == (15, 8, 2)

    def test_affine_rules_partition_the_distinct_rule(self):
        G = agl(3, 2)
        plane = pair_graph(G, AFFINE_PLANE).graph
        rest = pair_graph(G, AFFINE_NON_PLANE).graph
        both = pair_graph(G, ALL_DISTINCT).graph
        assert not set(plane.edges()) & set(rest.edges())
        assert set(plane.edges()) | set(rest.edges()) == set(both.edges())

    def test_design_rules_on_twelve_points(self):
        D = design_3_12_6_2()
        G = mathieu("M11on12")
        inside = pair_graph(G, design_in(D), group_label="mathieu:M11on12")
        outside = pair_graph(G, design_out(D))
        assert measure(inside) == (11, 11, 10, 6)
        assert measure(outside) == (11, 11, 10, 3)
        assert "design=v12b22" in inside.provenance.tag

    def test_affine_rule_needs_power_of_two(self):
        with pytest.raises(ConstructionError):
            pair_graph(sym_alt(5, False), AFFINE_PLANE)

    def test_design_rule_needs_triple_coverage(self):
        fano = IncidenceStructure(
            7, [tuple(sorted((i, (i + 1) % 7, (i + 3) % 7))) for i in range(7)]
        )
        G = sym_alt(7, False)
        with pytest.raises(ConstructionError):
            pair_graph(G, design_in(fano))

    def test_design_rule_needs_matching_degree(self):
        with pytest.raises(ConstructionError):
            pair_graph(sym_alt(5, False), design_in(design_3_12_6_2()))

    def test_unknown_rule(self):
        with pytest.raises(ConstructionError):
            pair_graph(sym_alt(5, False), PairRule("weird"))

    def test_plain_rule_refuses_design(self):
        with pytest.raises(ConstructionError):
            pair_graph(sym_alt(5, False), PairRule("same_second", design_3_12_6_2()))

    def test_intransitive_group(self):
        G = PermutationGroup(5, [])
        with pytest.raises(ConstructionError):
            pair_graph(G, ALL_DISTINCT)


AG3 = ag_design(3, 2)


class TestFlagRules:
    def test_same_block_shape(self):
        T = flag_graph(AG3, agl(3, 2), SAME_BLOCK, design_label="ag:d=3:e=2")
        tag = recognize_structure(T.graph)
        assert tag.kind == "DisjointComplete"
        assert tag.params == (14, 4)
        assert T.provenance.tag == "flag:design=ag:d=3:e=2:rule=same_block"

    def test_disjoint_blocks_shape(self):
        tag = recognize_structure(flag_graph(AG3, agl(3, 2), DISJOINT_BLOCKS).graph)
        assert tag.kind == "DisjointCompleteBipartite"
        assert tag.params == (7, 4)

    def test_common_two_points_parameters(self):
        T = flag_graph(AG3, agl(3, 2), COMMON_TWO_POINTS)
        assert measure(T) == (7, 7, 3, 2)
        assert T.graph.valency() == 6
        quot = recognize_structure(quotient_graph(T.graph, T.partition))
        assert quot.params == (1, 8)

    def test_opposite_parameters(self):
        T = flag_graph(AG3, agl(3, 2), OPPOSITE_NON_COMPLEMENT)
        assert measure(T)[3] == 3

    def test_opposite_needs_complement_closure(self):
        with pytest.raises(ConstructionError):
            flag_graph(steiner_3_22_6(), mathieu("M22"), OPPOSITE_NON_COMPLEMENT)

    def test_m22_rules(self):
        D = steiner_3_22_6()
        G = mathieu("M22")
        disj = flag_graph(D, G, M22_DISJOINT, group_label="mathieu:M22")
        meet = flag_graph(D, G, M22_MEET_TWO)
        assert measure(disj) == (21, 21, 16, 6)
        assert measure(meet)[3] == 10
        assert disj.graph.n == 22 * 21

    def test_m22_rules_reject_other_designs(self):
        with pytest.raises(ConstructionError):
            flag_graph(design_3_12_6_2(), mathieu("M11on12"), M22_DISJOINT)

    def test_group_must_preserve(self):
        with pytest.raises(ConstructionError):
            flag_graph(AG3, sym_alt(8, False), SAME_BLOCK)

    def test_repeated_blocks_refused(self):
        doubled = IncidenceStructure(4, [(0, 1), (0, 1), (2, 3), (2, 3)])
        with pytest.raises(ConstructionError):
            flag_graph(doubled, sym_alt(4, False), SAME_BLOCK)

    def test_unknown_rule(self):
        from symquot.constructions import FlagRule

        with pytest.raises(ConstructionError):
            flag_graph(AG3, agl(3, 2), FlagRule("sideways"))


class TestStar:
    def test_involution_on_pair_graph(self):
        T = pair_graph(sym_alt(5, False), ALL_DISTINCT)
        S = star_transform(T)
        tag = recognize_structure(S.graph)
        assert (tag.kind, tag.params) == ("DisjointComplete", (5, 4))
        assert measure(S) == (4, 4, 3, 1)
        assert star_transform(S).graph == T.graph
        assert S.provenance.tag == "star:pair:rule=all_distinct"

    def test_flag_graph_pairing(self):
        # complementing the incidence rectangles swaps the two-common-points
        # rule with the shared-block rule, in both directions
        G = agl(3, 2)
        common = flag_graph(AG3, G, COMMON_TWO_POINTS)
        same = flag_graph(AG3, G, SAME_BLOCK)
        assert star_transform(common).graph == same.graph
        assert star_transform(same).graph == common.graph

    def test_star_of_cross_ratio(self):
        T = cross_ratio_graph(4, 2, 1)
        S = star_transform(T)
        assert recognize_structure(S.graph).params == (5, 4)
        assert star_transform(S).graph == T.graph

    def test_group_and_partition_carried(self):
        T = pair_graph(sym_alt(5, False), ALL_DISTINCT)
        S = star_transform(T)
        assert S.group is T.group
        assert S.partition is T.partition

    def test_refuses_complete_rectangle(self):
        from symquot.graphs import Graph, Partition
        from symquot.permgroup import Permutation

        g = Graph.from_edges(4, [(0, 2), (0, 3), (1, 2), (1, 3)])
        G = PermutationGroup(
            4,
            [
                Permutation([1, 0, 2, 3]),
                Permutation([0, 1, 3, 2]),
                Permutation([2, 3, 0, 1]),
            ],
        )
        T = Triple(g, G, Partition([(0, 1), (2, 3)]), Provenance("other"))
        with pytest.raises(ConstructionError):
            star_transform(T)

    def test_refuses_tiny_support(self):
        with pytest.raises(ConstructionError):
            star_transform(matching_graph(sym_alt(4, False)))


class TestMatching:
    def test_shape(self):
        T = matching_graph(sym_alt(4, False), group_label="s:n=4")
        tag = recognize_structure(T.graph)
        assert (tag.kind, tag.params) == ("DisjointComplete", (6, 2))
        assert measure(T) == (3, 3, 1, 1)
        assert T.provenance.tag == "match:group=s:n=4"

    def test_needs_three_transitivity(self):
        with pytest.raises(ConstructionError):
            matching_graph(sym_alt(4, True))


class TestTriple:
    def test_degree_mismatch(self):
        T = pair_graph(sym_alt(5, False), ALL_DISTINCT)
        with pytest.raises(ConstructionError):
            Triple(T.graph, sym_alt(5, False), T.partition, T.provenance)
