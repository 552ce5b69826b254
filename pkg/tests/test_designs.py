"""Incidence structure counting against small hand-checkable cases."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symquot.designs import (
    DesignParams,
    Flag,
    IncidenceStructure,
    ag_design,
    complement_design,
    derived_design,
    design_3_12_6_2,
    design_from_partition,
    design_params,
    dual_design,
    flags,
    preserves_design,
    steiner_3_22_6,
)
from symquot.errors import DesignError
from symquot.permgroup import Permutation

FANO = IncidenceStructure(7, [tuple((i + d) % 7 for d in (0, 1, 3)) for i in range(7)])


class TestParams:
    def test_fano(self):
        p = FANO.params()
        assert (p.v, p.b, p.r, p.k) == (7, 7, 3, 3)
        assert p.lambdas == (3, 1)
        assert p.rho == 1

    def test_lambda_t_bounds(self):
        p = FANO.params()
        assert p.lambda_t(2) == 1
        with pytest.raises(DesignError):
            p.lambda_t(3)
        with pytest.raises(DesignError):
            p.lambda_t(0)

    def test_nonuniform_block_size(self):
        D = IncidenceStructure(4, [(0, 1), (1, 2, 3)])
        assert D.params().k is None

    def test_nonuniform_replication(self):
        D = IncidenceStructure(3, [(0, 1), (0, 2)])
        p = D.params()
        assert p.r is None
        assert p.lambdas == ()

    def test_single_edge_has_zero_high_lambdas(self):
        # no block carries 3 points, so every higher coverage count is 0
        p = IncidenceStructure(2, [(0, 1)]).params()
        assert p.lambdas == (1, 1, 0, 0, 0)
        assert p.max_t == 5

    def test_repeated_blocks_counted(self):
        D = IncidenceStructure(3, [(0, 1), (0, 1)])
        p = D.params()
        assert p.b == 2
        assert p.rho == 2

    def test_uneven_multiplicity(self):
        D = IncidenceStructure(3, [(0, 1), (0, 1), (1, 2)])
        assert D.params().rho is None

    def test_as_json_fields(self):
        d = FANO.params().as_json()
        assert d == {
            "v": 7,
            "b": 7,
            "r": 3,
            "k": 3,
            "max_t": 2,
            "lambdas": [3, 1],
            "rho": 1,
        }

    def test_no_blocks(self):
        with pytest.raises(DesignError):
            IncidenceStructure(3, []).params()


class TestConstruction:
    def test_blocks_sorted_and_deduped(self):
        D = IncidenceStructure(5, [[3, 1, 1, 0]])
        assert D.blocks == ((0, 1, 3),)

    def test_out_of_range_point(self):
        with pytest.raises(DesignError):
            IncidenceStructure(3, [(0, 3)])

    def test_empty_block(self):
        with pytest.raises(DesignError):
            IncidenceStructure(3, [()])

    def test_json_roundtrip(self):
        again = IncidenceStructure.from_json(FANO.as_json())
        assert again == FANO


class TestDerived:
    def test_fano_point(self):
        sub = derived_design(FANO, 0)
        p = sub.params()
        assert (p.v, p.b, p.k, p.r) == (6, 3, 2, 1)

    def test_relabeling_stays_zero_based(self):
        sub = FANO.derived(3)
        assert all(0 <= x < 6 for blk in sub.blocks for x in blk)

    def test_isolated_point(self):
        D = IncidenceStructure(3, [(0, 1)])
        with pytest.raises(DesignError):
            D.derived(2)

    def test_singleton_block(self):
        D = IncidenceStructure(2, [(0,), (0, 1)])
        with pytest.raises(DesignError):
            D.derived(0)


class TestDual:
    def test_fano_self_dual_parameters(self):
        dd = dual_design(FANO)
        p = dd.params()
        assert (p.v, p.b, p.r, p.k) == (7, 7, 3, 3)
        assert p.lambda_t(2) == 1

    def test_double_dual_is_identity(self):
        assert dual_design(dual_design(FANO)) == FANO

    def test_repeated_blocks_rejected(self):
        D = IncidenceStructure(3, [(0, 1), (0, 1)])
        with pytest.raises(DesignError):
            dual_design(D)

    def test_uncovered_point_rejected(self):
        D = IncidenceStructure(3, [(0, 1)])
        with pytest.raises(DesignError):
            dual_design(D)


class TestComplement:
    def test_fano_complement(self):
        p = complement_design(FANO).params()
        assert (p.v, p.b, p.k) == (7, 7, 4)
        assert p.lambda_t(2) == 2

    def test_involution(self):
        assert complement_design(complement_design(FANO)) == FANO

    def test_full_block_rejected(self):
        D = IncidenceStructure(3, [(0, 1, 2)])
        with pytest.raises(DesignError):
            complement_design(D)


class TestFlags:
    def test_count_is_point_degree_sum(self):
        assert len(flags(FANO)) == 21

    def test_point_major_order(self):
        fl = flags(IncidenceStructure(3, [(1, 2), (0, 1)]))
        assert fl == [Flag(0, 1), Flag(1, 0), Flag(1, 1), Flag(2, 0)]

    def test_flag_identity(self):
        assert Flag(1, 2) == Flag(1, 2)
        assert Flag(1, 2) != Flag(2, 1)
        assert len({Flag(0, 0), Flag(0, 0), Flag(0, 1)}) == 2


class TestPreserves:
    def test_cyclic_shift_fixes_fano(self):
        shift = Permutation([(i + 1) % 7 for i in range(7)])
        assert preserves_design(FANO, shift)

    def test_transposition_breaks_fano(self):
        swap = Permutation([1, 0, 2, 3, 4, 5, 6])
        assert not preserves_design(FANO, swap)

    def test_degree_mismatch(self):
        with pytest.raises(DesignError):
            FANO.preserves(Permutation([0, 1, 2]))


class _FakeGraph:
    def __init__(self, adj):
        self.adj = adj


class _FakePartition:
    def __init__(self, blocks):
        self.blocks = blocks

    def block_mask(self, j):
        m = 0
        for x in self.blocks[j]:
            m |= 1 << x
        return m


class TestDesignFromPartition:
    def test_star_between_two_blocks(self):
        # vertices 0,1 in the home block; 0-2 and 1-3 edges into block {2,3}
        adj = [1 << 2, 1 << 3, 1 << 0, 1 << 1]
        g = _FakeGraph(adj)
        part = _FakePartition([(0, 1), (2, 3)])
        D = design_from_partition(g, part, 0)
        assert D.v == 2
        assert D.blocks == ((0, 1),)

    def test_unconnected_home_block(self):
        g = _FakeGraph([0, 0, 0, 0])
        part = _FakePartition([(0, 1), (2, 3)])
        with pytest.raises(DesignError):
            design_from_partition(g, part, 0)

    def test_index_out_of_range(self):
        g = _FakeGraph([0, 0])
        part = _FakePartition([(0, 1)])
        with pytest.raises(DesignError):
            design_from_partition(g, part, 1)


class TestAffineDesign:
    def test_planes_of_dimension_three(self):
        D = ag_design(3, 2)
        p = D.params()
        assert (p.v, p.b, p.r, p.k) == (8, 14, 7, 4)
        assert p.lambdas[:3] == (7, 3, 1)
        assert p.max_t == 3

    def test_hyperplanes_of_dimension_four(self):
        D = ag_design(4, 3)
        p = D.params()
        assert (p.v, p.b, p.r, p.k) == (16, 30, 15, 8)
        assert p.lambdas[:3] == (15, 7, 3)

    def test_translation_invariance(self):
        D = ag_design(3, 2)
        for t in range(1, 8):
            assert D.preserves(Permutation([x ^ t for x in range(8)]))

    @pytest.mark.parametrize("d,e", [(3, 1), (2, 1), (7, 3), (4, 4)])
    def test_rejects_out_of_range(self, d, e):
        with pytest.raises(DesignError):
            ag_design(d, e)

    def test_blocks_are_cosets(self):
        D = ag_design(4, 2)
        for blk in D.blocks:
            base = blk[0]
            span = {x ^ base for x in blk}
            assert 0 in span
            for a in span:
                for b in span:
                    assert (a ^ b) in span


class TestBundledDesigns:
    def test_triple_system_parameters(self):
        D = steiner_3_22_6()
        p = D.params()
        assert (p.v, p.b, p.r, p.k) == (22, 77, 21, 6)
        assert p.lambdas == (21, 5, 1)
        assert p.rho == 1

    def test_triple_system_block_intersections(self):
        D = steiner_3_22_6()
        first = set(D.blocks[0])
        profile = {}
        for other in D.blocks[1:]:
            n = len(first & set(other))
            profile[n] = profile.get(n, 0) + 1
        assert profile == {0: 16, 2: 60}

    def test_twelve_point_parameters(self):
        D = design_3_12_6_2()
        p = D.params()
        assert (p.v, p.b, p.r, p.k) == (12, 22, 11, 6)
        assert p.lambdas == (11, 5, 2)

    def test_twelve_point_complement_closed(self):
        D = design_3_12_6_2()
        assert complement_design(D) == D

    def test_twelve_point_derived_is_biplane(self):
        p = derived_design(design_3_12_6_2(), 0).params()
        assert (p.v, p.b, p.r, p.k) == (11, 11, 5, 5)
        assert p.lambda_t(2) == 2


def _structures():
    blocks = st.lists(
        st.sets(st.integers(min_value=0, max_value=5), min_size=1, max_size=6),
        min_size=1,
        max_size=8,
    )
    return blocks.map(lambda bs: IncidenceStructure(6, [tuple(b) for b in bs]))


@settings(max_examples=60, deadline=None)
@given(_structures())
def test_flag_count_matches_block_sizes(D):
    assert len(D.flags()) == sum(len(b) for b in D.blocks)


@settings(max_examples=60, deadline=None)
@given(_structures())
def test_complement_is_involution(D):
    if any(len(b) == D.v for b in D.blocks):
        return
    assert complement_design(complement_design(D)) == D


@settings(max_examples=60, deadline=None)
@given(_structures())
def test_double_dual_restores(D):
    covered = {x for b in D.blocks for x in b}
    if len(set(D.blocks)) != len(D.blocks) or covered != set(range(D.v)):
        return
    dd = dual_design(D)
    if len(set(dd.blocks)) != len(dd.blocks):
        return
    assert dual_design(dd) == D


@settings(max_examples=60, deadline=None)
@given(_structures())
def test_replication_identity(D):
    p = design_params(D)
    if p.r is not None and p.k is not None:
        assert D.v * p.r == D.b * p.k
    if p.lambdas:
        assert p.lambdas[0] == p.r
