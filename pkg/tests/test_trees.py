import os
import sys

import networkx as nx
import pytest

# Add the source directory to Python path
sys.path.append(os.path.join(os.path.dirname(__file__), "..", "src"))

from treeenergy.trees import (
    EnumerationCapError,
    FamilyParams,
    FamilyParamsError,
    InfeasibleTreeError,
    InvalidTreeError,
    Tree,
    UnknownStrategyError,
    build_degenerate_pair,
    build_path,
    build_Ta,
    build_Tb,
    build_Tc,
    enumerate_constrained_trees,
    enumerate_trees,
    family_order,
    has_two_max_degree_vertices,
    tc_feasible,
    tree_centers,
)

# unlabelled trees on n = 1..14 vertices
TREE_COUNTS = [1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551, 1301, 3159]


@pytest.fixture
def star4():
    """K_{1,3}: centre 0 with three leaves."""
    return Tree(4, ((0, 1), (0, 2), (0, 3)))


class TestTree:
    """Test Tree validation and derived properties."""

    def test_edges_are_normalized(self):
        """Edges are stored as sorted (min, max) pairs."""
        tree = Tree(3, ((2, 1), (1, 0)))
        assert tree.edges == ((0, 1), (1, 2))

    @pytest.mark.parametrize(
        "vertex_count,edges",
        [
            (0, ()),
            (3, ((0, 1),)),
            (3, ((0, 1), (0, 1))),
            (3, ((0, 0), (1, 2))),
            (3, ((0, 1), (1, 3))),
        ],
    )
    def test_invalid_trees_rejected(self, vertex_count, edges):
        """Wrong edge counts, repeated edges, loops and out-of-range ids are refused."""
        with pytest.raises(InvalidTreeError):
            Tree(vertex_count, edges)

    def test_degrees(self, star4):
        """Degrees, maximum degree and degree counts follow the adjacency."""
        assert star4.degrees == (3, 1, 1, 1)
        assert star4.max_degree == 3
        assert star4.count_degree(1) == 3

    def test_networkx_round_trip(self, star4):
        """Conversion to networkx and back keeps the edge set."""
        graph = star4.to_networkx()
        assert nx.is_tree(graph)
        assert Tree.from_networkx(graph) == star4

    def test_isomorphism_ignores_labels(self):
        """Relabelled paths share a canonical form."""
        path = build_path(4)
        shuffled = Tree(4, ((2, 0), (0, 3), (3, 1)))
        assert path.is_isomorphic(shuffled)
        assert path.canonical_relabel() == shuffled.canonical_relabel()

    def test_star_and_path_not_isomorphic(self, star4):
        """Different shapes have different canonical forms."""
        assert not star4.is_isomorphic(build_path(4))

    @pytest.mark.parametrize("n,centers", [(1, (0,)), (2, (0, 1)), (4, (1, 2)), (5, (2,))])
    def test_tree_centers(self, n, centers):
        """Paths have one center for odd order and two for even order."""
        assert tree_centers(build_path(n)) == centers


class TestFamilies:
    """Test the T_a, T_b and T_c builders."""

    def test_family_params_bounds(self):
        """delta and t must both be at least 3."""
        with pytest.raises(FamilyParamsError):
            FamilyParams(2, 5)
        with pytest.raises(FamilyParamsError):
            FamilyParams(3, 2)

    def test_order(self):
        """n = 4*delta - 4 + t."""
        assert family_order(5, 89) == 105
        assert FamilyParams(3, 3).order == 11
        assert FamilyParams.from_order(3, 11) == FamilyParams(3, 3)

    @pytest.mark.parametrize("delta,t", [(3, 3), (4, 4), (5, 10), (7, 3)])
    def test_two_vertices_of_max_degree(self, delta, t):
        """Both family members have exactly two vertices of degree delta."""
        params = FamilyParams(delta, t)
        for tree in (build_Ta(params), build_Tb(params)):
            assert tree.vertex_count == params.order
            assert tree.max_degree == delta
            assert tree.count_degree(delta) == 2

    def test_ta_branch_vertices_are_spine_ends(self):
        """T_a puts its branching vertices at the two ends of the spine."""
        tree = build_Ta(FamilyParams(3, 5))
        assert tree.degrees[0] == 3
        assert tree.degrees[4] == 3

    def test_tb_branch_vertices_are_adjacent(self):
        """T_b puts its branching vertices on spine vertices 0 and 1."""
        tree = build_Tb(FamilyParams(4, 3))
        assert tree.degrees[0] == 4
        assert tree.degrees[1] == 4
        assert (0, 1) in tree.edges

    @pytest.mark.parametrize("t", [2, 3, 7])
    def test_degenerate_pair_is_a_path(self, t):
        """For delta = 2 both members are the path on t + 4 vertices."""
        ta, tb = build_degenerate_pair(2, t)
        assert ta.is_isomorphic(build_path(t + 4))
        assert tb.is_isomorphic(build_path(t + 4))

    def test_tc_double_star(self):
        """T_c(3, 6) is two adjacent degree-3 vertices with two leaves each."""
        tree = build_Tc(3, 6)
        assert sorted(tree.degrees) == [1, 1, 1, 1, 3, 3]
        assert (0, 1) in tree.edges

    def test_tc_only_two_branches(self):
        """At n = 4*delta - 2 every attachment is a 2-branch."""
        tree = build_Tc(3, 10)
        assert tree.count_degree(2) == 4
        assert tree.count_degree(3) == 2

    @pytest.mark.parametrize("order", [5, 11])
    def test_tc_infeasible(self, order):
        """T_c exists only for 2*delta <= n <= 4*delta - 2."""
        assert not tc_feasible(3, order)
        with pytest.raises(InfeasibleTreeError):
            build_Tc(3, order)

    def test_has_two_max_degree_vertices(self):
        """The maximum must equal delta and occur exactly twice."""
        assert has_two_max_degree_vertices([3, 3, 1, 1, 1, 1], 3)
        assert not has_two_max_degree_vertices([3, 3, 3, 1], 3)
        assert not has_two_max_degree_vertices([4, 3, 3, 1], 3)


class TestEnumeration:
    """Test exhaustive enumeration up to isomorphism."""

    @pytest.mark.parametrize("n", range(1, 8))
    def test_prufer_counts(self, n):
        """Prüfer decoding with canonical dedup finds every unlabelled tree."""
        assert sum(1 for _ in enumerate_trees(n, strategy="prufer")) == TREE_COUNTS[n - 1]

    @pytest.mark.parametrize("n", range(1, 11))
    def test_free_counts(self, n):
        """The networkx free-tree generator gives the same counts."""
        assert sum(1 for _ in enumerate_trees(n, strategy="free")) == TREE_COUNTS[n - 1]

    @pytest.mark.slow
    @pytest.mark.parametrize("n", [12, 13, 14])
    def test_larger_counts(self, n):
        """Counts at the default enumeration cap."""
        assert sum(1 for _ in enumerate_trees(n)) == TREE_COUNTS[n - 1]

    @pytest.mark.slow
    def test_prufer_matches_auto_above_switch(self):
        """Past prufer_max_order, auto (free trees) yields exactly the Prüfer representatives."""
        prufer = {(tree.vertex_count, tree.edges) for tree in enumerate_trees(9, strategy="prufer")}
        auto = {(tree.vertex_count, tree.edges) for tree in enumerate_trees(9)}
        assert len(prufer) == TREE_COUNTS[8]
        assert prufer == auto

    def test_trees_pairwise_non_isomorphic(self):
        """No isomorphism class is yielded twice."""
        codes = [tree.canonical_form for tree in enumerate_trees(9)]
        assert len(codes) == len(set(codes))

    def test_cap_enforced(self):
        """Orders above the cap are refused."""
        with pytest.raises(EnumerationCapError):
            list(enumerate_trees(17))

    def test_unknown_strategy(self):
        """Only auto, prufer and free are accepted."""
        with pytest.raises(UnknownStrategyError):
            list(enumerate_trees(5, strategy="greedy"))

    @pytest.mark.parametrize("strategy", ["prufer", "free"])
    def test_constrained_counts(self, strategy):
        """n = 6 has only the double star; n = 7 adds the path-joined pair."""
        assert len(list(enumerate_constrained_trees(6, 3, strategy=strategy))) == 1
        assert len(list(enumerate_constrained_trees(7, 3, strategy=strategy))) == 2

    def test_constrained_contains_tc(self):
        """T_c is among the trees with two degree-delta vertices."""
        trees = list(enumerate_constrained_trees(9, 3))
        tc = build_Tc(3, 9)
        assert any(tree.is_isomorphic(tc) for tree in trees)
        assert all(tree.count_degree(3) == 2 and tree.max_degree == 3 for tree in trees)
