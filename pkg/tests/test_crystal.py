import pytest

from qhowe.canonical import canonical_vector, fundamental_subsets, \
    is_fundamental
from qhowe.characters import fundamental_dimension
from qhowe.crystal import (CrystalGraph, apply_generating_word,
                           crystal_e, crystal_f, crystal_graph, export_dot,
                           generating_path, generating_word,
                           howe_crystal_decomposition, howe_decomposition,
                           length, sl2_crystal_E, sl2_crystal_F, sl2_string,
                           source, tableau_condition, tableau_e, tableau_f,
                           tableau_iso, word_to_text)
from qhowe.exception import BadValue, NotFound
from qhowe.extalg import Subset, basis


class TestCrystalOperators:

    def test_case_table(self):
        # the window {2,-3} moves -3 to -2
        assert crystal_f(2, Subset(3, [1, 2, -3])) == Subset(3, [1, 2, -2])
        assert crystal_f(2, Subset(3, [2, 3, -3])) == Subset(3, [2, 3, -2])
        assert crystal_f(3, Subset(3, [3])) == Subset(3, [-3])
        assert crystal_f(1, Subset(2, [1, -2])) == Subset(2, [1, -1])

    def test_leaving_the_crystal(self):
        # {1,-1} -> {2,-1} is fine, {1,-2} -> {2,-2} would be outside
        assert crystal_f(1, Subset(2, [1, -1])) == Subset(2, [2, -1])
        assert crystal_f(2, Subset(2, [1, 2])) == Subset(2, [1, -2])
        assert crystal_f(2, Subset(2, [2])) == Subset(2, [-2])
        assert crystal_f(2, Subset(2, [-2])) is None
        assert crystal_f(1, Subset(2, [-1])) is None

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_partial_inverse(self, n):
        for k in range(n + 1):
            for S in fundamental_subsets(n, k):
                for i in range(1, n + 1):
                    T = crystal_f(i, S)
                    if T is not None:
                        assert is_fundamental(T)
                        assert crystal_e(i, T) == S
                    U = crystal_e(i, S)
                    if U is not None:
                        assert crystal_f(i, U) == S

    @pytest.mark.parametrize("n", [2, 3])
    def test_weight_drops_by_simple_root(self, n):
        for k in range(n + 1):
            for S, i, T in crystal_graph(n, k).edges:
                diff = [a - b for a, b in zip(S.weight(), T.weight())]
                expected = [0] * n
                if i == n:
                    expected[n - 1] = 2
                else:
                    expected[i - 1] = 1
                    expected[i] = -1
                assert diff == expected

    def test_root_out_of_range(self):
        with pytest.raises(BadValue):
            crystal_f(3, Subset(2, [1]))
        with pytest.raises(BadValue):
            crystal_e(0, Subset(2, [1]))


class TestCrystalGraph:

    def test_vector_representation_path(self):
        graph = crystal_graph(3, 1)
        assert len(graph) == 6
        assert [i for _, i, _ in graph.edges] == [1, 2, 3, 2, 1]
        assert [S.members for S in graph.nodes] == [(1, ), (2, ), (3, ),
                                                    (-3, ), (-2, ), (-1, )]

    def test_second_fundamental(self):
        graph = CrystalGraph(3, 2)
        assert len(graph) == 14
        assert len(graph.edges) == 16
        assert graph.label_counts() == {1: 6, 2: 6, 3: 4}
        assert graph.nodes[0] == source(3, 2)

    def test_trivial(self):
        for n in (1, 2, 3):
            graph = crystal_graph(n, 0)
            assert graph.nodes == [Subset(n)]
            assert graph.edges == []

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_nodes_are_the_fundamental_subsets(self, n):
        for k in range(n + 1):
            graph = crystal_graph(n, k)
            assert sorted(graph.nodes, key=Subset.sort_key) == \
                fundamental_subsets(n, k)

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
    def test_sizes(self, n):
        for k in range(n + 1):
            assert len(crystal_graph(n, k)) == fundamental_dimension(n, k)

    def test_invalid_level(self):
        with pytest.raises(BadValue):
            CrystalGraph(2, 3)
        with pytest.raises(BadValue):
            CrystalGraph(0, 0)

    def test_layers(self):
        layers = crystal_graph(3, 1).layers()
        assert list(layers) == [0, 1, 2, 3, 4, 5]
        assert Subset(3, [2]) in crystal_graph(3, 1)

    def test_json(self):
        data = crystal_graph(2, 1).to_json()
        assert data["n"] == 2 and data["k"] == 1
        assert [node["subset"] for node in data["nodes"]] == [[1], [2], [-2],
                                                               [-1]]
        assert data["links"][0] == {"source": 0, "target": 1, "label": 1}

    def test_dot(self):
        text = export_dot(crystal_graph(2, 1))
        assert text.startswith("digraph crystal_n2_k1 {")
        assert '"0" -> "1" [label="1"];' in text
        assert '"2" [label="{-2}", shape=box];' in text
        assert text.count("->") == 3


class TestGeneratingWords:

    def test_length(self):
        assert length(Subset(3, [1, 2])) == 0
        assert length(Subset(3, [-1])) == 5
        assert generating_path(Subset(3, [-3])) == [1, 2, 3]
        with pytest.raises(NotFound):
            length(Subset(2, [2, -2]))

    def test_divided_power_step(self):
        S = Subset(2, [2, -1])
        word = generating_word(S)
        assert word == [(2, 1), (1, 2)]
        assert word_to_text(word) == "f1(2) f2"
        assert apply_generating_word(S) == canonical_vector(S)

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_reaches_canonical_vector(self, n):
        for k in range(n + 1):
            for S in fundamental_subsets(n, k):
                assert apply_generating_word(S) == canonical_vector(S)

    @pytest.mark.parametrize("n", [2, 3])
    def test_word_length_matches_distance(self, n):
        for k in range(n + 1):
            graph = crystal_graph(n, k)
            for S in graph.nodes:
                steps = sum(power for _, power in generating_word(S))
                assert steps == graph.lengths[S]

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_length_matches_breadth_first_depth(self, n):
        for k in range(n + 1):
            graph = crystal_graph(n, k)
            for S in graph.nodes:
                assert length(S) == graph.lengths[S]


class TestTableaux:

    def test_tableau_iso(self):
        assert tableau_iso(Subset(2, [1, -1])) == (1, -1)
        with pytest.raises(BadValue):
            tableau_iso(Subset(2, [2, -2]))

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_condition_matches_membership(self, n):
        for S in basis(n):
            if len(S) <= n:
                assert tableau_condition(S) == is_fundamental(S)

    def test_tableau_operators(self):
        assert tableau_f(1, (1, -2), 3) == (1, -1)
        assert tableau_f(1, (1, -1), 3) == (2, -1)
        assert tableau_f(1, (2, -2), 3) is None
        assert tableau_f(1, (1, -2, -1), 3) == (2, -2, -1)
        assert tableau_f(1, (1, 2, -2), 3) == (1, 2, -1)
        assert tableau_f(3, (3, -3), 3) is None
        assert tableau_f(2, (1, 2), 2) == (1, -2)
        assert tableau_e(1, (2, -1), 3) == (1, -1)
        assert tableau_e(1, (1, -1), 3) == (1, -2)
        assert tableau_e(2, (-2, ), 2) == (2, )

    def test_invalid_columns(self):
        for column in [(2, 1), (1, 1), (3, )]:
            with pytest.raises(BadValue):
                tableau_f(1, column, 2)
        with pytest.raises(BadValue):
            tableau_e(3, (1, ), 2)

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_tableau_iso_intertwines(self, n):
        for k in range(n + 1):
            for S in crystal_graph(n, k).nodes:
                word = tableau_iso(S)
                for i in range(1, n + 1):
                    T = crystal_f(i, S)
                    image = tableau_f(i, word, n)
                    assert image == (None if T is None else tableau_iso(T))
                    U = crystal_e(i, S)
                    image = tableau_e(i, word, n)
                    assert image == (None if U is None else tableau_iso(U))


class TestHoweCrystal:

    def test_sl2_operators(self):
        for n in (1, 2, 3):
            S = Subset(n, [n, -n])
            assert sl2_crystal_F(S) == Subset(n)
        assert sl2_crystal_F(Subset(2, [1, -1])) is None
        assert sl2_crystal_E(Subset(2, [1, -1])) is None
        assert sl2_crystal_E(Subset(3, [1, -1])) == \
            Subset(3, [1, 3, -3, -1])

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_bijection(self, n):
        pairs = set()
        for S, core, m in howe_crystal_decomposition(n):
            assert is_fundamental(core)
            assert m == len(S) - n
            assert S in sl2_string(core)
            pairs.add((core, m))
        assert len(pairs) == 4**n

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_strings(self, n):
        for k in range(n + 1):
            for core in fundamental_subsets(n, k):
                string = sl2_string(core)
                assert len(string) == n - k + 1
                for lower, upper in zip(string, string[1:]):
                    assert sl2_crystal_F(upper) == lower
                    assert howe_decomposition(upper)[0] == core
