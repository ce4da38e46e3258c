import pytest

from wadgeposet.classes import is_embeddable, is_shrub, str_decr, str_incr
from wadgeposet.errors import ParamError, UnknownFixture
from wadgeposet.families import (
    FamilySpec,
    embeddable_corpus,
    fixture,
    fixture_names,
    gen_P,
    gen_Q,
    small_colored_posets,
)
from wadgeposet.poset import is_ideal, name_inclusion


def size_P(n, M):
    # bottom, w/x for 0..M, y for 0..M-1, towers of height 2*floor(m/n)+1
    return 1 + 2 * (M + 1) + M + sum(2 * (m // n) + 1 for m in range(M))


def size_Q(n, M):
    return 1 + 2 * n * (M + 1) + M + sum(2 * (m // n) + 1 for m in range(M))


class TestCounts:
    def test_examples(self):
        assert set(gen_P(1, 1).names) == {"bot", "w:0", "x:0", "y:0", "z:0:0", "w:1", "x:1"}
        assert gen_P(1, 2).n == 13
        assert gen_P(2, 2).n == 11
        assert set(gen_Q(1, 1).names) == {"bot", "x:0:0", "x:0:1", "y:0", "z:0:0", "x:1:0", "x:1:1"}
        assert gen_Q(2, 1).n == 11

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    @pytest.mark.parametrize("M", [1, 2, 5, 9])
    def test_sizes(self, n, M):
        assert gen_P(n, M).n == size_P(n, M)
        assert gen_Q(n, M).n == size_Q(n, M)

    def test_colors(self):
        P = gen_P(1, 3)
        ones = {P.names[p] for p in range(P.n) if P.color[p]}
        assert ones == {"w:0", "w:1", "w:2", "w:3", "z:0:0", "z:1:0", "z:1:2", "z:2:0", "z:2:2", "z:2:4"}
        Q = gen_Q(2, 1)
        ones = {Q.names[q] for q in range(Q.n) if Q.color[q]}
        assert ones == {"x:0:0", "x:0:2", "x:1:0", "x:1:2", "z:0:0"}

    @pytest.mark.parametrize("bad", [(0, 1), (1, 0), (-1, 3), (1.5, 2)])
    def test_param_errors(self, bad):
        with pytest.raises(ParamError):
            gen_P(*bad)
        with pytest.raises(ParamError):
            gen_Q(*bad)

    def test_spec(self):
        assert FamilySpec("Q", 2, 1).build() == gen_Q(2, 1)
        with pytest.raises(ParamError):
            FamilySpec("R", 1, 1)


class TestStructure:
    @pytest.mark.parametrize("n", [1, 2, 3])
    @pytest.mark.parametrize("M", [1, 2, 4])
    def test_embeddable_and_shrub(self, n, M):
        for P in (gen_P(n, M), gen_Q(n, M)):
            assert is_shrub(P) and is_embeddable(P)

    @pytest.mark.parametrize("gen", [gen_P, gen_Q])
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_truncations_are_ideals_of_longer_ones(self, gen, n):
        for M in range(1, 5):
            A, B = gen(n, M), gen(n, M + 1)
            assert is_ideal(A, B, name_inclusion(A, B))
            C = gen(n, M + 3)
            assert is_ideal(A, C, name_inclusion(A, C))

    @pytest.mark.parametrize("M", [1, 3, 6])
    def test_cross_parameter_ideal(self, M):
        for n in (1, 2):
            for m in range(n + 1, 4):
                A, B = gen_P(m, M), gen_P(n, M)
                assert is_ideal(A, B, name_inclusion(A, B))

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_strength_formula(self, n):
        for m in range(10):
            P = gen_P(n, m + 1)
            assert str_incr(P, P.index(f"w:{m}")) == 2 * (m // n) + 3
            # larger truncations add nothing above w:m
            P = gen_P(n, m + 4)
            assert str_incr(P, P.index(f"w:{m}")) == 2 * (m // n) + 3

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
    def test_column_strength(self, n):
        Q = gen_Q(n, 1)
        assert str_decr(Q, Q.index(f"x:0:{2 * n - 2}")) == 2 * n


class TestFixtures:
    def test_vee(self):
        V = fixture("vee")
        assert V.n == 3 and V.color == (1, 0, 0) and V.bottom == 0
        assert V.maximal == (1, 2)

    def test_p4(self):
        P = fixture("p4")
        assert P.n == 4 and all(P.lt(a, b) for a in (0, 1) for b in (2, 3))
        assert not P.le(0, 1) and not P.le(2, 3)

    def test_nbot3(self):
        P = fixture("nbot3")
        assert P.n == 4 and P.bottom == 0 and P.maximal == (1, 2, 3)

    def test_figure_one_items_are_uncolored(self):
        for name in ("p4", "nbot2", "ntop2", "omega3"):
            assert set(fixture(name).color) == {0}

    def test_unknown(self):
        with pytest.raises(UnknownFixture):
            fixture("nope")

    def test_names_sorted_and_cached(self):
        assert fixture_names() == sorted(fixture_names())
        assert fixture("chain2") is fixture("chain2")


class TestEnumeration:
    def test_counts_of_colored_posets(self):
        # unlabeled posets on 1, 2, 3 points: 1, 2, 5; with two colors up to iso
        assert len(small_colored_posets(1)) == 2
        assert len(small_colored_posets(2)) - 2 == 7
        assert len(small_colored_posets(3)) - 9 == 32

    def test_corpus(self):
        corpus = embeddable_corpus(4)
        assert all(is_embeddable(P) for P in corpus)
        assert [P.n for P in corpus] == [2, 3, 3, 4, 4, 4, 4, 4]
