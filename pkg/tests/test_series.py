import random

import pytest

from conftest import corpus_names, group
import oracles
from metanil.errors import NotMember, NotNormal
from metanil.perm import Permutation, compose, elements
from metanil.series import (
    center,
    centralizer,
    cyclic_subgroup,
    derived_length,
    derived_series,
    gamma_subgroup,
    gamma_values,
    generated_subgroup,
    is_abelian,
    is_nilpotent,
    is_normal,
    is_soluble,
    lower_central_series,
    mutual_commutator,
    nilpotency_class,
    normal_closure,
    quotient,
    same_subgroup,
    whole,
)

cyc = Permutation.from_cycles
V4_GENS = [cyc(4, (0, 1), (2, 3)), cyc(4, (0, 2), (1, 3))]
SMALL = corpus_names(max_order=400)


def as_set(H):
    return elements(H.group if hasattr(H, "group") else H).as_frozenset()


def oracle_group(G):
    return oracles.closure([tuple(g) for g in G.generators], G.degree)


class TestGammaValues:
    def test_k1_is_whole_group(self):
        G = group("S4")
        assert gamma_values(G, 1) == elements(G)

    def test_abelian_k2_trivial(self):
        G = group("C12")
        assert list(gamma_values(G, 2)) == [G.identity]

    def test_s3_k2_is_a3(self):
        X = gamma_values(group("S3"), 2)
        assert list(X) == [(0, 1, 2), (1, 2, 0), (2, 0, 1)]

    @pytest.mark.parametrize("name", ["S4", "SL(2,3)", "D8", "F20", "S3wrC2"])
    @pytest.mark.parametrize("k", [1, 2, 3, 4])
    def test_matches_brute_force(self, name, k):
        G = group(name)
        assert gamma_values(G, k).as_frozenset() == oracles.gamma_values(oracle_group(G), k)

    def test_values_descend_into_generated_closure(self):
        for name in ["S4", "SL(2,3)", "D8", "S3wrC2"]:
            G = group(name)
            for k in range(1, 6):
                prev = generated_subgroup(G, gamma_values(G, k))
                assert all(x in prev for x in gamma_values(G, k + 1))


class TestGeneratedSubgroup:
    def test_identity_only(self):
        G = group("S4")
        assert generated_subgroup(G, [G.identity]).order == 1

    def test_all_elements(self):
        G = group("S4")
        assert same_subgroup(generated_subgroup(G, elements(G)), G)

    def test_gamma2_of_s4(self):
        G = group("S4")
        H = generated_subgroup(G, gamma_values(G, 2))
        assert H.order == 12
        assert as_set(H) == oracles.commutator_subgroup(oracle_group(G), oracle_group(G), 4)

    def test_not_member(self):
        with pytest.raises(NotMember):
            generated_subgroup(group("A4"), [cyc(4, (0, 1))])

    def test_witness_members(self):
        G = group("S5")
        H = generated_subgroup(G, [cyc(5, (0, 1, 2)), cyc(5, (2, 3, 4))])
        assert all(g in G for g in H.generator_witness)
        assert G.order % H.order == 0


class TestNormalClosure:
    def test_trivial(self):
        G = group("S4")
        assert normal_closure(G, [G.identity]).order == 1

    def test_s4_three_cycle(self):
        assert normal_closure(group("S4"), [cyc(4, (0, 1, 2))]).order == 12

    def test_a5_is_simple(self):
        G = group("A5")
        for x in elements(G):
            if not x.is_identity():
                assert normal_closure(G, [x]).order == 60

    @pytest.mark.parametrize("name", ["S4", "SL(2,3)", "D6", "GL(2,3)"])
    def test_matches_oracle(self, name):
        G = group(name)
        full = oracle_group(G)
        rng = random.Random(name)
        for x in rng.sample(list(elements(G)), 6):
            assert as_set(normal_closure(G, [x])) == oracles.normal_closure(full, [tuple(x)], G.degree)


class TestLowerCentralSeries:
    def test_c6(self):
        lcs = lower_central_series(group("C6"))
        assert lcs.orders == [6, 1]
        assert lcs.stabilized_at == 2

    def test_s3(self):
        lcs = lower_central_series(group("S3"))
        assert lcs.orders == [6, 3]
        assert lcs.term(3).order == 3

    def test_s4(self):
        lcs = lower_central_series(group("S4"))
        assert lcs.orders == [24, 12]
        assert all(lcs.term(k).order == 12 for k in range(2, 8))

    @pytest.mark.parametrize("name", SMALL)
    def test_three_routes_agree(self, name):
        G = group(name)
        routes = [lower_central_series(G, m) for m in ("values", "commutators", "generators")]
        for k in range(1, 7):
            terms = [r.term(k) for r in routes]
            assert same_subgroup(terms[0], terms[1])
            assert same_subgroup(terms[0], terms[2])

    @pytest.mark.parametrize("name", corpus_names(max_order=150))
    def test_matches_oracle(self, name):
        G = group(name)
        expected = [len(t) for t in oracles.lower_central(oracle_group(G), G.degree)]
        assert lower_central_series(G).orders == expected

    @pytest.mark.parametrize("name", corpus_names(max_order=2000))
    def test_terms_normal(self, name):
        G = group(name)
        for k in range(1, 7):
            assert is_normal(G, generated_subgroup(G, gamma_values(G, k)))


class TestDerivedSeries:
    def test_abelian(self):
        ds = derived_series(group("C12"))
        assert ds.orders == [12, 1]
        assert ds.stabilized_at == 2

    def test_s4(self):
        assert derived_series(group("S4")).orders == [24, 12, 4, 1]
        assert derived_length(group("S4")) == 3

    def test_a5(self):
        ds = derived_series(group("A5"))
        assert ds.orders == [60]
        assert not is_soluble(group("A5"))

    @pytest.mark.parametrize("name", corpus_names(max_order=150))
    def test_matches_oracle(self, name):
        G = group(name)
        expected = [len(t) for t in oracles.derived(oracle_group(G), G.degree)]
        assert derived_series(G).orders == expected

    @pytest.mark.parametrize("name", SMALL)
    def test_soluble_iff_no_perfect_term(self, name):
        ds = derived_series(group(name))
        last = ds.last
        assert is_soluble(group(name)) == (last.order == 1)
        if last.order > 1:
            # stabilized nontrivial term is perfect
            assert derived_series(last.group).orders == [last.order]


class TestNilpotency:
    @pytest.mark.parametrize("name", ["Q8", "D4", "D8", "C9", "C16"])
    def test_p_groups(self, name):
        assert is_nilpotent(group(name))

    def test_s3(self):
        assert not is_nilpotent(group("S3"))
        assert nilpotency_class(group("S3")) is None

    def test_q8_class(self):
        assert nilpotency_class(group("Q8")) == 2

    def test_trivial_class(self):
        assert nilpotency_class(group("C1")) == 0

    @pytest.mark.parametrize("name", corpus_names(max_order=150))
    def test_matches_oracle(self, name):
        G = group(name)
        assert is_nilpotent(G) == oracles.is_nilpotent(oracle_group(G), G.degree)

    def test_subgroup(self):
        G = group("S4")
        assert is_nilpotent(generated_subgroup(G, V4_GENS))
        assert not is_nilpotent(gamma_subgroup(G, 2))


class TestCenter:
    def test_abelian(self):
        assert center(group("C12")).order == 12

    def test_s4(self):
        assert center(group("S4")).order == 1

    def test_q8(self):
        assert center(group("Q8")).order == 2

    @pytest.mark.parametrize("name", ["SL(2,3)", "D8", "GL(2,3)", "S3xC5"])
    def test_matches_oracle(self, name):
        G = group(name)
        assert as_set(center(G)) == oracles.center(oracle_group(G))

    def test_centralizer(self):
        G = group("S4")
        C = centralizer(G, cyc(4, (0, 1, 2)))
        assert C.order == 3
        assert is_normal(G, center(G))


class TestMutualCommutator:
    def test_with_trivial(self):
        G = group("S4")
        assert mutual_commutator(G, G, generated_subgroup(G, [])).order == 1

    def test_a3_s3(self):
        G = group("S3")
        A3 = generated_subgroup(G, [cyc(3, (0, 1, 2))])
        assert same_subgroup(mutual_commutator(G, A3, G), A3)

    def test_v4_a4(self):
        # frozen from the brute-force oracle: [V4, A4] = V4
        G = group("S4")
        V4 = generated_subgroup(G, V4_GENS)
        A4 = generated_subgroup(G, [cyc(4, (0, 1, 2)), cyc(4, (1, 2, 3))])
        result = mutual_commutator(G, V4, A4)
        assert result.order == 4
        assert same_subgroup(result, V4)

    def test_cyclic_element(self):
        G = group("S3")
        A3 = generated_subgroup(G, [cyc(3, (0, 1, 2))])
        t = cyclic_subgroup(G, cyc(3, (0, 1)))
        assert same_subgroup(mutual_commutator(G, A3, t), A3)


class TestQuotient:
    def test_by_trivial(self):
        G = group("S4")
        Q = quotient(G, generated_subgroup(G, []))
        assert Q.order == 24

    def test_by_whole(self):
        G = group("S4")
        assert quotient(G, whole(G)).order == 1

    def test_s4_mod_v4(self):
        G = group("S4")
        Q = quotient(G, generated_subgroup(G, V4_GENS))
        assert Q.group.degree == 6
        assert Q.order == 6
        assert not is_abelian(Q.group)

    def test_not_normal(self):
        G = group("S4")
        with pytest.raises(NotNormal):
            quotient(G, generated_subgroup(G, [cyc(4, (0, 1))]))

    @pytest.mark.parametrize("name", ["S4", "SL(2,3)", "S3wrC2", "A4wrC2"])
    def test_homomorphism(self, name):
        G = group(name)
        N = gamma_subgroup(G, 2)
        Q = quotient(G, N)
        assert Q.order * N.order == G.order
        els = list(elements(G))
        rng = random.Random(name)
        for _ in range(1000):
            g, h = rng.choice(els), rng.choice(els)
            assert Q.project(compose(g, h)) == compose(Q.project(g), Q.project(h))
        for n in elements(N.group):
            assert Q.project(n).is_identity()


class TestIsNormal:
    def test_center(self):
        G = group("Q8")
        assert is_normal(G, center(G))

    def test_a3_in_s3(self):
        G = group("S3")
        assert is_normal(G, generated_subgroup(G, [cyc(3, (0, 1, 2))]))

    def test_point_stabilizer(self):
        G = group("S4")
        stab = generated_subgroup(G, [cyc(4, (1, 2)), cyc(4, (1, 2, 3))])
        assert stab.order == 6
        assert not is_normal(G, stab)
