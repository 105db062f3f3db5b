"""Tests for the star-shaped Seifert diagrams and their decompositions."""

import random
from fractions import Fraction

import pytest

from jsjcalc.arith import DomainError
from jsjcalc.chains import KnotNode, StabilizedChain, classify, ContactClass
from jsjcalc.seifert import (
    CensusResult,
    Mixedness,
    SeifertNegE0,
    SeifertPosE0,
    amputate_leg,
    b_coefficients,
    build_seifert_tree,
    classify_mixedness,
    clean_leg_vs_center,
    count_choices_neg,
    count_tight_small,
    decompose_centrally,
    decompose_lightly,
    decompose_thoroughly,
    euler_number,
    is_universally_tight_small,
    is_virtually_overtwisted_small,
    leg_n_framings_from_b,
    lightly_mixed_pairs,
    make_seifert_neg,
    make_seifert_pos,
    merge_chains,
    normalize_lens,
    star_linking_matrix,
    ut_census_small,
)
from jsjcalc.trees import ContactAssembly

from oracles import int_det, minor_det


def F(q, p):
    return Fraction(q, p)


def pos_structure(fractions, signs):
    return make_seifert_pos([Fraction(*f) for f in fractions], signs)


def fig5a():
    """Thoroughly mixed structure on M(1/3, 1/2, 1/2): every head positive."""
    return pos_structure(
        [(1, 3), (1, 2), (1, 2)], [[(2, 0)], [(1, 0)], [(1, 0)]]
    )


def fig5b():
    """Lightly mixed structure on M(1/3, 1/2, 1/2): one both-signs head."""
    return pos_structure(
        [(1, 3), (1, 2), (1, 2)], [[(1, 1)], [(1, 0)], [(0, 1)]]
    )


class TestConstruction:
    def test_head_budgets_run_over_the_handle(self):
        s = fig5a()
        assert [leg[0].budget for leg in s.legs] == [2, 1, 1]

    def test_tail_budgets_are_chain_budgets(self):
        s = pos_structure(
            [(2, 7), (1, 2), (1, 2)],
            [[(3, 0), (0, 0)], [(1, 0)], [(1, 0)]],
        )
        # -7/2 = [-4, -2]: the head takes 3 stabilizations over the
        # 1-handle, the hanging -2 knot takes none.
        assert s.leg_framings(0) == (-4, -2)
        with pytest.raises(DomainError):
            pos_structure(
                [(2, 7), (1, 2), (1, 2)],
                [[(2, 0), (0, 1)], [(1, 0)], [(1, 0)]],
            )

    def test_last_leg_may_exceed_one(self):
        # q3/p3 = 5/2 gives e0 = 2 and the leg [-1, -2, -3].
        s = pos_structure(
            [(1, 2), (1, 2), (5, 2)],
            [[(1, 0)], [(1, 0)], [(0, 0), (0, 0), (1, 0)]],
        )
        assert s.leg_framings(2) == (-1, -2, -3)
        assert s.e0 == 2
        assert euler_number(s) == 2

    def test_es_zero_and_negative_euler_numbers(self):
        assert euler_number(pos_structure(
            [(1, 2), (1, 2), (1, 2)], [[(1, 0)]] * 3
        )) == 0
        neg = make_seifert_neg(
            [F(-1, 2), F(-1, 2), F(-1, 2)],
            (1, 0),
            [[(0, 0)], [(0, 0)], [(0, 0)]],
        )
        assert euler_number(neg) == -3

    def test_pos_rejects_bad_shapes(self):
        with pytest.raises(DomainError):
            make_seifert_pos([F(1, 2), F(1, 2)], [[(1, 0)], [(1, 0)]])
        with pytest.raises(DomainError):
            make_seifert_pos(
                [F(3, 2), F(1, 2), F(1, 2)],  # q >= p only allowed last
                [[(0, 0), (1, 0)], [(1, 0)], [(1, 0)]],
            )
        with pytest.raises(DomainError):  # head budget mismatch
            pos_structure([(1, 2), (1, 2), (1, 2)], [[(2, 0)], [(1, 0)], [(1, 0)]])

    def test_neg_rejects_small_e0(self):
        with pytest.raises(DomainError):
            make_seifert_neg(
                [F(-1, 2), F(-1, 2)], (1, 0), [[(0, 0)], [(0, 0)]]
            )

    def test_neg_central_budget(self):
        s = make_seifert_neg(
            [F(-1, 2)] * 4, (1, 1), [[(0, 0)]] * 4
        )
        assert s.e0 == -4 and s.central.budget == 2


class TestBCoefficients:
    def test_examples(self):
        assert b_coefficients((-1, -2, -3), 2) == (-2,)
        assert b_coefficients((-1, -4), 1) == (-3,)

    def test_round_trip_randomized(self):
        rng = random.Random(3)
        for _ in range(200):
            e0 = rng.randint(1, 4)
            b = tuple(rng.randint(-6, -2) for _ in range(rng.randint(1, 4)))
            framings = leg_n_framings_from_b(b, e0)
            assert b_coefficients(framings, e0) == b

    def test_rejects_wrong_shape(self):
        with pytest.raises(DomainError):
            b_coefficients((-2, -3), 1)
        with pytest.raises(DomainError):
            b_coefficients((-1, -2), 2)  # no b0 knot at all


class TestMixedness:
    def test_figure_examples(self):
        assert classify_mixedness(fig5a()) is Mixedness.THOROUGHLY_MIXED
        assert classify_mixedness(fig5b()) is Mixedness.LIGHTLY_MIXED
        assert lightly_mixed_pairs(fig5b()) == [(1, 2)]

    def test_thorough_all_negative_variant(self):
        assert classify_mixedness(fig5a().flipped()) is Mixedness.THOROUGHLY_MIXED

    def test_thorough_with_positive_e0_uses_nearest_stabilized(self):
        s = pos_structure(
            [(1, 2), (1, 2), (5, 2)],
            [[(1, 0)], [(1, 0)], [(0, 0), (0, 0), (1, 0)]],
        )
        assert classify_mixedness(s) is Mixedness.THOROUGHLY_MIXED
        t = pos_structure(
            [(1, 2), (1, 2), (5, 2)],
            [[(1, 0)], [(1, 0)], [(0, 0), (0, 0), (0, 1)]],
        )
        assert classify_mixedness(t) is Mixedness.NEITHER_POS

    def test_neither_pos(self):
        s = pos_structure([(1, 3), (1, 2), (1, 2)], [[(2, 0)], [(1, 0)], [(0, 1)]])
        assert classify_mixedness(s) is Mixedness.NEITHER_POS

    def test_neg_regime_classes(self):
        centrally = make_seifert_neg([F(-1, 2)] * 4, (1, 1), [[(0, 0)]] * 4)
        assert classify_mixedness(centrally) is Mixedness.CENTRALLY_MIXED
        assert centrally.e0 <= -4  # both-signs central forces e0 <= -4
        canonical = make_seifert_neg(
            [F(-1, 2), F(-1, 2), F(-2, 3)], (1, 0), [[(0, 0)], [(0, 0)], [(1, 0)]]
        )
        assert classify_mixedness(canonical) is Mixedness.CANONICAL
        other = make_seifert_neg(
            [F(-1, 2), F(-1, 2), F(-2, 3)], (1, 0), [[(0, 0)], [(0, 0)], [(0, 1)]]
        )
        assert classify_mixedness(other) is Mixedness.OTHER_NEG

    def test_centrally_mixed_needs_budget_two(self):
        # e0 = -3 gives the central knot a single stabilization, so no
        # centrally mixed structure exists at e0 = -3.
        with pytest.raises(DomainError):
            make_seifert_neg([F(-1, 2)] * 3, (1, 1), [[(0, 0)]] * 3)


class TestUniversallyTightSmall:
    def test_single_signed_legs_disagreeing(self):
        s = pos_structure([(1, 3), (1, 2), (1, 2)], [[(2, 0)], [(1, 0)], [(0, 1)]])
        assert is_universally_tight_small(s)
        assert not is_virtually_overtwisted_small(s)

    def test_internally_mixed_leg(self):
        # -8/3 = [-3, -3]: head budget 2, tail budget 1.
        s = pos_structure(
            [(3, 8), (1, 2), (1, 2)],
            [[(2, 0), (1, 0)], [(0, 1)], [(0, 1)]],
        )
        # heads single-signed (+, -, -), not mixed, but make leg 0 mixed:
        t = pos_structure(
            [(3, 8), (1, 2), (1, 2)],
            [[(2, 0), (0, 1)], [(0, 1)], [(0, 1)]],
        )
        assert classify_mixedness(t) is Mixedness.NEITHER_POS
        assert is_virtually_overtwisted_small(t)
        assert not is_universally_tight_small(t)
        assert classify_mixedness(s) is Mixedness.NEITHER_POS

    def test_thoroughly_mixed_is_not_ut_small(self):
        assert not is_universally_tight_small(fig5a())


class TestCounts:
    def test_count_tight_small_examples(self):
        assert count_tight_small([F(1, 2), F(1, 2), F(1, 2)]) == 7
        assert count_tight_small([F(1, 3), F(1, 3), F(1, 3)]) == 19
        assert count_tight_small([F(1, 2), F(1, 2), F(5, 2)]) == 8

    def test_count_choices_neg_examples(self):
        assert count_choices_neg([F(-1, 2)] * 4) == 3
        assert count_choices_neg([F(-1, 2), F(-1, 2), F(-2, 3)]) == 4
        s = make_seifert_neg([F(-1, 2)] * 4, (2, 0), [[(0, 0)]] * 4)
        assert count_choices_neg(s) == 3

    def test_census(self):
        assert ut_census_small([F(1, 2), F(1, 2), F(1, 2)]) == CensusResult("bound", 7)
        assert ut_census_small([F(1, 3), F(1, 2), F(1, 2)]) == CensusResult("exact", 6)
        assert ut_census_small([F(1, 2), F(1, 2), F(5, 2)]) == CensusResult("bound", 8)


class TestNormalizeLens:
    def test_examples(self):
        assert normalize_lens(4, -7) == (4, 1)
        assert normalize_lens(1, -2) == (1, 0)
        assert normalize_lens(24, 7) == (24, 7)

    def test_errors(self):
        with pytest.raises(DomainError):
            normalize_lens(0, 1)
        with pytest.raises(DomainError):
            normalize_lens(4, 2)


class TestDecomposeThoroughly:
    def test_unit_fractions_shatter_to_spheres(self):
        a = decompose_thoroughly(
            pos_structure([(1, 2), (1, 2), (1, 2)], [[(1, 0)]] * 3)
        )
        assert a.describe() == "{S^3, S^3, S^3}"
        assert decompose_thoroughly(fig5a()).describe() == "{S^3, S^3, S^3}"

    def test_component_count_and_tails(self):
        s = pos_structure(
            [(2, 7), (2, 5), (5, 2)],
            [[(3, 0), (0, 0)], [(1, 1), (0, 0)], [(0, 0), (0, 0), (1, 0)]],
        )
        a = decompose_thoroughly(s)
        assert len(a) == 3
        # tails: [-2], [-2], [-2, -3]; h1 orders 2, 2, 5 = the q_i
        assert sorted(c.h1_order() for c in a.components) == [2, 2, 5]

    def test_wrong_mixedness_rejected(self):
        with pytest.raises(DomainError):
            decompose_thoroughly(fig5b())


class TestMergeChains:
    def test_unit_fraction_legs(self):
        merged = merge_chains(
            (KnotNode(-2, 1, 0),), (KnotNode(-3, 0, 2),)
        )
        assert merged.framings == (-5,)
        assert merged.pq() == (5, 1)

    def test_reversed_tail_and_determinant(self):
        leg_i = (KnotNode(-3, 2, 0), KnotNode(-2, 0, 0))
        leg_j = (KnotNode(-4, 0, 3),)
        merged = merge_chains(leg_i, leg_j)
        assert merged.framings == (-2, -7)
        assert merged.pq() == (13, 7)
        assert merged.h1_order() == abs(
            int_det(
                [
                    [0, 1, 0, 1],
                    [1, -3, 1, 0],
                    [0, 1, -2, 0],
                    [1, 0, 0, -4],
                ]
            )
        )

    def test_symmetric_merge_is_reversal(self):
        leg_i = (KnotNode(-3, 2, 0), KnotNode(-2, 0, 0))
        leg_j = (KnotNode(-4, 0, 3), KnotNode(-5, 3, 0))
        assert merge_chains(leg_i, leg_j) == merge_chains(leg_j, leg_i).reversed()


class TestDecomposeLightly:
    def test_unit_fractions(self):
        s = pos_structure(
            [(1, 4), (1, 3), (1, 4)], [[(2, 1)], [(2, 0)], [(0, 3)]]
        )
        a = decompose_lightly(s)
        assert lightly_mixed_pairs(s) == [(1, 2)]
        assert a.describe() == "{S^3, L(7,1)[2+3-]}"

    def test_figure_structure(self):
        # Only the budget-2 head of the [-3] leg can carry both signs, so
        # the merged pair is forced to be the two [-2] legs; merging them
        # gives [-4], i.e. L(4,1).  Consistently, the unique-filling
        # corollary for M(1/p1,1/p2,1/p3) excludes exactly the case
        # p_{i-1} + p_{i+1} = 4.
        a = decompose_lightly(fig5b())
        kinds = sorted(c.kind() for c in a.components)
        assert kinds == ["lens", "s3"]
        lens = [c for c in a.components if c.kind() == "lens"][0]
        assert lens.pq() == (4, 1)

    def test_four_legs_give_three_components(self):
        s = make_seifert_pos(
            [F(1, 2), F(1, 2), F(1, 2), F(1, 2)],
            [[(1, 0)], [(0, 1)], [(1, 0)], [(1, 0)]],
        )
        # not thoroughly (head 1 negative only), and legs 2,3... no pair
        # works unless n-2 = 2 heads are both-signed; rebuild accordingly.
        s = make_seifert_pos(
            [F(1, 3), F(1, 3), F(1, 2), F(1, 2)],
            [[(1, 1)], [(1, 1)], [(1, 0)], [(0, 1)]],
        )
        a = decompose_lightly(s)
        assert len(a) == 3

    def test_explicit_pair_must_qualify(self):
        with pytest.raises(DomainError):
            decompose_lightly(fig5b(), 0, 1)


class TestDecomposeCentrally:
    def test_four_unit_legs(self):
        s = make_seifert_neg([F(-1, 2)] * 4, (1, 1), [[(0, 0)]] * 4)
        a = decompose_centrally(s)
        assert len(a) == 4
        assert all(c.pq() == (2, 1) for c in a.components)

    def test_leg_chains_verbatim(self):
        s = make_seifert_neg(
            [F(-3, 5), F(-1, 2), F(-1, 2), F(-1, 2)],
            (1, 1),
            [[(1, 0), (0, 0)], [(0, 0)], [(0, 0)], [(0, 0)]],
        )
        a = decompose_centrally(s)
        lens = [c for c in a.components if c.pq() == (5, 2)]
        assert len(lens) == 1  # the [-3, -2] leg evaluates to -5/2

    def test_wrong_mixedness(self):
        s = make_seifert_neg([F(-1, 2)] * 4, (2, 0), [[(0, 0)]] * 4)
        with pytest.raises(DomainError):
            decompose_centrally(s)


class TestAmputateLeg:
    def base(self, leg0_signs):
        return make_seifert_neg(
            [F(-7, 12), F(-1, 2), F(-1, 2)],
            (1, 0),
            [leg0_signs, [(0, 0)], [(0, 0)]],
        )

    def test_pair_with_gap_gives_three_choices(self):
        # -7/12 expands to [-1, -3, -2, -3]: leg [-3, -2, -3], budgets 1,0,1
        s = self.base([(1, 0), (0, 0), (0, 1)])
        for knot in (0, 1, 2):
            a = amputate_leg(s, 0, knot)
            assert len(a) == 2
        with pytest.raises(DomainError):
            amputate_leg(s, 1, 0)

    def test_last_knot_deletion_leaves_s3(self):
        s = self.base([(1, 0), (0, 0), (0, 1)])
        a = amputate_leg(s, 0, 2)
        chains = [c for c in a.components if c.kind() in ("s3", "lens")]
        assert len(chains) == 1 and chains[0].is_s3

    def test_both_signs_knot_single_choice(self):
        # -3/4 expands to [-1, -4]: the lone leg knot has budget 2.
        s = make_seifert_neg(
            [F(-3, 4), F(-1, 2), F(-1, 2)],
            (1, 0),
            [[(1, 1)], [(0, 0)], [(0, 0)]],
        )
        a = amputate_leg(s, 0, 0)
        seiferts = [c for c in a.components if c.kind() == "seifert-neg"]
        assert len(seiferts) == 1
        assert seiferts[0].legs[0].nodes == ()


class TestCleanLegVsCenter:
    def test_two_alternatives_without_gap(self):
        s = make_seifert_neg(
            [F(-1, 2), F(-1, 2), F(-2, 3)],
            (1, 0),
            [[(0, 0)], [(0, 0)], [(0, 1)]],
        )
        alts = clean_leg_vs_center(s, 2)
        assert len(alts) == 2
        # deleting the central knot leaves one chain per leg
        assert len(alts[0]) == 3

    def test_three_alternatives_with_one_gap(self):
        # leg [-2, -3] with the -3 knot stabilized: one unstabilized knot
        # sits between the central knot and the first stabilized one.
        s = make_seifert_neg(
            [F(-1, 2), F(-1, 2), F(-2, 5)],
            (1, 0),
            [[(0, 0)], [(0, 0)], [(0, 0), (0, 1)]],
        )
        alts = clean_leg_vs_center(s, 2)
        assert len(alts) == 3

    def test_preconditions(self):
        s = make_seifert_neg(
            [F(-1, 2), F(-1, 2), F(-2, 3)],
            (1, 0),
            [[(0, 0)], [(0, 0)], [(1, 0)]],
        )
        with pytest.raises(DomainError):
            clean_leg_vs_center(s, 2)  # same sign as the central knot


class TestSeifertTrees:
    def test_canonical_is_single_node(self):
        s = make_seifert_neg(
            [F(-1, 2), F(-1, 2), F(-2, 3)], (1, 0), [[(0, 0)], [(0, 0)], [(1, 0)]]
        )
        tree = build_seifert_tree(s)
        assert len(tree.nodes) == 1

    def test_centrally_mixed_runs_through_lens_trees(self):
        s = make_seifert_neg(
            [F(-3, 4), F(-1, 2), F(-1, 2), F(-1, 2)],
            (1, 1),
            [[(1, 1)], [(0, 0)], [(0, 0)], [(0, 0)]],
        )
        tree = build_seifert_tree(s)
        assert tree.depth() >= 2
        for leaf in tree.leaves():
            assert leaf.all_terminal()

    def test_neg_regime_reduces_to_canonical_and_lens(self):
        s = make_seifert_neg(
            [F(-7, 12), F(-1, 2), F(-1, 2)],
            (1, 0),
            [[(1, 0), (0, 0), (0, 1)], [(0, 0)], [(0, 0)]],
        )
        tree = build_seifert_tree(s)
        for leaf in tree.leaves():
            for c in leaf.components:
                if c.kind() == "seifert-neg":
                    assert classify_mixedness(c) is Mixedness.CANONICAL
                elif c.kind() == "lens":
                    assert classify(c) is ContactClass.UNIVERSALLY_TIGHT

    def test_thoroughly_mixed_tree(self):
        tree = build_seifert_tree(fig5a())
        assert len(tree.nodes) == 2
        assert tree.nodes[1].describe() == "{S^3, S^3, S^3}"

    def test_lightly_pair_pinning(self):
        s = make_seifert_pos(
            [F(1, 3), F(1, 3), F(1, 2), F(1, 2)],
            [[(1, 1)], [(1, 1)], [(1, 0)], [(0, 1)]],
        )
        assert lightly_mixed_pairs(s) == [(2, 3)]
        tree = build_seifert_tree(s, lightly_pair=(2, 3))
        assert tree.depth() >= 1

    def test_simultaneous_split_yields_ut_small_leaves(self):
        # -11/4 = [-3, -4]: head single-signed, tail knot both-signed.
        s = pos_structure(
            [(4, 11), (1, 2), (1, 2)],
            [[(2, 0), (1, 1)], [(0, 1)], [(0, 1)]],
        )
        assert is_virtually_overtwisted_small(s)
        tree = build_seifert_tree(s)
        assert len(tree.children_of(0)) == 1  # single both-signs branch in leg 0
        for leaf in tree.leaves():
            assert leaf.all_terminal()
            kinds = [c.kind() for c in leaf.components]
            assert "seifert-pos" in kinds

    def test_simultaneous_split_multi_leg_product(self):
        s = pos_structure(
            [(3, 8), (3, 8), (1, 2)],
            [[(2, 0), (0, 1)], [(0, 2), (1, 0)], [(0, 1)]],
        )
        assert classify_mixedness(s) is Mixedness.NEITHER_POS
        tree = build_seifert_tree(s)
        # legs 0 and 1 each have an adjacent pair with m = 0: 2 x 2 children
        assert len(tree.children_of(0)) == 4

    def test_flip_symmetry(self):
        s = pos_structure(
            [(4, 11), (1, 2), (1, 2)],
            [[(2, 0), (1, 1)], [(0, 1)], [(0, 1)]],
        )
        assert classify_mixedness(s) == classify_mixedness(s.flipped())
        t1, t2 = build_seifert_tree(s), build_seifert_tree(s.flipped())
        assert len(t1.nodes) == len(t2.nodes)
        assert sorted(len(t1.children_of(i)) for i in range(len(t1.nodes))) == sorted(
            len(t2.children_of(i)) for i in range(len(t2.nodes))
        )


class TestConservation:
    """Component H1 orders against minors of the star linking matrix."""

    def random_pos_thorough(self, rng):
        n = rng.randint(3, 5)
        fractions, signs = [], []
        for i in range(n):
            p = rng.randint(2, 9)
            q = rng.choice([x for x in range(1, p) if _coprime(x, p)])
            fractions.append(Fraction(q, p))
            leg = neg_of(p, q)
            leg_signs = []
            for k, a in enumerate(leg):
                budget = (-1 - a) if k == 0 else (-2 - a)
                plus = rng.randint(1, budget) if k == 0 else rng.randint(0, budget)
                leg_signs.append((plus, budget - plus))
            signs.append(leg_signs)
        return make_seifert_pos(fractions, signs)

    def test_thorough_components_match_minor(self):
        rng = random.Random(41)
        for _ in range(60):
            s = self.random_pos_thorough(rng)
            if classify_mixedness(s) is not Mixedness.THOROUGHLY_MIXED:
                continue
            a = decompose_thoroughly(s)
            matrix = star_linking_matrix(s)
            removed = [0]
            offset = 1
            for i in range(s.n):
                removed.append(offset)  # each leg's head row
                offset += len(s.legs[i])
            product_h1 = 1
            for c in a.components:
                product_h1 *= c.h1_order()
            assert product_h1 == abs(minor_det(matrix, removed))

    def test_lightly_components_match_minor(self):
        s = fig5b()
        a = decompose_lightly(s)
        matrix = star_linking_matrix(s)
        # the single both-signs head (leg 0) is removed; its row is 1
        product_h1 = 1
        for c in a.components:
            product_h1 *= c.h1_order()
        assert product_h1 == abs(minor_det(matrix, [1]))

    def test_centrally_components_match_minor(self):
        s = make_seifert_neg(
            [F(-3, 5), F(-1, 2), F(-1, 2), F(-1, 2)],
            (1, 1),
            [[(1, 0), (0, 0)], [(0, 0)], [(0, 0)], [(0, 0)]],
        )
        a = decompose_centrally(s)
        matrix = star_linking_matrix(s)
        product_h1 = 1
        for c in a.components:
            product_h1 *= c.h1_order()
        assert product_h1 == abs(minor_det(matrix, [0]))

    def test_star_matrix_det_agrees_with_recurrence(self):
        rng = random.Random(6)
        for _ in range(40):
            n = rng.randint(3, 5)
            legs = [
                [rng.randint(-6, -1)] + [rng.randint(-6, -2) for _ in range(rng.randint(0, 3))]
                for _ in range(n)
            ]
            center = rng.randint(-8, 0)
            from jsjcalc.seifert import star_det

            matrix = _raw_star_matrix(center, legs)
            assert star_det(center, legs) == int_det(matrix)


def _coprime(a, b):
    from math import gcd

    return gcd(a, b) == 1


def neg_of(p, q):
    from jsjcalc.arith import neg_cont_frac

    return neg_cont_frac(p, q)


def _raw_star_matrix(center, legs):
    from oracles import star_matrix

    return star_matrix(center, legs)
