"""Indexed categories with additive pairing: generators, cells, 2-cells.

The power functors are tabulated oracles whose laws hold by direct
combinatorics: pushforwards take fiberwise joins or mod-two sums, pairings
concatenate, and the coherence morphisms of the base act by relabeling
element positions.  The checkers are pinned from both sides: corrupting
one component at one constructed tuple must surface that tuple in the
report, and a fiberwise max must fail naturality over a base with empty
fibers, a genuine failure rather than an injected one.
"""

import pytest

from bipermkit.biperm import (
    FnMor,
    instance_finsk,
    instance_fset,
    instance_mandellA,
    tensor_reorder,
)
from bipermkit.dcat import (
    AdditiveModification,
    AdditiveNatTrans,
    AdditiveSMFunctor,
    BoundError,
    ComponentFunctor,
    DCatView,
    additive_mod_agree,
    additive_nat_agree,
    arity_zero_category,
    check_additive_mod,
    check_additive_nat,
    check_additive_smf,
    constant_loop_smf,
    derivation_loop_nat,
    free_additive_smf,
    gamma,
    identity_additive_mod,
    identity_additive_nat,
    leq_mod,
    order_additive_smf,
    outer_bit_nat,
    outer_loop_nat,
    parity_additive_smf,
    shift_mod,
    sigma_act,
    vcomp_mod,
    volume_mod,
    zero_endo_nat,
)
from bipermkit.multicat import SamplingError, StructuralError, check_multicat
from bipermkit.permalg import Permutation, compose, identity
from bipermkit.reporting import stable_rng
from bipermkit.serialize import emit, parse, smf_from_tree, smf_to_tree

FINSK = instance_finsk()
FSET = instance_fset()
MA = instance_mandellA()

SWAP = Permutation((2, 1))

NUMS = tuple(range(0, 33))
BIG_NUMS = tuple(range(0, 300))


def bits_finsk() -> AdditiveSMFunctor:
    return free_additive_smf(FINSK, NUMS)


def bits_fset() -> AdditiveSMFunctor:
    return free_additive_smf(FSET, NUMS)


def bits_ma() -> AdditiveSMFunctor:
    return free_additive_smf(MA, MA.objects_upto((4, 4)))


def loops_fset() -> AdditiveSMFunctor:
    return parity_additive_smf(FSET, NUMS)


def knob_fset() -> AdditiveSMFunctor:
    return constant_loop_smf(FSET, BIG_NUMS)


def masks_ma() -> AdditiveSMFunctor:
    return order_additive_smf(MA, MA.objects_upto((4, 2)))


def const0(vals) -> int:
    return 0


# -- the generators -------------------------------------------------------------


class TestGenerators:
    def test_bit_power_passes_over_the_numeric_bases(self):
        for D in (FINSK, FSET):
            rep = check_additive_smf(free_additive_smf(D, NUMS), (0, 1, 2), seed=1)
            assert rep.ok, rep.lines()
        assert "pairing-braiding" in rep.laws()
        assert "pairing-unity" in rep.laws()

    def test_bit_power_passes_over_partition_tuples(self):
        rep = check_additive_smf(bits_ma(), ((), (1,), (2,)), seed=2)
        assert rep.ok, rep.lines()

    def test_ordered_power_passes(self):
        rep = check_additive_smf(order_additive_smf(FSET, NUMS), (0, 1), seed=3)
        assert rep.ok, rep.lines()
        rep = check_additive_smf(masks_ma(), ((), (1,)), seed=3)
        assert rep.ok, rep.lines()

    def test_one_object_power_passes_over_bijections(self):
        rep = check_additive_smf(loops_fset(), (0, 1, 2), seed=4)
        assert rep.ok, rep.lines()

    def test_constant_loop_passes_over_any_base(self):
        rep = check_additive_smf(constant_loop_smf(FINSK, NUMS), (0, 1, 2), seed=5)
        assert rep.ok, rep.lines()

    def test_out_of_bound_access_is_a_checked_error(self):
        X = free_additive_smf(FINSK, (0, 1, 2))
        with pytest.raises(BoundError):
            X.cat(5)
        with pytest.raises(BoundError):
            check_additive_smf(X, (0, 1, 2), seed=6)

    def test_missing_value_category_is_structural(self):
        X = AdditiveSMFunctor(
            FINSK, (0, 1), cat=lambda a: None, fmap=lambda f: None,
            unit_obj=(), sum2=lambda a, b: None,
        )
        with pytest.raises(StructuralError):
            X.cat(0)

    def test_corrupted_pairing_is_caught(self):
        X = bits_finsk()

        def swapped(a, b):
            P = X.sum2(a, b)
            if (a, b) != (1, 1):
                return P
            return ComponentFunctor(lambda xs: xs[1] + xs[0], P.mor)

        bad = AdditiveSMFunctor(
            X.D, X.bound, X.cat, X.fmap, X.unit_obj, swapped, name="swapped"
        )
        rep = check_additive_smf(bad, (0, 1, 2), seed=7)
        assert not rep.ok
        assert any(law.startswith("pairing") for law in rep.failures())


# -- serialization ---------------------------------------------------------------


class TestSerialization:
    def test_roundtrip_is_byte_identical(self):
        X = free_additive_smf(FSET, (0, 1, 2, 3))
        text = emit(smf_to_tree(X))
        Y = smf_from_tree(parse(text))
        assert emit(smf_to_tree(Y)) == text
        rep = check_additive_smf(Y, (0, 1), seed=8)
        assert rep.ok, rep.lines()

    def test_roundtrip_of_the_constant_loop(self):
        X = constant_loop_smf(FINSK, (0, 1, 2))
        text = emit(smf_to_tree(X))
        Y = smf_from_tree(parse(text))
        assert emit(smf_to_tree(Y)) == text
        assert Y.unit_obj == "*"
        f = FnMor(2, 1, (1, 1))
        assert Y.fmap(f).mor_of(Y.cat(2).mor((1,))) == X.fmap(f).mor_of(X.cat(2).mor((1,)))

    def test_rebuilt_functor_stays_bounded(self):
        X = free_additive_smf(FSET, (0, 1, 2))
        Y = smf_from_tree(parse(emit(smf_to_tree(X))))
        with pytest.raises(BoundError):
            Y.cat(7)


# -- identity and unary cells ----------------------------------------------------


class TestIdentityAndUnary:
    def test_identity_cell_passes(self):
        for X in (bits_finsk(), loops_fset()):
            rep = check_additive_nat(identity_additive_nat(X), (0, 1, 2), seed=10)
            assert rep.ok, rep.lines()

    def test_unary_cells_check_exactly_the_monoidal_diagrams(self):
        Z = loops_fset()
        collapse = zero_endo_nat(Z)
        rep = check_additive_nat(collapse, (0, 1, 2), seed=11)
        assert rep.ok, rep.lines()
        assert "unity" in rep.laws()
        assert "additivity" in rep.laws()
        assert not additive_nat_agree(collapse, identity_additive_nat(Z), (0, 1, 2), seed=11).ok

    def test_arity_zero_is_the_value_category_over_one(self):
        Z = bits_finsk()
        assert arity_zero_category(Z) is Z.cat(FINSK.one())

    def test_cells_need_at_least_one_input(self):
        Z = bits_finsk()
        with pytest.raises(ValueError):
            AdditiveNatTrans((), Z, lambda anga: None)

    def test_missing_component_is_structural(self):
        Z = bits_finsk()
        phi = AdditiveNatTrans((Z,), Z, lambda anga: None)
        with pytest.raises(StructuralError):
            phi.at((1,))


# -- cells built over element positions -------------------------------------------


class TestOuterCells:
    def test_fiber_min_cell_passes(self):
        X = bits_finsk()
        rep = check_additive_nat(outer_bit_nat(X, 2, min, "and"), (0, 1, 2), seed=12)
        assert rep.ok, rep.lines()

    def test_fiber_min_cell_passes_over_partition_tuples(self):
        X = bits_ma()
        rep = check_additive_nat(
            outer_bit_nat(X, 2, min, "and"), ((), (1,), (2,)), seed=13
        )
        assert rep.ok, rep.lines()

    def test_grid_cell_passes_over_bijections(self):
        X = loops_fset()
        rep = check_additive_nat(outer_loop_nat(X, 2), (0, 1, 2), seed=14)
        assert rep.ok, rep.lines()

    def test_fiber_max_fails_naturality_once_a_fiber_is_empty(self):
        X = bits_finsk()
        mx = outer_bit_nat(X, 2, max, "or")
        f = FnMor(1, 2, (1,))
        push = X.fmap(FINSK.otimes_mor(f, FINSK.identity_mor(1)))
        lhs = push.ob_of(mx.at((1, 1)).ob_of(((1,), (1,))))
        rhs = mx.at((2, 1)).ob_of((X.fmap(f).ob_of((1,)), (1,)))
        assert lhs != rhs
        rep = check_additive_nat(mx, (1, 2), seed=15)
        assert "naturality" in rep.failures()

    def test_fiber_max_is_fine_over_bijections(self):
        X = bits_fset()
        rep = check_additive_nat(outer_bit_nat(X, 2, max, "or"), (0, 1, 2), seed=16)
        assert rep.ok, rep.lines()

    def test_corrupted_additivity_names_the_constructed_tuple(self):
        X = bits_finsk()
        mu = outer_bit_nat(X, 2, min, "and")

        def flipped(anga):
            comp = mu.component(anga)
            if anga != (2, 1):
                return comp
            return ComponentFunctor(
                lambda xs: tuple(1 - v if i == 0 else v for i, v in enumerate(comp.ob_of(xs))),
                comp.mor,
            )

        bad = AdditiveNatTrans(mu.source, mu.target, flipped, name="flipped")
        rep = check_additive_nat(bad, (0, 1), seed=17, tuple_cap=16)
        assert "additivity" in rep.failures()
        assert any(
            "gives (2, 1)" in w and "!=" in w for w in rep.failures()["additivity"]
        )


# -- composition ------------------------------------------------------------------


class TestGamma:
    def test_right_unity(self):
        X = bits_finsk()
        mu = outer_bit_nat(X, 2, min, "and")
        comp = gamma(mu, [identity_additive_nat(X)] * 2)
        assert additive_nat_agree(comp, mu, (0, 1, 2), seed=20).ok

    def test_left_unity(self):
        X = bits_finsk()
        mu = outer_bit_nat(X, 2, min, "and")
        comp = gamma(identity_additive_nat(X), [mu])
        assert additive_nat_agree(comp, mu, (0, 1, 2), seed=21).ok

    def test_composite_passes_the_full_suite(self):
        X = bits_finsk()
        mu = outer_bit_nat(X, 2, min, "and")
        comp = gamma(mu, [mu, identity_additive_nat(X)])
        assert comp.arity == 3
        rep = check_additive_nat(comp, (0, 1), seed=22, tuple_cap=10)
        assert rep.ok, rep.lines()

    def test_component_is_outer_after_inners(self):
        Z = loops_fset()
        mu = outer_loop_nat(Z, 2)
        comp = gamma(mu, [mu, identity_additive_nat(Z)])
        p = Z.cat(1).mor((1,))
        q = Z.cat(2).mor((0, 1))
        r = Z.cat(1).mor((1,))
        inner = mu.at((1, 2)).mor_of((p, q))
        want = mu.at((2, 1)).mor_of((inner, r))
        assert comp.at((1, 2, 1)).mor_of((p, q, r)) == want

    def test_zero_ary_slots_plug_objects(self):
        X = bits_finsk()
        mu = outer_bit_nat(X, 2, min, "and")
        comp = gamma(mu, [identity_additive_nat(X), (1,)])
        assert comp.arity == 1
        assert comp.at((2,)).ob_of(((1, 0),)) == (1, 0)
        rep = check_additive_nat(comp, (0, 1, 2), seed=23)
        assert rep.ok, rep.lines()

    def test_fully_applied_composite_is_an_object(self):
        X = bits_finsk()
        mu = outer_bit_nat(X, 2, min, "and")
        assert gamma(mu, [(1,), (0,)]) == (0,)
        assert gamma(mu, [(1,), (1,)]) == (1,)

    def test_wrong_count_raises(self):
        X = bits_finsk()
        with pytest.raises(SamplingError):
            gamma(outer_bit_nat(X, 2, min), [identity_additive_nat(X)])

    def test_wrong_target_raises(self):
        X, Y = bits_finsk(), constant_loop_smf(FINSK, NUMS)
        with pytest.raises(SamplingError):
            gamma(outer_bit_nat(X, 2, min), [identity_additive_nat(Y)] * 2)

    def test_modification_composition_stacks_components(self):
        Z = loops_fset()
        mu = outer_loop_nat(Z, 2)
        comp = gamma(
            shift_mod(mu),
            [identity_additive_mod(mu), identity_additive_mod(identity_additive_nat(Z))],
        )
        assert comp.arity == 3
        got = comp.at((1, 1, 1)).at(("*", "*", "*"))
        assert got == Z.cat(1).mor((1,))
        rep = check_additive_mod(comp, (0, 1), seed=24)
        assert rep.ok, rep.lines()

    def test_fully_applied_modification_is_a_value_morphism(self):
        Z = loops_fset()
        mu = outer_loop_nat(Z, 1)
        q = Z.cat(1).mor((1,))
        got = gamma(shift_mod(mu), [q])
        assert got == Z.cat(1).mor((0,))


# -- the symmetric group action ----------------------------------------------------


class TestSigmaAction:
    def test_identity_action_is_the_same_object(self):
        X = bits_finsk()
        mu = outer_bit_nat(X, 2, min, "and")
        assert sigma_act(mu, identity(2)) is mu
        assert sigma_act(shift_mod(outer_loop_nat(loops_fset(), 2)), identity(2)) is not None

    def test_action_reindexes_against_the_inverse(self):
        K = knob_fset()
        first = derivation_loop_nat(K, 3, weights=(1, 0, 0), name="first")
        acted = sigma_act(first, Permutation((2, 3, 1)))
        loop = K.cat(1)
        p, q, r = loop.mor((1,)), loop.mor((0,)), loop.mor((1,))
        assert acted.at((1, 1, 1)).mor_of((p, q, r)) == r
        assert acted.at((1, 1, 1)).mor_of((p, r, q)) == q

    def test_action_composes(self):
        Z = loops_fset()
        mu = outer_loop_nat(Z, 3)
        rng = stable_rng(25, "three-perms")
        for _ in range(4):
            sig = Permutation(tuple(rng.sample(range(1, 4), 3)))
            tau = Permutation(tuple(rng.sample(range(1, 4), 3)))
            left = sigma_act(sigma_act(mu, sig), tau)
            right = sigma_act(mu, compose(sig, tau))
            assert additive_nat_agree(left, right, (0, 1, 2), seed=25, tuple_cap=6).ok

    def test_all_zero_tuple_has_the_identity_coherence(self):
        assert tensor_reorder(FSET, (0, 0), SWAP) == FSET.identity_mor(0)
        Z = loops_fset()
        acted = sigma_act(outer_loop_nat(Z, 2), SWAP)
        empty = Z.cat(0).mor(())
        assert acted.at((0, 0)).mor_of((empty, empty)) == empty

    def test_acted_cell_still_passes_and_differs(self):
        K = knob_fset()
        skew = derivation_loop_nat(K, 2, weights=(1, 0), name="skew")
        acted = sigma_act(skew, SWAP)
        rep = check_additive_nat(acted, (0, 1, 2), seed=26)
        assert rep.ok, rep.lines()
        assert not additive_nat_agree(skew, acted, (1,), seed=26).ok

    def test_action_on_modifications(self):
        K = knob_fset()
        kappa = derivation_loop_nat(K, 2)
        acted = sigma_act(volume_mod(kappa), SWAP)
        rep = check_additive_mod(acted, (0, 1, 2), seed=27)
        assert rep.ok, rep.lines()
        want = volume_mod(sigma_act(kappa, SWAP))
        assert additive_mod_agree(acted, want, (0, 1, 2), seed=27).ok

    def test_degree_mismatch_raises(self):
        X = bits_finsk()
        with pytest.raises(ValueError):
            sigma_act(outer_bit_nat(X, 2, min), identity(3))


# -- 2-cells -------------------------------------------------------------------------


class TestModifications:
    def test_identity_modification_passes(self):
        Z = loops_fset()
        rep = check_additive_mod(identity_additive_mod(outer_loop_nat(Z, 2)), (0, 1, 2), seed=30)
        assert rep.ok, rep.lines()

    def test_shift_passes_and_squares_to_the_identity(self):
        Z = loops_fset()
        mu = outer_loop_nat(Z, 2)
        shift = shift_mod(mu)
        rep = check_additive_mod(shift, (0, 1, 2), seed=31)
        assert rep.ok, rep.lines()
        twice = vcomp_mod(shift, shift)
        assert additive_mod_agree(twice, identity_additive_mod(mu), (0, 1, 2), seed=31).ok

    def test_volume_passes_on_the_constant_loop(self):
        K = knob_fset()
        rep = check_additive_mod(volume_mod(derivation_loop_nat(K, 2)), (0, 1, 2), seed=32)
        assert rep.ok, rep.lines()

    def test_ordered_lift_passes(self):
        X = masks_ma()
        floor = outer_bit_nat(X, 2, const0, "floor")
        mu = outer_bit_nat(X, 2, min, "and")
        rep = check_additive_mod(leq_mod(floor, mu), ((), (1,)), seed=33)
        assert rep.ok, rep.lines()

    def test_corrupted_component_breaks_additivity(self):
        Z = loops_fset()
        mu = outer_loop_nat(Z, 2)

        def bump(anga):
            a = 1
            for x in anga:
                a *= x
            vec = (1,) * a if tuple(anga) == (1, 1) else (0,) * a
            return lambda xs: Z.cat(a).mor(vec)

        bad = AdditiveModification(mu, mu, bump, name="bump")
        rep = check_additive_mod(bad, (0, 1), seed=34)
        assert "additivity" in rep.failures()

    def test_unstacked_vertical_composition_raises(self):
        Z = loops_fset()
        mu = outer_loop_nat(Z, 2)
        with pytest.raises(ValueError):
            vcomp_mod(shift_mod(mu), identity_additive_mod(identity_additive_nat(Z)))

    def test_non_parallel_endpoints_raise(self):
        Z = loops_fset()
        with pytest.raises(ValueError):
            AdditiveModification(outer_loop_nat(Z, 2), identity_additive_nat(Z), lambda a: None)


# -- the multicategory view ----------------------------------------------------------


class TestDCatView:
    def test_law_suite_over_bijections(self):
        K = knob_fset()
        kappa = derivation_loop_nat(K, 2)
        skew = derivation_loop_nat(K, 2, weights=(1, 0), name="skew")
        cells = [identity_additive_nat(K), kappa, skew, sigma_act(skew, SWAP)]
        view = DCatView(FSET, cells, (0, 1, 2), seed=1)
        twos = [volume_mod(kappa), identity_additive_mod(kappa)]
        rep = check_multicat(view, [kappa, skew], twos, seed=40, rounds=2)
        assert rep.ok, rep.lines()
        assert "top-equivariance" in rep.laws()
        assert "bottom-equivariance" in rep.laws()
        assert "two-sigma-functoriality" in rep.laws()

    def test_law_suite_over_partition_tuples(self):
        X = masks_ma()
        mu = outer_bit_nat(X, 2, min, "and")
        floor = outer_bit_nat(X, 2, const0, "floor")
        cells = [identity_additive_nat(X), mu, floor]
        view = DCatView(MA, cells, ((), (1,)), seed=2)
        twos = [leq_mod(floor, mu), identity_additive_mod(mu)]
        rep = check_multicat(view, [mu, floor], twos, seed=41, rounds=1)
        assert rep.ok, rep.lines()

    def test_cell_eq_distinguishes(self):
        K = knob_fset()
        skew = derivation_loop_nat(K, 2, weights=(1, 0), name="skew")
        view = DCatView(FSET, [skew], (1,), seed=3)
        assert view.cell_eq(skew, derivation_loop_nat(K, 2, weights=(1, 0)))
        assert not view.cell_eq(skew, sigma_act(skew, SWAP))

    def test_two_iso_detection(self):
        K = knob_fset()
        kappa = derivation_loop_nat(K, 2)
        fview = DCatView(FSET, [kappa], (0, 1, 2), seed=4)
        assert fview.two_is_iso(volume_mod(kappa))
        X = masks_ma()
        mu = outer_bit_nat(X, 2, min, "and")
        floor = outer_bit_nat(X, 2, const0, "floor")
        mview = DCatView(MA, [mu, floor], ((), (1,)), seed=4)
        assert mview.two_is_iso(identity_additive_mod(mu))
        assert not mview.two_is_iso(leq_mod(floor, mu))

    def test_reports_are_deterministic(self):
        X = bits_finsk()
        mu = outer_bit_nat(X, 2, min, "and")
        a = check_additive_nat(mu, (0, 1, 2), seed=50).lines()
        b = check_additive_nat(outer_bit_nat(bits_finsk(), 2, min, "and"), (0, 1, 2), seed=50).lines()
        assert a == b
