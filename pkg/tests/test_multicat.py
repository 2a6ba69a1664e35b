"""Multicategory layer: the composition laws themselves pin the conventions.

The block-permutation convention used by the operadic composition is the one
under which unity, associativity and both equivariance laws all hold; the
tests below check a hand-computed composite, run the full law suite on the
clean views, and confirm that each deliberate corruption is caught by the
named law.
"""

import pytest

from bipermkit.biperm import instance_finsk, instance_fset, instance_mandellA
from bipermkit.multicat import (
    BarrattEcclesView,
    CatMultinatTransData,
    EndCell,
    EndomorphismView,
    PreimageProcedures,
    PseudoSymmetricMultifunctorData,
    SamplingError,
    StructuralError,
    check_multicat,
    check_multinat,
    check_pseudo_symmetric,
    compose_pseudo_symmetric,
    identity_pseudo_symmetric,
    multiequivalence_roundtrip,
    pseudo_symmetric_agree,
    rand_perm,
)
from bipermkit.permalg import (
    Permutation,
    block_swap,
    compose,
    from_cycles,
    identity,
)
from bipermkit.reporting import stable_rng

FINSK = instance_finsk()
FSET = instance_fset()
MA = instance_mandellA()

SWAP = Permutation((2, 1))
CYC3 = from_cycles(3, (1, 2, 3))


# -- Barratt-Eccles view ----------------------------------------------------


class TestBarrattEccles:
    def setup_method(self):
        self.be = BarrattEcclesView()

    def test_gamma_hand_computed(self):
        # gamma(swap; id_1, swap_2): swap inside the second block, then the
        # one-element block moves past the two-element block.
        got = self.be.gamma(SWAP, [identity(1), Permutation((2, 1))])
        assert got.images == (3, 2, 1)

    def test_gamma_uniform_blocks_is_block_swap(self):
        got = self.be.gamma(SWAP, [identity(2), identity(2)])
        assert got == block_swap(2, 2)

    def test_gamma_arity_zero(self):
        # nullary inner cells erase their inputs
        got = self.be.gamma(SWAP, [identity(0), identity(2)])
        assert got.images == (1, 2)

    def test_gamma_wrong_count_raises(self):
        with pytest.raises(SamplingError):
            self.be.gamma(SWAP, [identity(1)])

    def test_law_suite_clean(self):
        cells = [identity(0), identity(1), SWAP, CYC3, Permutation((3, 1, 2))]
        twos = [(SWAP, identity(2)), (CYC3, Permutation((2, 1, 3)))]
        rep = check_multicat(self.be, cells, twos, seed=11, rounds=3)
        assert rep.ok, rep.lines()

    def test_gamma_dropping_block_perm_fails_top_equivariance(self):
        class Dropped(BarrattEcclesView):
            def gamma(self, p, qs):
                from bipermkit.permalg import block_sum

                return block_sum(qs)

        view = Dropped(arities=(1, 2, 3))
        rep = check_multicat(view, [identity(2)], seed=3, rounds=8)
        assert "top-equivariance" in rep.failures()

    def test_wrong_action_side_fails_top_equivariance(self):
        class LeftAction(BarrattEcclesView):
            def sigma_act(self, p, sigma):
                return compose(sigma, p)

        view = LeftAction(arities=(1, 2))
        rep = check_multicat(view, [SWAP], seed=5, rounds=8)
        assert "top-equivariance" in rep.failures()

    def test_deterministic_report(self):
        cells = [SWAP, CYC3]
        a = check_multicat(self.be, cells, seed=7, rounds=2).lines()
        b = check_multicat(self.be, cells, seed=7, rounds=2).lines()
        assert a == b


# -- endomorphism views -----------------------------------------------------


def _end_cells(C):
    zero = C.zero()
    if zero == ():
        a, b = (1,), (2,)
        out = (1, 2)
    else:
        a, b = 1, 2
        out = 3
    combined = C.oplus(a, b)
    assert combined == out
    return [
        EndCell((a, b), out, C.identity_mor(out)),
        EndCell((out,), out, C.identity_mor(out)),
        EndCell((), zero, C.identity_mor(zero)),
    ]


class TestEndomorphism:
    def test_sigma_act_hand_computed(self):
        view = EndomorphismView(FINSK)
        p = EndCell((1, 2), 3, FINSK.identity_mor(3))
        acted = view.sigma_act(p, SWAP)
        assert acted.inputs == (2, 1)
        assert acted.mor.images == (2, 3, 1)

    def test_gamma_unary_is_composition(self):
        view = EndomorphismView(FINSK)
        f = EndCell((2,), 2, FINSK.mor_from_perm(2, 2, SWAP))
        g = EndCell((2,), 2, FINSK.mor_from_perm(2, 2, SWAP))
        assert view.gamma(g, [f]).mor == FINSK.compose(g.mor, f.mor)

    def test_gamma_profile_mismatch_raises(self):
        view = EndomorphismView(FINSK)
        p = EndCell((1, 2), 3, FINSK.identity_mor(3))
        with pytest.raises(SamplingError):
            view.gamma(p, [view.unit(2), view.unit(2)])

    @pytest.mark.parametrize("C", [FINSK, FSET, MA], ids=["finsk", "fset", "mandellA"])
    def test_law_suite_clean(self, C):
        view = EndomorphismView(C)
        rep = check_multicat(view, _end_cells(C), seed=2, rounds=2)
        assert rep.ok, rep.lines()


# -- pseudo symmetric data --------------------------------------------------


class ZFourView(BarrattEcclesView):
    """Hom categories fattened to Z/4 under addition: 2-cells are (src, tgt, g).

    Identities are g=0 and every 2-cell is invertible, so pseudo symmetry
    components can genuinely differ from identities here.
    """

    name = "z4"

    def two_profile(self, t):
        return t[0], t[1]

    def two_id(self, p):
        return (p, p, 0)

    def two_vcomp(self, after, before):
        if before[1] != after[0]:
            raise StructuralError("endpoint mismatch")
        return (before[0], after[1], (before[2] + after[2]) % 4)

    def two_gamma(self, t, ss):
        return (
            self.gamma(t[0], [s[0] for s in ss]),
            self.gamma(t[1], [s[1] for s in ss]),
            (t[2] + sum(s[2] for s in ss)) % 4,
        )

    def two_sigma(self, t, sigma):
        return (compose(t[0], sigma), compose(t[1], sigma), t[2])

    def two_eq(self, s, t):
        return s == t

    def sample_two_from(self, p, rng):
        return (p, rand_perm(p.n, rng), rng.randrange(4))


def _parity2(sigma):
    n = sigma.n
    inv = sum(
        1
        for i in range(n)
        for j in range(i + 1, n)
        if sigma.images[i] > sigma.images[j]
    )
    return (inv % 2) * 2


def _const_psi(view, value):
    def psi(sigma, p):
        moved = compose(p, sigma)
        return (moved, moved, value % 4)

    return psi


class TestPseudoSymmetric:
    def setup_method(self):
        self.z4 = ZFourView(arities=(1, 2, 2, 3))
        self.cells = [identity(1), SWAP, CYC3]
        self.twos = [(SWAP, identity(2), 1), (CYC3, CYC3, 3)]

    def test_z4_is_a_clean_view(self):
        rep = check_multicat(self.z4, self.cells, self.twos, seed=4, rounds=2)
        assert rep.ok, rep.lines()

    def test_identity_data_passes(self):
        F = identity_pseudo_symmetric(self.z4)
        rep = check_pseudo_symmetric(F, self.cells, self.twos, seed=1, rounds=3)
        assert rep.ok, rep.lines()

    def test_identity_data_on_strict_view_checks_strictness(self):
        view = EndomorphismView(FSET)
        F = identity_pseudo_symmetric(view)
        rep = check_pseudo_symmetric(F, _end_cells(FSET), seed=1)
        assert rep.ok, rep.lines()
        assert "sigma-strictness" in rep.laws()

    def test_sign_cocycle_fails_exactly_top_equivariance(self):
        # parity is multiplicative, so unit and product laws hold; the
        # induced block permutation of an odd sigma over even-length blocks
        # is even, so top equivariance must fail.
        def psi(sigma, p):
            moved = compose(p, sigma)
            return (moved, moved, _parity2(sigma))

        F = PseudoSymmetricMultifunctorData(
            dom=self.z4,
            cod=self.z4,
            ob_map=lambda c: c,
            cell_map=lambda p: p,
            two_map=lambda t: t,
            psi=psi,
            name="sign",
        )
        rep = check_pseudo_symmetric(F, [SWAP], self.twos, seed=0, rounds=8)
        failed = set(rep.failures())
        assert "psi-top-equivariance" in failed
        for law in (
            "psi-unit-permutation",
            "psi-product-permutation",
            "psi-bottom-equivariance",
            "psi-naturality",
        ):
            assert law not in failed

    def test_missing_component_is_a_structural_error(self):
        F = PseudoSymmetricMultifunctorData(
            dom=self.z4,
            cod=self.z4,
            ob_map=lambda c: c,
            cell_map=lambda p: p,
            two_map=lambda t: t,
            psi=lambda sigma, p: None,
        )
        with pytest.raises(StructuralError):
            check_pseudo_symmetric(F, [SWAP], seed=0)

    def test_psi_needs_a_two_cell_layer(self):
        view = EndomorphismView(FSET)
        F = PseudoSymmetricMultifunctorData(
            dom=view,
            cod=view,
            ob_map=lambda c: c,
            cell_map=lambda p: p,
            psi=lambda sigma, p: p,
        )
        with pytest.raises(StructuralError):
            check_pseudo_symmetric(F, _end_cells(FSET), seed=0)


class TestComposition:
    def setup_method(self):
        self.z4 = ZFourView(arities=(1, 2, 2, 3))
        self.cells = [identity(1), SWAP, CYC3]
        self.twos = [(SWAP, identity(2), 1)]

    def _data(self, value, name):
        return PseudoSymmetricMultifunctorData(
            dom=self.z4,
            cod=self.z4,
            ob_map=lambda c: c,
            cell_map=lambda p: p,
            two_map=lambda t: t,
            psi=_const_psi(self.z4, value),
            name=name,
        )

    def test_identity_composition_gives_equal_data(self):
        F = self._data(2, "F")
        left = compose_pseudo_symmetric(identity_pseudo_symmetric(self.z4), F)
        right = compose_pseudo_symmetric(F, identity_pseudo_symmetric(self.z4))
        for composite in (left, right):
            rep = pseudo_symmetric_agree(composite, F, self.cells, self.twos, seed=3)
            assert rep.ok, rep.lines()

    def test_identity_components_compose_to_identity_components(self):
        F = identity_pseudo_symmetric(self.z4, "F")
        G = identity_pseudo_symmetric(self.z4, "G")
        assert compose_pseudo_symmetric(G, F).psi is None

    def test_pasting_adds_components(self):
        F = self._data(1, "F")
        G = self._data(2, "G")
        comp = compose_pseudo_symmetric(G, F)
        got = comp.psi_at(SWAP, SWAP)
        assert got[2] == 3
        moved = compose(SWAP, SWAP)
        assert got[0] == moved and got[1] == moved

    def test_composition_associative_on_components(self):
        F, G, H = self._data(1, "F"), self._data(2, "G"), self._data(3, "H")
        left = compose_pseudo_symmetric(compose_pseudo_symmetric(H, G), F)
        right = compose_pseudo_symmetric(H, compose_pseudo_symmetric(G, F))
        rep = pseudo_symmetric_agree(left, right, self.cells, self.twos, seed=9)
        assert rep.ok, rep.lines()

    def test_profile_mismatch_rejected(self):
        other = ZFourView()
        F = identity_pseudo_symmetric(self.z4)
        G = identity_pseudo_symmetric(other)
        with pytest.raises(ValueError):
            compose_pseudo_symmetric(G, F)


# -- round trips ------------------------------------------------------------


class TestRoundtrip:
    def setup_method(self):
        self.be = BarrattEcclesView()
        self.cells = [identity(1), SWAP, CYC3]
        self.twos = [(SWAP, identity(2))]

    def test_identity_roundtrip_clean(self):
        F = identity_pseudo_symmetric(self.be)
        pre = PreimageProcedures(cell=lambda p: p, two=lambda t: t, witness=lambda z: True)
        rep = multiequivalence_roundtrip(
            F,
            pre,
            dom_cells=self.cells,
            cod_cells=self.cells,
            dom_twos=self.twos,
            cod_twos=self.twos,
            cod_objects=["*"],
        )
        assert rep.ok, rep.lines()

    def test_perturbed_preimage_caught(self):
        F = identity_pseudo_symmetric(self.be)

        def warped(p):
            return compose(p, SWAP) if p.n == 2 else p

        pre = PreimageProcedures(cell=warped)
        rep = multiequivalence_roundtrip(F, pre, dom_cells=[SWAP], cod_cells=[SWAP])
        failed = set(rep.failures())
        assert "cell-roundtrip-domain" in failed
        assert "cell-roundtrip-codomain" in failed

    def test_failing_witness_reported(self):
        F = identity_pseudo_symmetric(self.be)
        pre = PreimageProcedures(witness=lambda z: False)
        rep = multiequivalence_roundtrip(F, pre, cod_objects=["*"])
        assert "essential-surjectivity" in rep.failures()


# -- multinatural transformations -------------------------------------------


class TestMultinat:
    def test_identity_components_natural(self):
        view = EndomorphismView(FSET)
        F = identity_pseudo_symmetric(view)
        theta = CatMultinatTransData(F, F, component=lambda c: view.unit(c))
        rep = check_multinat(theta, _end_cells(FSET), seed=0)
        assert rep.ok, rep.lines()

    def test_non_natural_component_caught(self):
        view = EndomorphismView(FSET)
        F = identity_pseudo_symmetric(view)

        def reversal(c):
            images = tuple(range(c, 0, -1))
            return EndCell((c,), c, FSET.mor_from_perm(c, c, Permutation(images)))

        theta = CatMultinatTransData(F, F, component=reversal)
        p = EndCell((2, 1), 3, FSET.identity_mor(3))
        rep = check_multinat(theta, [p], seed=0)
        assert "multinaturality" in rep.failures()

    def test_pseudo_symmetry_preservation_discriminates(self):
        z4 = ZFourView(arities=(1, 2))

        def mk(value, name):
            return PseudoSymmetricMultifunctorData(
                dom=z4,
                cod=z4,
                ob_map=lambda c: c,
                cell_map=lambda p: p,
                two_map=lambda t: t,
                psi=_const_psi(z4, value),
                name=name,
            )

        def unit_component(c):
            return identity(1)

        same = CatMultinatTransData(mk(2, "F"), mk(2, "G"), component=unit_component)
        rep = check_multinat(same, [SWAP], seed=1)
        assert rep.ok, rep.lines()
        skewed = CatMultinatTransData(mk(2, "F"), mk(0, "G"), component=unit_component)
        rep = check_multinat(skewed, [SWAP], seed=1)
        assert "pseudo-symmetry-preservation" in rep.failures()


# -- sampling determinism ----------------------------------------------------


def test_sampled_families_are_deterministic():
    be = BarrattEcclesView()

    def draw():
        rng = stable_rng(42, "fam")
        return [be.sample_cell("*", rng) for _ in range(5)]

    assert draw() == draw()
