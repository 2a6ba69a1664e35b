"""Multicategories enriched in small categories, presented by procedures.

A view exposes cells as opaque tokens together with profiles, units, the
composition gamma and (for symmetric views) the right sigma-action.  Hom
categories are never enumerated: every axiom is checked on supplied cells,
completed into composable families by the view's own sampling hook.

The checks in this module:

* check_multicat          unity, associativity, action functoriality and
                          the two equivariance laws;
* check_pseudo_symmetric  strict unit/composition preservation plus the
                          four axioms of the pseudo symmetry components;
* multiequivalence_roundtrip   both round trips and the caller-supplied
                          essential-surjectivity witnesses;
* check_multinat          multinaturality and pseudo symmetry preservation
                          for transformation data.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Tuple

from .biperm import fold_oplus_mor, reorder_iso, sample_hom
from .permalg import (
    Permutation,
    act_right,
    block_sum,
    compose,
    identity,
    induced_block_perm,
)
from .reporting import LawReport, stable_rng


class SamplingError(Exception):
    """A law instance could not be assembled from the supplied cells."""


class StructuralError(Exception):
    """Required component data is missing or ill-typed."""


def rand_perm(n: int, rng: random.Random) -> Permutation:
    return Permutation(tuple(rng.sample(range(1, n + 1), n)))


class CatMulticategoryView:
    """Interface shared by every multicategory presentation in the package.

    1-cells carry a profile (tuple of input objects, output object); the
    optional 2-cell layer is guarded by has_two_cells and views without one
    (discrete hom categories) simply leave it unimplemented.
    """

    name = "multicat"
    symmetric = True
    has_two_cells = True

    # 1-cell layer
    def profile(self, p) -> Tuple[tuple, object]:
        raise NotImplementedError

    def unit(self, c):
        raise NotImplementedError

    def gamma(self, p, qs: Sequence):
        raise NotImplementedError

    def sigma_act(self, p, sigma: Permutation):
        raise NotImplementedError

    def cell_eq(self, p, q) -> bool:
        raise NotImplementedError

    def describe(self, p) -> str:
        return repr(p)

    def arity(self, p) -> int:
        return len(self.profile(p)[0])

    # 2-cell layer
    def two_profile(self, t) -> Tuple[object, object]:
        raise NotImplementedError

    def two_id(self, p):
        raise NotImplementedError

    def two_vcomp(self, after, before):
        raise NotImplementedError

    def two_gamma(self, t, ss: Sequence):
        raise NotImplementedError

    def two_sigma(self, t, sigma: Permutation):
        raise NotImplementedError

    def two_eq(self, s, t) -> bool:
        raise NotImplementedError

    def two_is_iso(self, t) -> bool:
        return True

    def describe_two(self, t) -> str:
        return repr(t)

    # sampling hooks
    def sample_cell(self, c, rng: random.Random):
        """Some 1-cell with output c, or None when the view cannot supply one."""
        return None

    def sample_two_from(self, p, rng: random.Random):
        """Some 2-cell out of p; the identity is always a valid answer."""
        return self.two_id(p) if self.has_two_cells else None


def _supply(view: CatMulticategoryView, c, rng: random.Random):
    q = view.sample_cell(c, rng)
    if q is None:
        raise SamplingError(f"{view.name}: no cell with output {c!r}")
    return q


def _family(view: CatMulticategoryView, p, rng: random.Random) -> list:
    return [_supply(view, c, rng) for c in view.profile(p)[0]]


def _pair(view: CatMulticategoryView, a, b) -> str:
    return f"lhs={view.describe(a)} rhs={view.describe(b)}"


def _two_pair(view: CatMulticategoryView, a, b) -> str:
    return f"lhs={view.describe_two(a)} rhs={view.describe_two(b)}"


def check_multicat(
    view: CatMulticategoryView,
    cells: Sequence,
    two_cells: Sequence = (),
    seed=0,
    rounds: int = 2,
    prefix: str = "",
) -> LawReport:
    """Check the composition axioms on the supplied cells.

    Each supplied 1-cell seeds `rounds` composable families drawn through
    view.sample_cell; permutations are drawn at the matching arities.
    """
    rep = LawReport(f"multicat:{view.name}")
    rng = stable_rng(seed, f"multicat:{view.name}:{prefix}")
    for p in cells:
        inputs, out = view.profile(p)
        n = len(inputs)
        got = view.gamma(p, [view.unit(c) for c in inputs])
        rep.check(prefix + "gamma-right-unity", view.cell_eq(got, p), _pair(view, got, p))
        got = view.gamma(view.unit(out), [p])
        rep.check(prefix + "gamma-left-unity", view.cell_eq(got, p), _pair(view, got, p))
        for _ in range(rounds):
            qs = _family(view, p, rng)
            ks = tuple(view.arity(q) for q in qs)
            rss = [_family(view, q, rng) for q in qs]
            left = view.gamma(view.gamma(p, qs), [r for rs in rss for r in rs])
            right = view.gamma(p, [view.gamma(q, rs) for q, rs in zip(qs, rss)])
            rep.check(
                prefix + "gamma-associativity",
                view.cell_eq(left, right),
                _pair(view, left, right),
            )
            if not view.symmetric:
                continue
            sig = rand_perm(n, rng)
            tau = rand_perm(n, rng)
            got = view.sigma_act(p, identity(n))
            rep.check(prefix + "sigma-identity", view.cell_eq(got, p), _pair(view, got, p))
            left = view.sigma_act(view.sigma_act(p, sig), tau)
            right = view.sigma_act(p, compose(sig, tau))
            rep.check(
                prefix + "sigma-composition", view.cell_eq(left, right), _pair(view, left, right)
            )
            # gamma(p^s; q_{s(1)}..q_{s(n)}) = gamma(p; q)^{s<k_{s(1)},...,k_{s(n)}>}
            block = induced_block_perm(sig, act_right(ks, sig))
            left = view.gamma(view.sigma_act(p, sig), list(act_right(qs, sig)))
            right = view.sigma_act(view.gamma(p, qs), block)
            rep.check(
                prefix + "top-equivariance", view.cell_eq(left, right), _pair(view, left, right)
            )
            # gamma(p; q_j^{t_j}) = gamma(p; q)^{t_1 x ... x t_n}
            taus = [rand_perm(k, rng) for k in ks]
            left = view.gamma(p, [view.sigma_act(q, t) for q, t in zip(qs, taus)])
            right = view.sigma_act(view.gamma(p, qs), block_sum(taus))
            rep.check(
                prefix + "bottom-equivariance", view.cell_eq(left, right), _pair(view, left, right)
            )
    if view.has_two_cells:
        for t in two_cells:
            src, tgt = view.two_profile(t)
            got = view.two_vcomp(t, view.two_id(src))
            rep.check(
                prefix + "two-unit-right", view.two_eq(got, t), _two_pair(view, got, t)
            )
            got = view.two_vcomp(view.two_id(tgt), t)
            rep.check(prefix + "two-unit-left", view.two_eq(got, t), _two_pair(view, got, t))
            qs = _family(view, src, rng)
            us = [view.sample_two_from(q, rng) for q in qs]
            left = view.two_gamma(view.two_id(src), [view.two_id(q) for q in qs])
            right = view.two_id(view.gamma(src, qs))
            rep.check(
                prefix + "two-gamma-identity",
                view.two_eq(left, right),
                _two_pair(view, left, right),
            )
            follow = view.sample_two_from(tgt, rng)
            vs = [view.sample_two_from(view.two_profile(u)[1], rng) for u in us]
            left = view.two_gamma(
                view.two_vcomp(follow, t), [view.two_vcomp(v, u) for v, u in zip(vs, us)]
            )
            right = view.two_vcomp(view.two_gamma(follow, vs), view.two_gamma(t, us))
            rep.check(
                prefix + "two-gamma-interchange",
                view.two_eq(left, right),
                _two_pair(view, left, right),
            )
            if view.symmetric:
                n = view.arity(src)
                sig = rand_perm(n, rng)
                left = view.two_sigma(view.two_vcomp(follow, t), sig)
                right = view.two_vcomp(view.two_sigma(follow, sig), view.two_sigma(t, sig))
                rep.check(
                    prefix + "two-sigma-functoriality",
                    view.two_eq(left, right)
                    and view.two_eq(
                        view.two_sigma(view.two_id(src), sig),
                        view.two_id(view.sigma_act(src, sig)),
                    ),
                    _two_pair(view, left, right),
                )
    return rep


class BarrattEcclesView(CatMulticategoryView):
    """The permutation operad: arity-n cells form the translation category of Sigma_n.

    gamma(s; s_1..s_n) first block-sums the inner permutations, then applies
    the block permutation relocating block j to slot s(j); the right action
    composes on the right.  There is exactly one 2-cell between any two cells
    of equal arity, represented as the ordered pair.
    """

    name = "barratt-eccles"
    OBJECT = "*"

    def __init__(self, arities: Sequence[int] = (0, 1, 2, 3)):
        self.arities = tuple(arities)

    def profile(self, p):
        return (self.OBJECT,) * p.n, self.OBJECT

    def arity(self, p):
        return p.n

    def unit(self, c):
        return identity(1)

    def gamma(self, p, qs):
        if len(qs) != p.n:
            raise SamplingError(f"{self.name}: gamma needs {p.n} inner cells, got {len(qs)}")
        ks = tuple(q.n for q in qs)
        return compose(induced_block_perm(p, ks), block_sum(qs))

    def sigma_act(self, p, sigma):
        return compose(p, sigma)

    def cell_eq(self, p, q):
        return p == q

    def describe(self, p):
        return repr(p.images)

    def two_profile(self, t):
        return t

    def two_id(self, p):
        return (p, p)

    def two_vcomp(self, after, before):
        if before[1] != after[0]:
            raise StructuralError(f"{self.name}: endpoint mismatch in vertical composition")
        return (before[0], after[1])

    def two_gamma(self, t, ss):
        return (
            self.gamma(t[0], [s[0] for s in ss]),
            self.gamma(t[1], [s[1] for s in ss]),
        )

    def two_sigma(self, t, sigma):
        return (compose(t[0], sigma), compose(t[1], sigma))

    def two_eq(self, s, t):
        return s == t

    def describe_two(self, t):
        return f"{t[0].images}->{t[1].images}"

    def sample_cell(self, c, rng):
        return rand_perm(rng.choice(self.arities), rng)

    def sample_two_from(self, p, rng):
        return (p, rand_perm(p.n, rng))


@dataclass(frozen=True)
class EndCell:
    """An n-ary cell of the endomorphism multicategory: a morphism (+)inputs -> output."""

    inputs: tuple
    output: object
    mor: object


class EndomorphismView(CatMulticategoryView):
    """Endomorphism multicategory of the additive layer of an instance.

    gamma composes after the block sum of the inner morphisms; the
    sigma-action precomposes the braiding-built reordering of the inputs.
    Hom categories are discrete, so there is no 2-cell layer.
    """

    has_two_cells = False

    def __init__(self, C, name: Optional[str] = None, arities: Sequence[int] = (1, 1, 2, 2, 3)):
        self.C = C
        self.name = name or f"end:{type(C).__name__.lower()}"
        self.arities = tuple(arities)

    def profile(self, p):
        return p.inputs, p.output

    def unit(self, c):
        return EndCell((c,), c, self.C.identity_mor(c))

    def gamma(self, p, qs):
        if tuple(q.output for q in qs) != p.inputs:
            raise SamplingError(f"{self.name}: inner outputs do not match the outer inputs")
        mor = self.C.compose(p.mor, fold_oplus_mor(self.C, [q.mor for q in qs]))
        return EndCell(tuple(x for q in qs for x in q.inputs), p.output, mor)

    def sigma_act(self, p, sigma):
        xs = act_right(p.inputs, sigma)
        return EndCell(xs, p.output, self.C.compose(p.mor, reorder_iso(self.C.additive, xs, sigma)))

    def cell_eq(self, p, q):
        return p == q

    def describe(self, p):
        return f"{p.inputs}->{p.output} via {p.mor.images}"

    def _split(self, c, n: int, rng) -> tuple:
        if isinstance(c, int):
            cuts = sorted(rng.randint(0, c) for _ in range(n - 1))
            bounds = [0] + cuts + [c]
            return tuple(bounds[i + 1] - bounds[i] for i in range(n))
        cuts = sorted(rng.randint(0, len(c)) for _ in range(n - 1))
        bounds = [0] + cuts + [len(c)]
        return tuple(tuple(c[bounds[i] : bounds[i + 1]]) for i in range(n))

    def sample_cell(self, c, rng):
        if c == self.C.zero() and rng.random() < 0.25:
            return EndCell((), c, self.C.identity_mor(c))
        parts = self._split(c, rng.choice(self.arities), rng)
        mors = sample_hom(self.C, c, c, rng)
        if not mors:
            raise SamplingError(f"{self.name}: empty hom at {c!r}")
        return EndCell(parts, c, rng.choice(mors))


@dataclass
class PseudoSymmetricMultifunctorData:
    """A multifunctor together with its pseudo symmetry components.

    psi(sigma, p) is an invertible 2-cell F(p^sigma) -> (Fp)^sigma; psi=None
    means every component is an identity (the strictly symmetric case).
    two_map=None is allowed when the domain has no 2-cell layer.
    """

    dom: CatMulticategoryView
    cod: CatMulticategoryView
    ob_map: Callable
    cell_map: Callable
    two_map: Optional[Callable] = None
    psi: Optional[Callable] = None
    name: str = "F"

    def ob(self, c):
        return self.ob_map(c)

    def cell(self, p):
        return self.cell_map(p)

    def two(self, t):
        if self.two_map is None:
            raise StructuralError(f"{self.name}: no 2-cell map")
        return self.two_map(t)

    def psi_at(self, sigma: Permutation, p):
        if self.psi is None:
            return self.cod.two_id(self.cod.sigma_act(self.cell_map(p), sigma))
        comp = self.psi(sigma, p)
        if comp is None:
            raise StructuralError(f"{self.name}: missing pseudo symmetry component")
        return comp


def identity_pseudo_symmetric(view: CatMulticategoryView, name: str = "id") -> PseudoSymmetricMultifunctorData:
    return PseudoSymmetricMultifunctorData(
        dom=view,
        cod=view,
        ob_map=lambda c: c,
        cell_map=lambda p: p,
        two_map=(lambda t: t) if view.has_two_cells else None,
        psi=None,
        name=name,
    )


def check_pseudo_symmetric(
    F: PseudoSymmetricMultifunctorData,
    cells: Sequence,
    two_cells: Sequence = (),
    seed=0,
    rounds: int = 2,
    prefix: str = "",
) -> LawReport:
    """Strict preservation plus the four axioms of the pseudo symmetry components."""
    dom, cod = F.dom, F.cod
    rep = LawReport(f"pseudo-symmetric:{F.name}")
    rng = stable_rng(seed, f"pseudo-symmetric:{F.name}:{prefix}")
    strict = not cod.has_two_cells
    if strict and F.psi is not None:
        raise StructuralError(f"{F.name}: pseudo components need a 2-cell layer in the codomain")
    for p in cells:
        inputs, out = dom.profile(p)
        n = len(inputs)
        fp = F.cell(p)
        want = (tuple(F.ob(c) for c in inputs), F.ob(out))
        rep.check(
            prefix + "profile-preservation",
            cod.profile(fp) == want,
            f"lhs={cod.profile(fp)!r} rhs={want!r}",
        )
        got = F.cell(dom.unit(out))
        rep.check(
            prefix + "unit-preservation",
            cod.cell_eq(got, cod.unit(F.ob(out))),
            _pair(cod, got, cod.unit(F.ob(out))),
        )
        for _ in range(rounds):
            qs = _family(dom, p, rng)
            ks = tuple(dom.arity(q) for q in qs)
            left = F.cell(dom.gamma(p, qs))
            right = cod.gamma(fp, [F.cell(q) for q in qs])
            rep.check(
                prefix + "gamma-preservation", cod.cell_eq(left, right), _pair(cod, left, right)
            )
            sig = rand_perm(n, rng)
            tau = rand_perm(n, rng)
            if strict:
                left = F.cell(dom.sigma_act(p, sig))
                right = cod.sigma_act(fp, sig)
                rep.check(
                    prefix + "sigma-strictness", cod.cell_eq(left, right), _pair(cod, left, right)
                )
                continue
            comp = F.psi_at(sig, p)
            src, tgt = cod.two_profile(comp)
            ok = cod.cell_eq(src, F.cell(dom.sigma_act(p, sig))) and cod.cell_eq(
                tgt, cod.sigma_act(fp, sig)
            )
            rep.check(prefix + "psi-endpoints", ok, f"sigma={sig.images} p={dom.describe(p)}")
            rep.check(
                prefix + "psi-invertibility",
                cod.two_is_iso(comp),
                f"sigma={sig.images} p={dom.describe(p)}",
            )
            got = F.psi_at(identity(n), p)
            rep.check(
                prefix + "psi-unit-permutation",
                cod.two_eq(got, cod.two_id(fp)),
                _two_pair(cod, got, cod.two_id(fp)),
            )
            left = F.psi_at(compose(sig, tau), p)
            right = cod.two_vcomp(
                cod.two_sigma(F.psi_at(sig, p), tau), F.psi_at(tau, dom.sigma_act(p, sig))
            )
            rep.check(
                prefix + "psi-product-permutation",
                cod.two_eq(left, right),
                _two_pair(cod, left, right),
            )
            # block relocation induced by sig at the permuted arities
            block = induced_block_perm(sig, act_right(ks, sig))
            left = F.psi_at(block, dom.gamma(p, qs))
            right = cod.two_gamma(
                F.psi_at(sig, p),
                [cod.two_id(F.cell(q)) for q in act_right(qs, sig)],
            )
            rep.check(
                prefix + "psi-top-equivariance",
                cod.two_eq(left, right),
                _two_pair(cod, left, right),
            )
            taus = [rand_perm(k, rng) for k in ks]
            left = F.psi_at(block_sum(taus), dom.gamma(p, qs))
            right = cod.two_gamma(
                cod.two_id(fp), [F.psi_at(t, q) for t, q in zip(taus, qs)]
            )
            rep.check(
                prefix + "psi-bottom-equivariance",
                cod.two_eq(left, right),
                _two_pair(cod, left, right),
            )
    if dom.has_two_cells and cod.has_two_cells and F.two_map is not None:
        for t in two_cells:
            src, tgt = dom.two_profile(t)
            got = F.two(dom.two_id(src))
            rep.check(
                prefix + "functor-identity",
                cod.two_eq(got, cod.two_id(F.cell(src))),
                _two_pair(cod, got, cod.two_id(F.cell(src))),
            )
            follow = dom.sample_two_from(tgt, rng)
            left = F.two(dom.two_vcomp(follow, t))
            right = cod.two_vcomp(F.two(follow), F.two(t))
            rep.check(
                prefix + "functor-composition",
                cod.two_eq(left, right),
                _two_pair(cod, left, right),
            )
            sig = rand_perm(dom.arity(src), rng)
            left = cod.two_vcomp(cod.two_sigma(F.two(t), sig), F.psi_at(sig, src))
            right = cod.two_vcomp(F.psi_at(sig, tgt), F.two(dom.two_sigma(t, sig)))
            rep.check(
                prefix + "psi-naturality", cod.two_eq(left, right), _two_pair(cod, left, right)
            )
    return rep


def compose_pseudo_symmetric(
    G: PseudoSymmetricMultifunctorData, F: PseudoSymmetricMultifunctorData
) -> PseudoSymmetricMultifunctorData:
    """Composite data with the pasted pseudo symmetry components.

    (GF)_{sigma;p} = G_{sigma;Fp} composed (vertically) after G applied to
    F_{sigma;p}.  When both factors are strictly symmetric the composite is
    too, so identity components stay identity components.
    """
    if F.cod is not G.dom:
        raise ValueError("profile mismatch: the first factor must land in the second's domain")
    if F.psi is None and G.psi is None:
        psi = None
    else:

        def psi(sigma, p):
            return G.cod.two_vcomp(
                G.psi_at(sigma, F.cell_map(p)), G.two(F.psi_at(sigma, p))
            )

    two_map = None
    if F.two_map is not None and G.two_map is not None:
        def two_map(t):
            return G.two_map(F.two_map(t))
    return PseudoSymmetricMultifunctorData(
        dom=F.dom,
        cod=G.cod,
        ob_map=lambda c: G.ob_map(F.ob_map(c)),
        cell_map=lambda p: G.cell_map(F.cell_map(p)),
        two_map=two_map,
        psi=psi,
        name=f"({G.name} . {F.name})",
    )


def pseudo_symmetric_agree(
    F: PseudoSymmetricMultifunctorData,
    G: PseudoSymmetricMultifunctorData,
    cells: Sequence,
    two_cells: Sequence = (),
    seed=0,
    prefix: str = "",
) -> LawReport:
    """Componentwise agreement of two parallel data on the supplied samples."""
    if F.dom is not G.dom or F.cod is not G.cod:
        raise ValueError("parallel data required")
    cod = F.cod
    rep = LawReport(f"agree:{F.name}={G.name}")
    rng = stable_rng(seed, f"agree:{F.name}:{G.name}:{prefix}")
    for p in cells:
        inputs, out = F.dom.profile(p)
        rep.check(
            prefix + "agree-objects",
            F.ob(out) == G.ob(out) and all(F.ob(c) == G.ob(c) for c in inputs),
            f"p={F.dom.describe(p)}",
        )
        rep.check(
            prefix + "agree-cells",
            cod.cell_eq(F.cell(p), G.cell(p)),
            _pair(cod, F.cell(p), G.cell(p)),
        )
        if cod.has_two_cells:
            sig = rand_perm(len(inputs), rng)
            left, right = F.psi_at(sig, p), G.psi_at(sig, p)
            rep.check(prefix + "agree-psi", cod.two_eq(left, right), _two_pair(cod, left, right))
    if F.two_map is not None and G.two_map is not None:
        for t in two_cells:
            left, right = F.two(t), G.two(t)
            rep.check(
                prefix + "agree-two-cells", cod.two_eq(left, right), _two_pair(cod, left, right)
            )
    return rep


@dataclass
class PreimageProcedures:
    """Inverse procedures for a multiequivalence round trip.

    cell/two invert the multifunctor on 1-cells and 2-cells; witness(z)
    builds and verifies the essential-surjectivity witness for a codomain
    object, returning True only when the witness isomorphism checks out.
    """

    cell: Optional[Callable] = None
    two: Optional[Callable] = None
    witness: Optional[Callable] = None


def multiequivalence_roundtrip(
    F: PseudoSymmetricMultifunctorData,
    pre: PreimageProcedures,
    dom_cells: Sequence = (),
    cod_cells: Sequence = (),
    dom_twos: Sequence = (),
    cod_twos: Sequence = (),
    cod_objects: Sequence = (),
    prefix: str = "",
) -> LawReport:
    """Both round trips on multimorphism samples plus the object witnesses."""
    dom, cod = F.dom, F.cod
    rep = LawReport(f"roundtrip:{F.name}")
    if pre.cell is not None:
        for p in dom_cells:
            got = pre.cell(F.cell(p))
            rep.check(
                prefix + "cell-roundtrip-domain", dom.cell_eq(got, p), _pair(dom, got, p)
            )
        for r in cod_cells:
            got = F.cell(pre.cell(r))
            rep.check(
                prefix + "cell-roundtrip-codomain", cod.cell_eq(got, r), _pair(cod, got, r)
            )
    if pre.two is not None and F.two_map is not None:
        for t in dom_twos:
            got = pre.two(F.two(t))
            rep.check(
                prefix + "two-roundtrip-domain", dom.two_eq(got, t), _two_pair(dom, got, t)
            )
        for s in cod_twos:
            got = F.two(pre.two(s))
            rep.check(
                prefix + "two-roundtrip-codomain", cod.two_eq(got, s), _two_pair(cod, got, s)
            )
    if pre.witness is not None:
        for z in cod_objects:
            rep.check(prefix + "essential-surjectivity", bool(pre.witness(z)), f"object {z!r}")
    return rep


@dataclass
class CatMultinatTransData:
    """A transformation between parallel multifunctors: one 1-ary cell per object."""

    source: PseudoSymmetricMultifunctorData
    target: PseudoSymmetricMultifunctorData
    component: Callable
    name: str = "theta"

    def at(self, c):
        comp = self.component(c)
        if comp is None:
            raise StructuralError(f"{self.name}: missing component at {c!r}")
        return comp


def check_multinat(
    theta: CatMultinatTransData,
    cells: Sequence,
    two_cells: Sequence = (),
    seed=0,
    prefix: str = "",
) -> LawReport:
    """Multinaturality on cells and 2-cells, and pseudo symmetry preservation."""
    F, G = theta.source, theta.target
    if F.dom is not G.dom or F.cod is not G.cod:
        raise ValueError("parallel data required")
    dom, cod = F.dom, F.cod
    rep = LawReport(f"multinat:{theta.name}")
    rng = stable_rng(seed, f"multinat:{theta.name}:{prefix}")
    for p in cells:
        inputs, out = dom.profile(p)
        comp = theta.at(out)
        rep.check(
            prefix + "component-profile",
            cod.profile(comp) == ((F.ob(out),), G.ob(out)),
            f"at {out!r}: {cod.profile(comp)!r}",
        )
        left = cod.gamma(theta.at(out), [F.cell(p)])
        right = cod.gamma(G.cell(p), [theta.at(c) for c in inputs])
        rep.check(prefix + "multinaturality", cod.cell_eq(left, right), _pair(cod, left, right))
        if cod.has_two_cells:
            sig = rand_perm(len(inputs), rng)
            left = cod.two_gamma(cod.two_id(theta.at(out)), [F.psi_at(sig, p)])
            right = cod.two_gamma(
                G.psi_at(sig, p), [cod.two_id(theta.at(c)) for c in act_right(inputs, sig)]
            )
            rep.check(
                prefix + "pseudo-symmetry-preservation",
                cod.two_eq(left, right),
                _two_pair(cod, left, right),
            )
    if cod.has_two_cells and F.two_map is not None:
        for t in two_cells:
            src, tgt = dom.two_profile(t)
            out = dom.profile(src)[1]
            inputs = dom.profile(src)[0]
            left = cod.two_gamma(cod.two_id(theta.at(out)), [F.two(t)])
            right = cod.two_gamma(G.two(t), [cod.two_id(theta.at(c)) for c in inputs])
            rep.check(
                prefix + "multinaturality-two-cells",
                cod.two_eq(left, right),
                _two_pair(cod, left, right),
            )
    return rep
