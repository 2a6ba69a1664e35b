"""Indexed categories over a bipermutative base and their n-ary cells.

An indexed category assigns to every base object a small value category,
to every base morphism a pushforward functor, and carries additive
structure on top: a unit object over zero and a pairing functor
cat(a) x cat(b) -> cat(a + b) per object pair, strictly unital,
associative, and compatible with the additive braiding of the base.

Between a tuple of such indexed categories and one more live n-ary
transformations: one component functor per tuple of base objects, landing
over the tensor product of the tuple, natural in the base, collapsing to
the unit whenever a slot holds the unit object, and splitting along the
canonical distribution isomorphism when a slot holds a sum.  Between
parallel transformations live modifications with the same unit and
splitting compatibilities.  Cells of arity zero are identified with
objects of the value category over the tensor unit, and gamma plugs such
objects straight into the outer component.  The symmetric groups act from
the right: inputs are permuted and the output is corrected by the image
of the reorder isomorphism of the multiplicative layer.

Everything is tabulated over a declared bound of base objects.  The laws
mention composite objects (sums of bound members, tensor products of
whole tuples), so access outside the declared bound raises BoundError
rather than truncating silently; a silent skip would fake passes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .biperm import (
    FnMor,
    fold_otimes,
    fold_otimes_mor,
    laplaza_iso,
    sample_hom,
    tensor_reorder,
)
from .fincat import (
    FinCategory,
    FunctorData,
    MorRec,
    NatTransData,
    discrete_category,
    product,
    verify_natural,
)
from .multicat import CatMulticategoryView, SamplingError, StructuralError, rand_perm
from .permalg import Permutation, act_right, inverse
from .permcat import replace_at
from .reporting import LawReport, sample, stable_rng


class BoundError(Exception):
    """A base object outside the declared tabulation bound was requested."""


# ---------------------------------------------------------------------------
# data


class ComponentFunctor:
    """A functor out of a finite product of value categories.

    Applications always take full tuples: ob_of on object tuples, mor_of
    on morphism tuples (1-tuples at arity one).  Assignments may be
    tabulated dicts or callables; tabulated morphism entries are keyed by
    name tuples and may store either result names or MorRec values.  When
    names are stored, cod resolves them.
    """

    def __init__(self, ob, mor, cod: Optional[FinCategory] = None):
        self.ob = ob
        self.mor = mor
        self.cod = cod

    def ob_of(self, xs: Sequence) -> object:
        xs = tuple(xs)
        if isinstance(self.ob, dict):
            return self.ob[xs]
        return self.ob(xs)

    def mor_of(self, fs: Sequence[MorRec]) -> MorRec:
        fs = tuple(fs)
        if isinstance(self.mor, dict):
            got = self.mor[tuple(f.name for f in fs)]
            if isinstance(got, MorRec) or self.cod is None:
                return got
            return self.cod.mor(got)
        return self.mor(fs)


class AdditiveSMFunctor:
    """An indexed category over a bipermutative base, with additive pairing.

    Suppliers cat, fmap, and sum2 may be procedural; results are memoized.
    A supplier returning None for an in-bound request is a structural
    error.  Requests outside the declared bound raise BoundError.
    """

    def __init__(self, D, bound, cat, fmap, unit_obj, sum2, name: str = "X"):
        self.D = D
        self.bound = tuple(bound)
        self.unit_obj = unit_obj
        self.name = name
        self._cat = cat
        self._fmap = fmap
        self._sum2 = sum2
        self._bound_set = set(self.bound)
        self._cats: Dict = {}
        self._pushes: Dict = {}
        self._pairs: Dict = {}

    def __repr__(self) -> str:
        return f"AdditiveSMFunctor({self.name} over {self.D.name})"

    def in_bound(self, a) -> bool:
        return a in self._bound_set

    def require(self, a) -> None:
        if a not in self._bound_set:
            raise BoundError(f"{self.name}: base object {a!r} is outside the declared bound")

    def cat(self, a) -> FinCategory:
        self.require(a)
        got = self._cats.get(a)
        if got is None:
            got = self._cat(a)
            if got is None:
                raise StructuralError(f"{self.name}: no value category over {a!r}")
            self._cats[a] = got
        return got

    def fmap(self, f: FnMor) -> FunctorData:
        self.require(f.dom)
        self.require(f.cod)
        got = self._pushes.get(f)
        if got is None:
            got = self._fmap(f)
            if got is None:
                raise StructuralError(f"{self.name}: no pushforward along {f!r}")
            self._pushes[f] = got
        return got

    def sum2(self, a, b) -> ComponentFunctor:
        self.require(a)
        self.require(b)
        self.require(self.D.oplus(a, b))
        got = self._pairs.get((a, b))
        if got is None:
            got = self._sum2(a, b)
            if got is None:
                raise StructuralError(f"{self.name}: no pairing at ({a!r}, {b!r})")
            self._pairs[(a, b)] = got
        return got


@dataclass
class AdditiveNatTrans:
    """An n-ary cell between indexed categories over one base.

    component maps a tuple of base objects to the ComponentFunctor from
    the product of the value categories into the target category over the
    tensor product of the tuple.  Arity zero is not a transformation; such
    cells are plain objects of the target's value category over one.
    """

    source: Tuple[AdditiveSMFunctor, ...]
    target: AdditiveSMFunctor
    component: Callable
    name: str = "phi"
    _table: Dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        self.source = tuple(self.source)
        if not self.source:
            raise ValueError("arity-zero cells are objects of the value category over one")

    @property
    def arity(self) -> int:
        return len(self.source)

    def at(self, anga: Sequence) -> ComponentFunctor:
        anga = tuple(anga)
        if len(anga) != self.arity:
            raise ValueError(f"{self.name}: expected {self.arity} base objects, got {len(anga)}")
        for X, a in zip(self.source, anga):
            X.require(a)
        self.target.require(fold_otimes(self.target.D, anga))
        got = self._table.get(anga)
        if got is None:
            got = self.component(anga) if not isinstance(self.component, dict) else self.component.get(anga)
            if got is None:
                raise StructuralError(f"{self.name}: no component at {anga!r}")
            self._table[anga] = got
        return got


@dataclass
class AdditiveModification:
    """A 2-cell between parallel n-ary cells.

    component maps a tuple of base objects to the family of value
    morphisms (dict keyed by object tuples, or a callable on them); at()
    packages it as NatTransData between the component functors, ready for
    a naturality check over the product category.
    """

    source: AdditiveNatTrans
    target: AdditiveNatTrans
    component: Callable
    name: str = "Phi"
    _table: Dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        s, t = self.source, self.target
        if len(s.source) != len(t.source) or any(a is not b for a, b in zip(s.source, t.source)):
            raise ValueError("modification endpoints do not share a source tuple")
        if s.target is not t.target:
            raise ValueError("modification endpoints do not share a target")

    @property
    def arity(self) -> int:
        return self.source.arity

    def at(self, anga: Sequence) -> NatTransData:
        anga = tuple(anga)
        got = self._table.get(anga)
        if got is None:
            comp = self.component(anga) if not isinstance(self.component, dict) else self.component.get(anga)
            if comp is None:
                raise StructuralError(f"{self.name}: no component at {anga!r}")
            F = _component_functor_data(self.source, anga)
            G = _component_functor_data(self.target, anga)
            got = NatTransData(F, G, comp)
            self._table[anga] = got
        return got


def value_product(sources: Sequence[AdditiveSMFunctor], anga: Sequence) -> FinCategory:
    return product(tuple(X.cat(a) for X, a in zip(sources, anga)))


def _component_functor_data(phi: AdditiveNatTrans, anga: Tuple) -> FunctorData:
    """The component at anga as a FunctorData out of the explicit product."""
    cats = tuple(X.cat(a) for X, a in zip(phi.source, anga))
    dom = product(cats)
    cod = phi.target.cat(fold_otimes(phi.target.D, anga))
    comp = phi.at(anga)

    def ob(xs):
        return comp.ob_of(xs)

    def mor(m):
        return comp.mor_of(tuple(c.mor(nm) for c, nm in zip(cats, m.name)))

    return FunctorData(dom, cod, ob, mor)


# ---------------------------------------------------------------------------
# units and composition of 2-cells


def identity_additive_nat(Z: AdditiveSMFunctor) -> AdditiveNatTrans:
    """The unary identity cell on Z."""

    def component(anga):
        return ComponentFunctor(lambda xs: xs[0], lambda fs: fs[0])

    return AdditiveNatTrans((Z,), Z, component, name=f"1[{Z.name}]")


def identity_additive_mod(phi: AdditiveNatTrans) -> AdditiveModification:
    """The identity 2-cell on phi."""
    Z = phi.target

    def component(anga):
        cod = Z.cat(fold_otimes(Z.D, anga))
        comp = phi.at(anga)
        return lambda xs: cod.identity_mor(comp.ob_of(xs))

    return AdditiveModification(phi, phi, component, name=f"1[{phi.name}]")


def _parallel_cells(phi: AdditiveNatTrans, psi: AdditiveNatTrans) -> bool:
    return (
        phi.arity == psi.arity
        and all(f is g for f, g in zip(phi.source, psi.source))
        and phi.target is psi.target
    )


def vcomp_mod(after: AdditiveModification, before: AdditiveModification) -> AdditiveModification:
    """Vertical composite; components compose in the value categories.

    Only the profiles of the shared boundary are verified here; the caller
    must ensure before's target and after's source agree as cells.  A deeper
    mismatch surfaces when the components fail to compose.
    """
    if after.source is not before.target and not _parallel_cells(
        after.source, before.target
    ):
        raise ValueError("modifications are not stacked")
    Z = after.target.target

    def component(anga):
        cod = Z.cat(fold_otimes(Z.D, anga))
        top = after.at(anga)
        bot = before.at(anga)
        return lambda xs: cod.compose(top.at(tuple(xs)), bot.at(tuple(xs)))

    return AdditiveModification(
        before.source, after.target, component, name=f"{after.name}*{before.name}"
    )


# ---------------------------------------------------------------------------
# sampling helpers


def _tuple_samples(pools: Sequence[Sequence], rng, cap: int) -> List[Tuple]:
    """Up to cap tuples from the product of pools, exhaustive when small."""
    pools = [list(p) for p in pools]
    total = 1
    for p in pools:
        total *= len(p)
    if total == 0:
        return []
    if total <= cap:
        return list(itertools.product(*pools))
    return [tuple(rng.choice(p) for p in pools) for _ in range(cap)]


def _slot_mor(D, a, bound: Sequence, rng) -> FnMor:
    """One base morphism out of a, identity when nothing else lands in bound."""
    b = rng.choice(list(bound))
    opts = sample_hom(D, a, b, rng, cap=2)
    if not opts:
        return D.identity_mor(a)
    return rng.choice(opts)


def _composable_from(cat: FinCategory, rng, k: int) -> List[Tuple[MorRec, MorRec]]:
    """Up to k composable pairs (g, f) with f.cod == g.dom."""
    out = []
    for f in sample(list(cat.mors), k, rng):
        cands = [g for g in cat.mors if g.dom == f.cod]
        if cands:
            out.append((rng.choice(cands), f))
    return out


# ---------------------------------------------------------------------------
# law checks


def check_additive_smf(X: AdditiveSMFunctor, bound: Sequence, seed: int = 0,
                       tuple_cap: int = 8, obj_cap: int = 6, mor_cap: int = 2,
                       prefix: str = "") -> LawReport:
    """Every structure law of an indexed category with pairing, over bound.

    bound lists the base objects the laws iterate over; the declared bound
    of X must contain the single and double sums of its members, else
    BoundError propagates (no silent skipping).
    """
    rep = LawReport(title=prefix or f"additive-smf {X.name}")
    rng = stable_rng(seed, f"smf:{X.name}")
    D = X.D
    bound = list(bound)
    zero = D.zero()

    rep.check("unit-object", X.unit_obj in X.cat(zero).objects, repr(X.unit_obj))

    for a in bound:
        cat = X.cat(a)
        F = X.fmap(D.identity_mor(a))
        ok = all(F.ob_of(x) == x for x in cat.objects)
        ok = ok and all(F.mor_of(m) == m for m in cat.mors)
        rep.check("functor-identity", ok, f"a={a!r}")

    for a, b, c in _tuple_samples([bound, bound, bound], rng, tuple_cap):
        for f in sample_hom(D, a, b, rng, cap=mor_cap):
            for g in sample_hom(D, b, c, rng, cap=mor_cap):
                comp = X.fmap(D.compose(g, f))
                Fg, Ff = X.fmap(g), X.fmap(f)
                cat = X.cat(a)
                ok = all(
                    comp.ob_of(x) == Fg.ob_of(Ff.ob_of(x))
                    for x in sample(list(cat.objects), obj_cap, rng)
                )
                ok = ok and all(
                    comp.mor_of(m) == Fg.mor_of(Ff.mor_of(m))
                    for m in sample(list(cat.mors), obj_cap, rng)
                )
                rep.check("functor-composition", ok, f"g={g!r} f={f!r}")

    pairs = _tuple_samples([bound, bound], rng, tuple_cap)

    for a, b in pairs:
        P = X.sum2(a, b)
        ca, cb = X.cat(a), X.cat(b)
        cab = X.cat(D.oplus(a, b))
        for x, y in _tuple_samples([ca.objects, cb.objects], rng, obj_cap):
            rep.check("pairing-endpoints", P.ob_of((x, y)) in cab.objects, f"({a!r},{b!r})")
        for p, q in _tuple_samples([ca.mors, cb.mors], rng, obj_cap):
            r = P.mor_of((p, q))
            ok = (
                r.dom == P.ob_of((p.dom, q.dom))
                and r.cod == P.ob_of((p.cod, q.cod))
                and cab.mor(r.name) == r
            )
            rep.check("pairing-endpoints", ok, f"({a!r},{b!r}) {p.name!r},{q.name!r}")

        for x, y in _tuple_samples([ca.objects, cb.objects], rng, obj_cap):
            lhs = P.mor_of((ca.identity_mor(x), cb.identity_mor(y)))
            rep.check(
                "pairing-functoriality",
                lhs == cab.identity_mor(P.ob_of((x, y))),
                f"ids at ({x!r},{y!r})",
            )
        for (p2, p1), (q2, q1) in zip(
            _composable_from(ca, rng, mor_cap), _composable_from(cb, rng, mor_cap)
        ):
            lhs = P.mor_of((ca.compose(p2, p1), cb.compose(q2, q1)))
            rhs = cab.compose(P.mor_of((p2, q2)), P.mor_of((p1, q1)))
            rep.check("pairing-functoriality", lhs == rhs, f"({a!r},{b!r})")

    for (a, b), (a2, b2) in _tuple_samples([pairs, pairs], rng, tuple_cap):
        for f in sample_hom(D, a, a2, rng, cap=mor_cap):
            for g in sample_hom(D, b, b2, rng, cap=mor_cap):
                push = X.fmap(D.oplus_mor(f, g))
                P, P2 = X.sum2(a, b), X.sum2(a2, b2)
                Ff, Fg = X.fmap(f), X.fmap(g)
                ca, cb = X.cat(a), X.cat(b)
                ok = all(
                    push.ob_of(P.ob_of((x, y))) == P2.ob_of((Ff.ob_of(x), Fg.ob_of(y)))
                    for x, y in _tuple_samples([ca.objects, cb.objects], rng, obj_cap)
                )
                ok = ok and all(
                    push.mor_of(P.mor_of((p, q))) == P2.mor_of((Ff.mor_of(p), Fg.mor_of(q)))
                    for p, q in _tuple_samples([ca.mors, cb.mors], rng, obj_cap)
                )
                rep.check("pairing-naturality", ok, f"f={f!r} g={g!r}")

    unit_id = X.cat(zero).identity_mor(X.unit_obj)
    for a in bound:
        L, R = X.sum2(zero, a), X.sum2(a, zero)
        cat = X.cat(a)
        ok = all(
            L.ob_of((X.unit_obj, w)) == w == R.ob_of((w, X.unit_obj))
            for w in sample(list(cat.objects), obj_cap, rng)
        )
        ok = ok and all(
            L.mor_of((unit_id, p)) == p == R.mor_of((p, unit_id))
            for p in sample(list(cat.mors), obj_cap, rng)
        )
        rep.check("pairing-unity", ok, f"a={a!r}")

    for a, b, c in _tuple_samples([bound, bound, bound], rng, tuple_cap):
        Pab, Pbc = X.sum2(a, b), X.sum2(b, c)
        Pab_c = X.sum2(D.oplus(a, b), c)
        Pa_bc = X.sum2(a, D.oplus(b, c))
        ca, cb, cc = X.cat(a), X.cat(b), X.cat(c)
        ok = all(
            Pab_c.ob_of((Pab.ob_of((x, y)), z)) == Pa_bc.ob_of((x, Pbc.ob_of((y, z))))
            for x, y, z in _tuple_samples([ca.objects, cb.objects, cc.objects], rng, obj_cap)
        )
        ok = ok and all(
            Pab_c.mor_of((Pab.mor_of((p, q)), r)) == Pa_bc.mor_of((p, Pbc.mor_of((q, r))))
            for p, q, r in _tuple_samples([ca.mors, cb.mors, cc.mors], rng, obj_cap)
        )
        rep.check("pairing-associativity", ok, f"({a!r},{b!r},{c!r})")

    for a, b in pairs:
        sw = X.fmap(D.beta_plus(a, b))
        P, Pop = X.sum2(a, b), X.sum2(b, a)
        ca, cb = X.cat(a), X.cat(b)
        ok = all(
            sw.ob_of(P.ob_of((x, y))) == Pop.ob_of((y, x))
            for x, y in _tuple_samples([ca.objects, cb.objects], rng, obj_cap)
        )
        ok = ok and all(
            sw.mor_of(P.mor_of((p, q))) == Pop.mor_of((q, p))
            for p, q in _tuple_samples([ca.mors, cb.mors], rng, obj_cap)
        )
        rep.check("pairing-braiding", ok, f"({a!r},{b!r})")

    return rep


def check_additive_nat(phi: AdditiveNatTrans, bound: Sequence, seed: int = 0,
                       tuple_cap: int = 6, obj_cap: int = 5, mor_cap: int = 3,
                       prefix: str = "") -> LawReport:
    """Naturality, unity, and additivity of an n-ary cell, over bound."""
    rep = LawReport(title=prefix or f"additive-nat {phi.name}")
    rng = stable_rng(seed, f"nat:{phi.name}")
    n = phi.arity
    Z = phi.target
    D = Z.D
    bound = list(bound)
    zero = D.zero()

    tuples = _tuple_samples([bound] * n, rng, tuple_cap)

    for anga in tuples:
        comp = phi.at(anga)
        cats = [X.cat(a) for X, a in zip(phi.source, anga)]
        cod = Z.cat(fold_otimes(D, anga))
        for xs in _tuple_samples([c.objects for c in cats], rng, obj_cap):
            rep.check("component-endpoints", comp.ob_of(xs) in cod.objects, f"{anga!r} {xs!r}")
        for fs in _tuple_samples([c.mors for c in cats], rng, mor_cap):
            r = comp.mor_of(fs)
            ok = (
                r.dom == comp.ob_of(tuple(f.dom for f in fs))
                and r.cod == comp.ob_of(tuple(f.cod for f in fs))
                and cod.mor(r.name) == r
            )
            rep.check("component-endpoints", ok, f"{anga!r}")

        for xs in _tuple_samples([c.objects for c in cats], rng, obj_cap):
            ids = tuple(c.identity_mor(x) for c, x in zip(cats, xs))
            rep.check(
                "component-functoriality",
                comp.mor_of(ids) == cod.identity_mor(comp.ob_of(xs)),
                f"ids {anga!r} {xs!r}",
            )
        pair_pools = [_composable_from(c, rng, mor_cap) for c in cats]
        for picks in _tuple_samples(pair_pools, rng, mor_cap):
            lhs = comp.mor_of(tuple(c.compose(g, f) for c, (g, f) in zip(cats, picks)))
            rhs = cod.compose(
                comp.mor_of(tuple(g for g, _ in picks)),
                comp.mor_of(tuple(f for _, f in picks)),
            )
            rep.check("component-functoriality", lhs == rhs, f"{anga!r}")

    for anga in tuples:
        fs = tuple(_slot_mor(D, a, bound, rng) for a in anga)
        angb = tuple(f.cod for f in fs)
        push = Z.fmap(fold_otimes_mor(D, fs))
        ca = phi.at(anga)
        cb = phi.at(angb)
        cats = [X.cat(a) for X, a in zip(phi.source, anga)]
        slots = [X.fmap(f) for X, f in zip(phi.source, fs)]
        ok = all(
            push.ob_of(ca.ob_of(xs)) == cb.ob_of(tuple(F.ob_of(x) for F, x in zip(slots, xs)))
            for xs in _tuple_samples([c.objects for c in cats], rng, obj_cap)
        )
        ok = ok and all(
            push.mor_of(ca.mor_of(ps)) == cb.mor_of(tuple(F.mor_of(p) for F, p in zip(slots, ps)))
            for ps in _tuple_samples([c.mors for c in cats], rng, mor_cap)
        )
        rep.check("naturality", ok, f"{anga!r} -> {angb!r}")

    unit_cod = Z.cat(zero)
    for i in range(1, n + 1):
        for base in sample(tuples, max(2, tuple_cap // 2), rng):
            anga = replace_at(base, i, zero)
            comp = phi.at(anga)
            cats = [X.cat(a) for X, a in zip(phi.source, anga)]
            Xi = phi.source[i - 1]
            unit_i = Xi.unit_obj
            pools = [c.objects for c in cats]
            ok = all(
                comp.ob_of(replace_at(xs, i, unit_i)) == Z.unit_obj
                for xs in _tuple_samples(pools, rng, obj_cap)
            )
            unit_id = cats[i - 1].identity_mor(unit_i)
            ok = ok and all(
                comp.mor_of(replace_at(ps, i, unit_id)) == unit_cod.identity_mor(Z.unit_obj)
                for ps in _tuple_samples([c.mors for c in cats], rng, mor_cap)
            )
            rep.check("unity", ok, f"slot {i} at {anga!r}")

    for i in range(1, n + 1):
        for base in sample(tuples, max(2, tuple_cap // 2), rng):
            for aip in sample(bound, 2, rng):
                anga = tuple(base)
                ai = anga[i - 1]
                anga_p = replace_at(anga, i, aip)
                anga_dd = replace_at(anga, i, D.oplus(ai, aip))
                lam = laplaza_iso(D, anga, i, aip)
                a = fold_otimes(D, anga)
                ap = fold_otimes(D, anga_p)
                push = Z.fmap(lam)
                P = Z.sum2(a, ap)
                Xi = phi.source[i - 1]
                Pi = Xi.sum2(ai, aip)
                cats = [X.cat(x) for X, x in zip(phi.source, anga)]
                ci_p = Xi.cat(aip)
                c_a, c_p, c_dd = phi.at(anga), phi.at(anga_p), phi.at(anga_dd)
                for xs in _tuple_samples([c.objects for c in cats], rng, obj_cap):
                    for xip in sample(list(ci_p.objects), 2, rng):
                        xdd = replace_at(xs, i, Pi.ob_of((xs[i - 1], xip)))
                        lhs = push.ob_of(c_dd.ob_of(xdd))
                        rhs = P.ob_of((c_a.ob_of(xs), c_p.ob_of(replace_at(xs, i, xip))))
                        rep.check(
                            "additivity",
                            lhs == rhs,
                            f"slot {i}: {anga!r} with {aip!r} gives {anga_dd!r}; {lhs!r} != {rhs!r}",
                        )
                for ps in _tuple_samples([c.mors for c in cats], rng, mor_cap):
                    for pip in sample(list(ci_p.mors), 2, rng):
                        pdd = replace_at(ps, i, Pi.mor_of((ps[i - 1], pip)))
                        lhs = push.mor_of(c_dd.mor_of(pdd))
                        rhs = P.mor_of((c_a.mor_of(ps), c_p.mor_of(replace_at(ps, i, pip))))
                        rep.check(
                            "additivity",
                            lhs == rhs,
                            f"slot {i}: {anga!r} with {aip!r} gives {anga_dd!r}; {lhs!r} != {rhs!r}",
                        )

    return rep


def check_additive_mod(Phi: AdditiveModification, bound: Sequence, seed: int = 0,
                       tuple_cap: int = 6, obj_cap: int = 5, mor_cap: int = 3,
                       prefix: str = "") -> LawReport:
    """Component naturality plus unity and additivity of a 2-cell."""
    rep = LawReport(title=prefix or f"additive-mod {Phi.name}")
    rng = stable_rng(seed, f"mod:{Phi.name}")
    n = Phi.arity
    phi = Phi.source
    Z = phi.target
    D = Z.D
    bound = list(bound)
    zero = D.zero()

    tuples = _tuple_samples([bound] * n, rng, tuple_cap)

    for anga in tuples:
        nt = Phi.at(anga)
        prod = nt.F.dom
        fails = verify_natural(
            nt,
            objects=sample(list(prod.objects), obj_cap, rng),
            mors=sample(list(prod.mors), mor_cap * 2, rng),
        )
        rep.check("component-naturality", not fails, f"{anga!r}: {'; '.join(fails)}")

    for anga in tuples:
        fs = tuple(_slot_mor(D, a, bound, rng) for a in anga)
        angb = tuple(f.cod for f in fs)
        push = Z.fmap(fold_otimes_mor(D, fs))
        nta, ntb = Phi.at(anga), Phi.at(angb)
        cats = [X.cat(a) for X, a in zip(phi.source, anga)]
        slots = [X.fmap(f) for X, f in zip(phi.source, fs)]
        ok = all(
            push.mor_of(nta.at(xs)) == ntb.at(tuple(F.ob_of(x) for F, x in zip(slots, xs)))
            for xs in _tuple_samples([c.objects for c in cats], rng, obj_cap)
        )
        rep.check("modification-square", ok, f"{anga!r} -> {angb!r}")

    unit_cod = Z.cat(zero)
    for i in range(1, n + 1):
        for base in sample(tuples, max(2, tuple_cap // 2), rng):
            anga = replace_at(base, i, zero)
            nt = Phi.at(anga)
            cats = [X.cat(a) for X, a in zip(phi.source, anga)]
            unit_i = phi.source[i - 1].unit_obj
            ok = all(
                nt.at(replace_at(xs, i, unit_i)) == unit_cod.identity_mor(Z.unit_obj)
                for xs in _tuple_samples([c.objects for c in cats], rng, obj_cap)
            )
            rep.check("unity", ok, f"slot {i} at {anga!r}")

    for i in range(1, n + 1):
        for base in sample(tuples, max(2, tuple_cap // 2), rng):
            for aip in sample(bound, 2, rng):
                anga = tuple(base)
                ai = anga[i - 1]
                anga_p = replace_at(anga, i, aip)
                anga_dd = replace_at(anga, i, D.oplus(ai, aip))
                lam = laplaza_iso(D, anga, i, aip)
                a = fold_otimes(D, anga)
                ap = fold_otimes(D, anga_p)
                push = Z.fmap(lam)
                P = Z.sum2(a, ap)
                Xi = phi.source[i - 1]
                Pi = Xi.sum2(ai, aip)
                cats = [X.cat(x) for X, x in zip(phi.source, anga)]
                ci_p = Xi.cat(aip)
                nta, ntp, ntdd = Phi.at(anga), Phi.at(anga_p), Phi.at(anga_dd)
                for xs in _tuple_samples([c.objects for c in cats], rng, obj_cap):
                    for xip in sample(list(ci_p.objects), 2, rng):
                        xdd = replace_at(xs, i, Pi.ob_of((xs[i - 1], xip)))
                        lhs = push.mor_of(ntdd.at(xdd))
                        rhs = P.mor_of((nta.at(xs), ntp.at(replace_at(xs, i, xip))))
                        rep.check(
                            "additivity",
                            lhs == rhs,
                            f"slot {i}: {anga!r} with {aip!r} gives {anga_dd!r}; {lhs!r} != {rhs!r}",
                        )

    return rep


# ---------------------------------------------------------------------------
# multicategory operations


def _chunks(flat: Sequence, arities: Sequence[int]) -> List[Tuple]:
    out = []
    pos = 0
    for k in arities:
        out.append(tuple(flat[pos:pos + k]))
        pos += k
    return out


def gamma(cell, inners: Sequence):
    """Plug n inner cells into an n-ary cell; dispatches on the 2-cell layer.

    Inner slots of arity zero take plain objects (1-cell layer) or value
    morphisms (2-cell layer) of the slot's category over one.  When every
    slot is zero-ary the result degenerates to an object or morphism of
    the target's value category over one.
    """
    if isinstance(cell, AdditiveModification):
        return _gamma_mod(cell, list(inners))
    return _gamma_nat(cell, list(inners))


def _gamma_nat(phi: AdditiveNatTrans, inners: List):
    n = phi.arity
    if len(inners) != n:
        raise SamplingError(f"{phi.name}: expected {n} inner cells, got {len(inners)}")
    D = phi.target.D
    one = D.one()
    arities = []
    flat_sources: List[AdditiveSMFunctor] = []
    for j, (X, g) in enumerate(zip(phi.source, inners), 1):
        if isinstance(g, AdditiveNatTrans):
            if g.target is not X:
                raise SamplingError(f"inner cell {j} lands in {g.target.name}, not {X.name}")
            arities.append(g.arity)
            flat_sources.extend(g.source)
        else:
            if g not in X.cat(one).objects:
                raise SamplingError(f"inner {j} is not an object of {X.name} over one")
            arities.append(0)

    if not flat_sources:
        return phi.at((one,) * n).ob_of(tuple(inners))

    def component(flat):
        chunks = _chunks(flat, arities)
        anga = tuple(
            fold_otimes(D, ch) if arities[j] > 0 else one for j, ch in enumerate(chunks)
        )
        outer = phi.at(anga)
        parts = [
            inners[j].at(chunks[j]) if arities[j] > 0 else None for j in range(n)
        ]

        def ob(xs):
            xch = _chunks(xs, arities)
            mids = tuple(
                parts[j].ob_of(xch[j]) if arities[j] > 0 else inners[j]
                for j in range(n)
            )
            return outer.ob_of(mids)

        def mor(fs):
            fch = _chunks(fs, arities)
            mids = []
            for j in range(n):
                if arities[j] > 0:
                    mids.append(parts[j].mor_of(fch[j]))
                else:
                    mids.append(phi.source[j].cat(one).identity_mor(inners[j]))
            return outer.mor_of(tuple(mids))

        return ComponentFunctor(ob, mor)

    label = ",".join(g.name if isinstance(g, AdditiveNatTrans) else str(g) for g in inners)
    return AdditiveNatTrans(
        tuple(flat_sources), phi.target, component, name=f"{phi.name}({label})"
    )


def _gamma_mod(Phi: AdditiveModification, inners: List):
    n = Phi.arity
    if len(inners) != n:
        raise SamplingError(f"{Phi.name}: expected {n} inner cells, got {len(inners)}")
    phi, psi = Phi.source, Phi.target
    Z = phi.target
    D = Z.D
    one = D.one()
    arities = [g.arity if isinstance(g, AdditiveModification) else 0 for g in inners]
    for j, (X, g) in enumerate(zip(phi.source, inners), 1):
        if isinstance(g, AdditiveModification):
            continue
        if not isinstance(g, MorRec) or g.name not in {m.name for m in X.cat(one).mors}:
            raise SamplingError(f"inner {j} is not a value morphism of {X.name} over one")

    if not any(arities):
        ones = (one,) * n
        cod = Z.cat(one)
        first = Phi.at(ones).at(tuple(q.cod for q in inners))
        second = phi.at(ones).mor_of(tuple(inners))
        return cod.compose(first, second)

    src = _gamma_nat(phi, [g.source if isinstance(g, AdditiveModification) else g.dom for g in inners])
    tgt = _gamma_nat(psi, [g.target if isinstance(g, AdditiveModification) else g.cod for g in inners])

    def component(flat):
        chunks = _chunks(flat, arities)
        anga = tuple(
            fold_otimes(D, ch) if arities[j] > 0 else one for j, ch in enumerate(chunks)
        )
        cod = Z.cat(fold_otimes(D, anga))
        outer_src = phi.at(anga)
        outer_two = Phi.at(anga)

        def comp(xs):
            xch = _chunks(tuple(xs), arities)
            tgt_objs = []
            inner_mors = []
            for j in range(n):
                if arities[j] > 0:
                    tgt_objs.append(inners[j].target.at(chunks[j]).ob_of(xch[j]))
                    inner_mors.append(inners[j].at(chunks[j]).at(xch[j]))
                else:
                    tgt_objs.append(inners[j].cod)
                    inner_mors.append(inners[j])
            return cod.compose(
                outer_two.at(tuple(tgt_objs)), outer_src.mor_of(tuple(inner_mors))
            )

        return comp

    label = ",".join(g.name if isinstance(g, AdditiveModification) else str(g.name) for g in inners)
    return AdditiveModification(src, tgt, component, name=f"{Phi.name}({label})")


def sigma_act(cell, sigma: Permutation):
    """Right action: permute the inputs, correct by the reorder isomorphism.

    The component at a tuple evaluates the original cell at the pulled-back
    tuple and pushes the result forward along the image of the unique
    multiplicative reorder isomorphism of the base.
    """
    if isinstance(cell, AdditiveModification):
        if sigma.n != cell.arity:
            raise ValueError(f"{cell.name}: degree {sigma.n} does not match arity {cell.arity}")
        if sigma.is_identity():
            return cell
        Phi = cell
        Z = Phi.source.target
        D = Z.D
        inv = inverse(sigma)
        src = sigma_act(Phi.source, sigma)
        tgt = sigma_act(Phi.target, sigma)

        def component(anga):
            back = act_right(tuple(anga), inv)
            push = Z.fmap(tensor_reorder(D, back, inv))
            nt = Phi.at(back)
            return lambda xs: push.mor_of(nt.at(act_right(tuple(xs), inv)))

        return AdditiveModification(src, tgt, component, name=f"{Phi.name}^{sigma.images}")

    phi = cell
    if sigma.n != phi.arity:
        raise ValueError(f"{phi.name}: degree {sigma.n} does not match arity {phi.arity}")
    if sigma.is_identity():
        return phi
    Z = phi.target
    D = Z.D
    inv = inverse(sigma)

    def component(anga):
        back = act_right(tuple(anga), inv)
        inner = phi.at(back)
        push = Z.fmap(tensor_reorder(D, back, inv))
        return ComponentFunctor(
            lambda xs: push.ob_of(inner.ob_of(act_right(tuple(xs), inv))),
            lambda fs: push.mor_of(inner.mor_of(act_right(tuple(fs), inv))),
        )

    return AdditiveNatTrans(
        act_right(phi.source, sigma), Z, component, name=f"{phi.name}^{sigma.images}"
    )


def arity_zero_category(Z: AdditiveSMFunctor) -> FinCategory:
    """Cells of arity zero into Z: exactly the value category over one."""
    return Z.cat(Z.D.one())


# ---------------------------------------------------------------------------
# pointwise agreement


def additive_nat_agree(phi: AdditiveNatTrans, psi: AdditiveNatTrans, bound: Sequence,
                       seed: int = 0, tuple_cap: int = 8, obj_cap: int = 5,
                       mor_cap: int = 4, prefix: str = "") -> LawReport:
    """Pointwise equality of two cells over sampled tuples from bound."""
    rep = LawReport(title=prefix or f"agree {phi.name} ~ {psi.name}")
    same = (
        phi.arity == psi.arity
        and all(a is b for a, b in zip(phi.source, psi.source))
        and phi.target is psi.target
    )
    rep.check("agree-profile", same, f"{phi.name} vs {psi.name}")
    if not same:
        return rep
    rng = stable_rng(seed, f"agree:{phi.name}:{psi.name}")
    for anga in _tuple_samples([list(bound)] * phi.arity, rng, tuple_cap):
        ca, cb = phi.at(anga), psi.at(anga)
        cats = [X.cat(a) for X, a in zip(phi.source, anga)]
        for xs in _tuple_samples([c.objects for c in cats], rng, obj_cap):
            rep.check("agree-objects", ca.ob_of(xs) == cb.ob_of(xs), f"{anga!r} {xs!r}")
        for fs in _tuple_samples([c.mors for c in cats], rng, mor_cap):
            rep.check("agree-morphisms", ca.mor_of(fs) == cb.mor_of(fs), f"{anga!r}")
    return rep


def additive_mod_agree(Phi: AdditiveModification, Psi: AdditiveModification, bound: Sequence,
                       seed: int = 0, tuple_cap: int = 8, obj_cap: int = 5,
                       prefix: str = "") -> LawReport:
    """Componentwise equality of two 2-cells over sampled tuples from bound."""
    rep = LawReport(title=prefix or f"agree {Phi.name} ~ {Psi.name}")
    same = (
        Phi.arity == Psi.arity
        and all(a is b for a, b in zip(Phi.source.source, Psi.source.source))
        and Phi.source.target is Psi.source.target
    )
    rep.check("agree-profile", same, f"{Phi.name} vs {Psi.name}")
    if not same:
        return rep
    rng = stable_rng(seed, f"agree2:{Phi.name}:{Psi.name}")
    phi = Phi.source
    for anga in _tuple_samples([list(bound)] * Phi.arity, rng, tuple_cap):
        na, nb = Phi.at(anga), Psi.at(anga)
        cats = [X.cat(a) for X, a in zip(phi.source, anga)]
        for xs in _tuple_samples([c.objects for c in cats], rng, obj_cap):
            rep.check("agree-components", na.at(xs) == nb.at(xs), f"{anga!r} {xs!r}")
    return rep


# ---------------------------------------------------------------------------
# generators: power functors over the element positions of the base


def _fibers(D, f: FnMor) -> List[List[int]]:
    """Source positions over each target position; basepoint hits drop out."""
    out: List[List[int]] = [[] for _ in range(D.size(f.cod))]
    for i, y in enumerate(f.images, 1):
        if y:
            out[y - 1].append(i)
    return out


def _bit_vectors(k: int) -> List[Tuple[int, ...]]:
    return list(itertools.product((0, 1), repeat=k))


def _poset_category(objects: Sequence, leq) -> FinCategory:
    """One morphism x -> y per related pair; composition is forced."""
    objects = list(objects)
    mors = [MorRec((x, y), x, y) for x in objects for y in objects if leq(x, y)]
    identity = {x: (x, x) for x in objects}
    table = {}
    for g in mors:
        for f in mors:
            if f.cod == g.dom:
                table[(g.name, f.name)] = (f.dom, g.cod)
    return FinCategory(objects, mors, identity, table)


def _parity_category(k: int) -> FinCategory:
    """One object; morphisms are length-k bit vectors added coordinatewise."""
    star = "*"
    vecs = _bit_vectors(k)
    mors = [MorRec(v, star, star) for v in vecs]
    identity = {star: (0,) * k}
    table = {
        (g, f): tuple((gi + fi) % 2 for gi, fi in zip(g, f))
        for g in vecs
        for f in vecs
    }
    return FinCategory([star], mors, identity, table)


def _fiber_or(D, f: FnMor):
    fibs = _fibers(D, f)

    def ob(x):
        return tuple(max((x[i - 1] for i in fib), default=0) for fib in fibs)

    return ob


def free_additive_smf(D, bound, name: str = "bits") -> AdditiveSMFunctor:
    """Discrete bit-vector powers: one coordinate per element position.

    Pushforward takes the fiberwise join; the pairing concatenates.  The
    minimal fully tabulatable example over any base instance.
    """

    def cat(a):
        return discrete_category(_bit_vectors(D.size(a)))

    def fmap(f):
        dom, cod = cat_of(f.dom), cat_of(f.cod)
        ob = _fiber_or(D, f)
        return FunctorData(dom, cod, ob, lambda m: cod.identity_mor(ob(m.dom)))

    def sum2(a, b):
        cod = cat_of(D.oplus(a, b))
        return ComponentFunctor(
            lambda xs: xs[0] + xs[1],
            lambda fs: cod.identity_mor(fs[0].dom + fs[1].dom),
        )

    out = AdditiveSMFunctor(D, bound, cat, fmap, unit_obj=(), sum2=sum2, name=name)
    cat_of = out.cat
    return out


def order_additive_smf(D, bound, name: str = "masks") -> AdditiveSMFunctor:
    """Ordered bit-vector powers: an arrow per coordinatewise x <= y.

    Subsingleton homs make every morphism equation automatic, which keeps
    non-identity 2-cells cheap.
    """

    def leq(x, y):
        return all(xi <= yi for xi, yi in zip(x, y))

    def cat(a):
        return _poset_category(_bit_vectors(D.size(a)), leq)

    def fmap(f):
        dom, cod = cat_of(f.dom), cat_of(f.cod)
        ob = _fiber_or(D, f)
        return FunctorData(dom, cod, ob, lambda m: cod.mor((ob(m.dom), ob(m.cod))))

    def sum2(a, b):
        cod = cat_of(D.oplus(a, b))
        return ComponentFunctor(
            lambda xs: xs[0] + xs[1],
            lambda fs: cod.mor((fs[0].dom + fs[1].dom, fs[0].cod + fs[1].cod)),
        )

    out = AdditiveSMFunctor(D, bound, cat, fmap, unit_obj=(), sum2=sum2, name=name)
    cat_of = out.cat
    return out


def parity_additive_smf(D, bound, name: str = "loops") -> AdditiveSMFunctor:
    """One-object powers: morphisms are bit vectors, composition adds them.

    Pushforward sums each fiber modulo two, so it respects composition
    only when the base keeps fibers singleton; use over a base of
    bijections.
    """

    def cat(a):
        return _parity_category(D.size(a))

    def fmap(f):
        dom, cod = cat_of(f.dom), cat_of(f.cod)
        fibs = _fibers(D, f)
        return FunctorData(
            dom,
            cod,
            lambda x: "*",
            lambda m: cod.mor(tuple(sum(m.name[i - 1] for i in fib) % 2 for fib in fibs)),
        )

    def sum2(a, b):
        cod = cat_of(D.oplus(a, b))
        return ComponentFunctor(
            lambda xs: "*",
            lambda fs: cod.mor(fs[0].name + fs[1].name),
        )

    out = AdditiveSMFunctor(D, bound, cat, fmap, unit_obj="*", sum2=sum2, name=name)
    cat_of = out.cat
    return out


def constant_loop_smf(D, bound, name: str = "knob") -> AdditiveSMFunctor:
    """The constant one-object power: every value category is the same
    two-morphism loop, every pushforward is the identity, and the pairing
    adds.  Valid over any base; its interesting cells need a base of
    bijections.
    """
    loop = _parity_category(1)

    def cat(a):
        return loop

    def fmap(f):
        return FunctorData(loop, loop, lambda x: x, lambda m: m)

    def sum2(a, b):
        return ComponentFunctor(
            lambda xs: "*",
            lambda fs: loop.mor(((fs[0].name[0] + fs[1].name[0]) % 2,)),
        )

    return AdditiveSMFunctor(D, bound, cat, fmap, unit_obj="*", sum2=sum2, name=name)


def _tensor_positions(D, anga: Sequence) -> Dict[Tuple[int, ...], int]:
    """Where each tuple of element positions lands in the tensor product.

    Derived from the product of element-selecting morphisms out of one,
    so it agrees with every coherence isomorphism of the base by
    construction.
    """
    one = D.one()
    sizes = [D.size(a) for a in anga]
    out: Dict[Tuple[int, ...], int] = {}
    for combo in itertools.product(*[range(1, k + 1) for k in sizes]):
        m = D.identity_mor(one)
        for a, e in zip(anga, combo):
            m = D.otimes_mor(m, FnMor(one, a, (e,)))
        out[combo] = m.images[0]
    return out


def outer_bit_nat(X: AdditiveSMFunctor, n: int, combine, name: str = "outer") -> AdditiveNatTrans:
    """n-ary cell on a bit-vector power: combine coordinates across slots.

    The value at a tensor position is combine applied to the coordinates
    of its preimage positions, one from each slot.  combine must be
    monotone for ordered powers; min and max work over any base, max only
    over bases whose morphisms keep every fiber inhabited.
    """
    D = X.D

    def component(anga):
        positions = _tensor_positions(D, anga)
        total = D.size(fold_otimes(D, anga))
        cod = X.cat(fold_otimes(D, anga))

        def blend(vecs):
            out = [0] * total
            for combo, pos in positions.items():
                out[pos - 1] = combine(tuple(v[e - 1] for v, e in zip(vecs, combo)))
            return tuple(out)

        def mor(fs):
            lo = blend(tuple(f.dom for f in fs))
            hi = blend(tuple(f.cod for f in fs))
            hom = cod.hom(lo, hi)
            if len(hom) != 1:
                raise StructuralError(f"{name}: no unique arrow {lo!r} -> {hi!r}")
            return hom[0]

        return ComponentFunctor(lambda xs: blend(xs), mor)

    return AdditiveNatTrans((X,) * n, X, component, name=name)


def outer_loop_nat(X: AdditiveSMFunctor, n: int, name: str = "grid") -> AdditiveNatTrans:
    """n-ary cell on a one-object power: each tensor position receives the
    mod-two sum of the coordinates of its preimage positions."""
    D = X.D

    def component(anga):
        positions = _tensor_positions(D, anga)
        total = D.size(fold_otimes(D, anga))
        cod = X.cat(fold_otimes(D, anga))

        def mor(fs):
            out = [0] * total
            for combo, pos in positions.items():
                out[pos - 1] = sum(f.name[e - 1] for f, e in zip(fs, combo)) % 2
            return cod.mor(tuple(out))

        return ComponentFunctor(lambda xs: "*", mor)

    return AdditiveNatTrans((X,) * n, X, component, name=name)


def derivation_loop_nat(X: AdditiveSMFunctor, n: int, weights: Optional[Sequence[int]] = None,
                        name: str = "derive") -> AdditiveNatTrans:
    """n-ary cell on the constant loop, shaped like the product rule: each
    input is weighted by the parity of the product of the other slots'
    sizes, then everything is added."""
    D = X.D
    weights = tuple(1 for _ in range(n)) if weights is None else tuple(weights)
    if len(weights) != n:
        raise ValueError("one weight per slot")

    def component(anga):
        sizes = [D.size(a) for a in anga]
        cod = X.cat(fold_otimes(D, anga))
        ws = []
        for j in range(n):
            w = weights[j]
            for k, s in enumerate(sizes):
                if k != j:
                    w = (w * s) % 2
            ws.append(w)

        def mor(fs):
            val = sum(w * f.name[0] for w, f in zip(ws, fs)) % 2
            return cod.mor((val,))

        return ComponentFunctor(lambda xs: "*", mor)

    return AdditiveNatTrans((X,) * n, X, component, name=name)


def zero_endo_nat(Z: AdditiveSMFunctor, name: str = "collapse") -> AdditiveNatTrans:
    """The unary cell on a one-object power sending every morphism to the
    identity; with the parity composition this is a genuine monoidal
    endotransformation distinct from the identity cell."""

    def component(anga):
        cod = Z.cat(fold_otimes(Z.D, anga))
        return ComponentFunctor(
            lambda xs: xs[0],
            lambda fs: cod.identity_mor(fs[0].dom),
        )

    return AdditiveNatTrans((Z,), Z, component, name=name)


def shift_mod(phi: AdditiveNatTrans, bit: int = 1, name: str = "shift") -> AdditiveModification:
    """Endo 2-cell on a one-object-power cell: add a fixed bit at every
    coordinate of the component.  Needs a base of bijections."""
    Z = phi.target

    def component(anga):
        a = fold_otimes(Z.D, anga)
        cod = Z.cat(a)
        vec = (bit % 2,) * Z.D.size(a)
        return lambda xs: cod.mor(vec)

    return AdditiveModification(phi, phi, component, name=name)


def volume_mod(phi: AdditiveNatTrans, bit: int = 1, name: str = "volume") -> AdditiveModification:
    """Endo 2-cell on a constant-loop cell: the component at a tuple is the
    parity of the product of the slot sizes, scaled by bit.  Needs a base
    of bijections."""
    Z = phi.target

    def component(anga):
        cod = Z.cat(fold_otimes(Z.D, anga))
        val = bit % 2
        for a in anga:
            val = (val * Z.D.size(a)) % 2
        return lambda xs: cod.mor((val,))

    return AdditiveModification(phi, phi, component, name=name)


def leq_mod(phi: AdditiveNatTrans, psi: AdditiveNatTrans, name: str = "lift") -> AdditiveModification:
    """The unique 2-cell between ordered-power cells with phi <= psi
    pointwise; subsingleton homs make all its equations automatic."""
    Z = phi.target

    def component(anga):
        cod = Z.cat(fold_otimes(Z.D, anga))
        lo_f, hi_f = phi.at(anga), psi.at(anga)

        def comp(xs):
            lo, hi = lo_f.ob_of(xs), hi_f.ob_of(xs)
            hom = cod.hom(lo, hi)
            if not hom:
                raise StructuralError(f"{name}: no arrow {lo!r} -> {hi!r}")
            return hom[0]

        return comp

    return AdditiveModification(phi, psi, component, name=name)


# ---------------------------------------------------------------------------
# multicategory view


class DCatView(CatMulticategoryView):
    """Indexed categories over one base, presented for the axiom driver.

    Cells are the supplied transformations plus identities and permuted
    variants; 2-cells are modifications.  Equality is pointwise agreement
    over the sampling bound, so the bound should stay closed under the
    tensor products the sampled composites reach.
    """

    has_two_cells = True

    def __init__(self, D, cells: Sequence[AdditiveNatTrans], bound: Sequence,
                 name: Optional[str] = None, seed: int = 0,
                 tuple_cap: int = 4, obj_cap: int = 4, mor_cap: int = 3):
        self.D = D
        self.cells = list(cells)
        self.bound = tuple(bound)
        self.name = name or f"dcat-{D.name}"
        self.seed = seed
        self.tuple_cap = tuple_cap
        self.obj_cap = obj_cap
        self.mor_cap = mor_cap

    def profile(self, p):
        if not isinstance(p, AdditiveNatTrans):
            raise StructuralError(f"not a cell: {p!r}")
        return (tuple(p.source), p.target)

    def unit(self, c):
        return identity_additive_nat(c)

    def gamma(self, p, qs):
        return gamma(p, list(qs))

    def sigma_act(self, p, sigma):
        return sigma_act(p, sigma)

    def cell_eq(self, p, q):
        return additive_nat_agree(
            p, q, self.bound, seed=self.seed,
            tuple_cap=self.tuple_cap, obj_cap=self.obj_cap, mor_cap=self.mor_cap,
        ).ok

    def describe(self, p):
        return p.name

    def two_profile(self, t):
        return (t.source, t.target)

    def two_id(self, p):
        return identity_additive_mod(p)

    def two_vcomp(self, after, before):
        return vcomp_mod(after, before)

    def two_gamma(self, t, ss):
        return gamma(t, list(ss))

    def two_sigma(self, t, sigma):
        return sigma_act(t, sigma)

    def two_eq(self, s, t):
        return additive_mod_agree(
            s, t, self.bound, seed=self.seed,
            tuple_cap=self.tuple_cap, obj_cap=self.obj_cap,
        ).ok

    def two_is_iso(self, t):
        rng = stable_rng(self.seed, f"iso:{t.name}")
        Z = t.source.target
        for anga in _tuple_samples([list(self.bound)] * t.arity, rng, self.tuple_cap):
            cod = Z.cat(fold_otimes(Z.D, anga))
            nt = t.at(anga)
            cats = [X.cat(a) for X, a in zip(t.source.source, anga)]
            for xs in _tuple_samples([c.objects for c in cats], rng, self.obj_cap):
                m = nt.at(xs)
                if not any(
                    cod.compose(q, m) == cod.identity_mor(m.dom)
                    and cod.compose(m, q) == cod.identity_mor(m.cod)
                    for q in cod.hom(m.cod, m.dom)
                ):
                    return False
        return True

    def describe_two(self, t):
        return t.name

    def sample_cell(self, c, rng):
        options = [p for p in self.cells if p.target is c]
        options.append(identity_additive_nat(c))
        pick = rng.choice(options)
        if pick.arity >= 2 and rng.random() < 0.5:
            pick = sigma_act(pick, rand_perm(pick.arity, rng))
        return pick
