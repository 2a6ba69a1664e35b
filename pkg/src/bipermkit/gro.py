"""Total categories of indexed families and their first-factor projections.

build_grothendieck flattens an additive indexed family X over a bipermutative
base into one category of pairs (a, x), where a is an in-bound base object and
x an object of the value category over a.  A morphism (a, x) -> (b, y) is a
base morphism f: a -> b together with a value morphism f_*x -> y in the fiber
over b.  The pair category is permutative: the tensor adds base parts and
pairs value parts through the family's additive pairing, and the braiding is
the base braiding with an identity value part.  The first-factor projection
U_X is the motivating permutative opfibration: every (y, f) has the chosen
opcartesian lift (f, identity), and the choice is unital, multiplicative, and
aligned with sums and braidings.

Indexed cells transport to multilinear cells between pair categories.
gro_nat sends an n-ary cell to a strong n-linear functor whose i-th
constraint is an inverse distributivity isomorphism of the base paired with
an identity value part; gro_mod sends a 2-cell to an n-linear transformation
with identity base parts; gro_pseudo_sigma supplies the invertible comparison
between acting by a permutation before or after transporting.  The comparison
is generally not an identity, so the transport is pseudo symmetric rather
than symmetric; over a base whose multiplicative braiding is an identity it
degenerates to one.

The inverse direction recovers indexed data from projections.
reconstruct_from_opfibration rebuilds fibers and chosen-lift transports from
any split opfibration with enumerable homs, refusing cleavages that fail
unitarity or multiplicativity; preimage_nlinear and preimage_transformation
strip transported cells back to their indexed origins, refusing data that
breaks the projection axioms.  Round trips are exact, constraints included.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from .biperm import (
    FnMor,
    PermutativeStructure,
    default_bound,
    fold_otimes,
    fold_otimes_mor,
    laplaza_iso,
    tensor_reorder,
)
from .dcat import (
    AdditiveModification,
    AdditiveNatTrans,
    AdditiveSMFunctor,
    BoundError,
    ComponentFunctor,
)
from .dcat import sigma_act as indexed_sigma_act
from .fincat import FinCategory, FunctorData, LocallyFiniteCategory, MorRec
from .multicat import (
    CatMulticategoryView,
    PseudoSymmetricMultifunctorData,
    SamplingError,
    StructuralError,
)
from .permalg import Permutation, act_right, inverse
from .permcat import (
    NLinearFunctor,
    NLinearTransformation,
    gamma_compose,
    gamma_compose_trans,
    id_nlinear,
    id_nlinear_trans,
    nlinear_agree,
    nlinear_trans_agree,
    replace_at,
)
from .permcat import sigma_act as nlinear_sigma_act
from .reporting import LawReport, sample, stable_rng

# hom sets larger than this are refused rather than enumerated
_HOM_CAP = 4096


def _hom_enum(C, a, b) -> Tuple:
    """Enumerate a hom set, failing loudly instead of exploding silently."""
    size = getattr(C, "hom_size", None)
    if size is not None and size(a, b) > _HOM_CAP:
        raise StructuralError(f"hom over {a!r} -> {b!r} is too large to enumerate")
    return tuple(C.hom(a, b))


def _tuple_samples(pools: Sequence[Sequence], rng, cap: int):
    pools = [list(p) for p in pools]
    total = 1
    for p in pools:
        total *= len(p)
    if total <= cap:
        yield from itertools.product(*pools)
        return
    for _ in range(cap):
        yield tuple(rng.choice(p) for p in pools)


# ---------------------------------------------------------------------------
# the pair category


@dataclass(frozen=True)
class GroMor:
    """A morphism of pairs: a base morphism f with a value morphism p.

    p lives in the fiber over f.cod and runs from the pushforward of the
    source value part to the target value part.  The endpoints are stored
    because the source pair is not recoverable from (f, p) alone.
    """

    dom: Tuple
    cod: Tuple
    f: Any
    p: MorRec


class GrothendieckCategory(LocallyFiniteCategory):
    """The category of pairs (a, x) over an additive indexed family.

    Objects pair an in-bound base object with an object of its value
    category.  Hom sets are enumerated on demand by fanning out over base
    homs and fiber homs, so the category is locally finite whenever the
    base is; homs past the enumeration cap are refused.  Everything is
    materialized lazily within the declared bound.

    The additive layer (unit, boxtimes, braiding) is exposed as .additive,
    and the first-factor projection with its chosen lifts as .projection.
    """

    def __init__(self, X: AdditiveSMFunctor, bound: Optional[Sequence] = None):
        self.source = X
        self.D = X.D
        self.bound = tuple(dict.fromkeys(X.bound if bound is None else bound))
        self._bound_set = set(self.bound)
        self.name = f"tot({X.name})"
        self._objects: Optional[Tuple] = None
        self._fiber_obs: Dict = {}
        self._homs: Dict = {}
        self._ids: Dict = {}
        self._additive: Optional[PermutativeStructure] = None
        self._projection: Optional["PermutativeOpfibration"] = None

    def __repr__(self) -> str:
        return f"GrothendieckCategory({self.name})"

    # -- objects -----------------------------------------------------------

    def require(self, a) -> None:
        if a not in self._bound_set:
            raise BoundError(f"{self.name}: base object {a!r} is outside the declared bound")

    def _fiber_objects(self, a) -> set:
        got = self._fiber_obs.get(a)
        if got is None:
            got = set(self.source.cat(a).objects)
            self._fiber_obs[a] = got
        return got

    def require_object(self, o) -> None:
        a, x = o
        self.require(a)
        if x not in self._fiber_objects(a):
            raise StructuralError(f"{self.name}: {x!r} is not an object of the fiber over {a!r}")

    @property
    def objects(self) -> Tuple:
        if self._objects is None:
            self._objects = tuple(
                (a, x) for a in self.bound for x in self.source.cat(a).objects
            )
        return self._objects

    def size(self, o) -> int:
        # morphism samplers scale by this; the base part is the honest measure
        return self.D.size(o[0])

    # -- the operational interface ------------------------------------------

    def hom(self, o1, o2) -> Tuple[GroMor, ...]:
        key = (o1, o2)
        got = self._homs.get(key)
        if got is None:
            self.require_object(o1)
            self.require_object(o2)
            (a, x), (b, y) = o1, o2
            X = self.source
            out = []
            for f in _hom_enum(self.D, a, b):
                push = X.fmap(f).ob_of(x)
                for p in X.cat(b).hom(push, y):
                    out.append(GroMor(o1, o2, f, p))
            got = tuple(out)
            self._homs[key] = got
        return got

    def hom_size(self, o1, o2) -> int:
        return len(self.hom(o1, o2))

    def identity_mor(self, o) -> GroMor:
        got = self._ids.get(o)
        if got is None:
            self.require_object(o)
            a, x = o
            got = GroMor(o, o, self.D.identity_mor(a), self.source.cat(a).identity_mor(x))
            self._ids[o] = got
        return got

    def compose(self, g: GroMor, f: GroMor) -> GroMor:
        if f.cod != g.dom:
            raise ValueError(f"not composable: cod {f.cod!r} vs dom {g.dom!r}")
        X = self.source
        b = g.cod[0]
        q = X.cat(b).compose(g.p, X.fmap(g.f).mor_of(f.p))
        return GroMor(f.dom, g.cod, self.D.compose(g.f, f.f), q)

    def invert(self, m: GroMor) -> GroMor:
        finv = self.D.invert(m.f)
        X = self.source
        a = m.dom[0]
        r = X.fmap(finv).mor_of(m.p)
        fiber = X.cat(a)
        for q in fiber.hom(r.cod, r.dom):
            if (
                fiber.compose(q, r) == fiber.identity_mor(r.dom)
                and fiber.compose(r, q) == fiber.identity_mor(r.cod)
            ):
                return GroMor(m.cod, m.dom, finv, q)
        raise ValueError(f"{self.name}: value part of {m!r} is not invertible")

    # -- the additive layer --------------------------------------------------

    @property
    def unit(self) -> Tuple:
        return (self.D.zero(), self.source.unit_obj)

    def boxtimes(self, o1, o2) -> Tuple:
        (a, x), (b, y) = o1, o2
        return (self.D.oplus(a, b), self.source.sum2(a, b).ob_of((x, y)))

    def boxtimes_mor(self, m1: GroMor, m2: GroMor) -> GroMor:
        b1, b2 = m1.cod[0], m2.cod[0]
        return GroMor(
            self.boxtimes(m1.dom, m2.dom),
            self.boxtimes(m1.cod, m2.cod),
            self.D.oplus_mor(m1.f, m2.f),
            self.source.sum2(b1, b2).mor_of((m1.p, m2.p)),
        )

    def braiding(self, o1, o2) -> GroMor:
        (a, x), (b, y) = o1, o2
        swapped = self.boxtimes(o2, o1)
        return GroMor(
            self.boxtimes(o1, o2),
            swapped,
            self.D.beta_plus(a, b),
            self.source.cat(self.D.oplus(b, a)).identity_mor(swapped[1]),
        )

    @property
    def additive(self) -> PermutativeStructure:
        if self._additive is None:
            self._additive = PermutativeStructure(
                self, self.unit, self.boxtimes, self.boxtimes_mor, self.braiding
            )
        return self._additive

    # -- the projection -------------------------------------------------------

    def chosen_lift(self, o, f) -> GroMor:
        """The canonical opcartesian morphism out of o over f: (f, identity)."""
        a, x = o
        if f.dom != a:
            raise StructuralError(f"{self.name}: lift of {f!r} requested at {o!r}")
        push = self.source.fmap(f).ob_of(x)
        return GroMor(o, (f.cod, push), f, self.source.cat(f.cod).identity_mor(push))

    @property
    def projection(self) -> "PermutativeOpfibration":
        if self._projection is None:
            proj = FunctorData(self, self.D, lambda o: o[0], lambda m: m.f)
            self._projection = PermutativeOpfibration(
                total=self,
                base=self.D,
                proj=proj,
                cleavage=self.chosen_lift,
                objects=self.objects,
                name=f"U[{self.source.name}]",
                total_perm=self.additive,
                base_perm=self.D.additive,
            )
        return self._projection


_TOTAL_CACHE: Dict[Tuple[int, Tuple], Tuple[AdditiveSMFunctor, GrothendieckCategory]] = {}


def build_grothendieck(
    X: AdditiveSMFunctor, bound: Optional[Sequence] = None
) -> GrothendieckCategory:
    """The pair category of X, memoized so repeated requests share structure.

    Sharing matters: agreement checks compare additive layers by value and
    indexed families by identity, so asking twice for the same (X, bound)
    must yield the same category object.  The projection and its chosen
    lifts hang off the result as .projection.
    """
    key = (id(X), tuple(dict.fromkeys(X.bound if bound is None else bound)))
    got = _TOTAL_CACHE.get(key)
    if got is None or got[0] is not X:
        got = (X, GrothendieckCategory(X, bound))
        _TOTAL_CACHE[key] = got
    return got[1]


# ---------------------------------------------------------------------------
# opfibrations


@dataclass(frozen=True, eq=False)
class SplitOpfibration:
    """A projection functor with one chosen lift per (object, base morphism).

    cleavage(y, f) must return a total morphism out of y over f.  The
    axioms (projection, opcartesianness, unitarity, multiplicativity) are
    checked by check_split_opfib, not enforced by construction.  objects
    lists the total objects the checkers quantify over; handles compare by
    identity.
    """

    total: Any
    base: Any
    proj: FunctorData
    cleavage: Callable
    objects: Tuple
    name: str = "P"


@dataclass(frozen=True, eq=False)
class PermutativeOpfibration(SplitOpfibration):
    """A split opfibration between permutative layers."""

    total_perm: PermutativeStructure = None
    base_perm: PermutativeStructure = None


def identity_opfibration(D, bound: Optional[int] = None) -> PermutativeOpfibration:
    """The identity functor of a bipermutative instance as a permutative
    opfibration: the chosen lift of f at its own source is f itself."""
    objs = tuple(D.objects_upto(default_bound(D) if bound is None else bound))

    def cleavage(y, f):
        if f.dom != y:
            raise StructuralError(f"identity projection: lift of {f!r} requested at {y!r}")
        return f

    return PermutativeOpfibration(
        total=D,
        base=D,
        proj=FunctorData(D, D, lambda o: o, lambda m: m),
        cleavage=cleavage,
        objects=objs,
        name=f"id[{D.name}]",
        total_perm=D.additive,
        base_perm=D.additive,
    )


def opcartesian_failure(P: SplitOpfibration, g) -> Optional[Tuple]:
    """The first fore-raise through g without a unique raise, or None.

    A fore-raise is a morphism h out of g's source together with a base
    morphism f out of the projection of g's target whose base triangle
    commutes.  g is opcartesian when every fore-raise factors through g by
    exactly one raise over f.  The witness is (target object, h, f, number
    of raises found).
    """
    total, base, proj = P.total, P.base, P.proj
    x, y = total.dom(g), total.cod(g)
    pg = proj.mor_of(g)
    py = proj.ob_of(y)
    for z in P.objects:
        pz = proj.ob_of(z)
        fs = _hom_enum(base, py, pz)
        if not fs:
            continue
        candidates = _hom_enum(total, y, z)
        for h in _hom_enum(total, x, z):
            ph = proj.mor_of(h)
            for f in fs:
                if base.compose(f, pg) != ph:
                    continue
                raises = [
                    t
                    for t in candidates
                    if proj.mor_of(t) == f and total.compose(t, g) == h
                ]
                if len(raises) != 1:
                    return (z, h, f, len(raises))
    return None


def check_opcartesian_morphism(P: SplitOpfibration, g) -> bool:
    """Exhaustively decide opcartesianness of g against P's object list."""
    return opcartesian_failure(P, g) is None


def check_split_opfib(
    P: SplitOpfibration,
    seed=0,
    obj_cap: int = 6,
    mor_cap: int = 3,
    opc_cap: int = 4,
    prefix: str = "",
) -> LawReport:
    """Functoriality of the projection and the cleavage axioms.

    Opcartesianness of sampled chosen lifts is decided by exhaustive raise
    enumeration over P.objects, so the object list must stay small enough
    for its homs to be enumerated.
    """
    rep = LawReport(title=prefix or f"split-opfib:{P.name}")
    rng = stable_rng(seed, f"opfib:{P.name}:{prefix}")
    total, base, proj = P.total, P.base, P.proj
    base_objects = list(dict.fromkeys(proj.ob_of(y) for y in P.objects))
    opc_budget = opc_cap
    for y in sample(list(P.objects), obj_cap, rng):
        a = proj.ob_of(y)
        iy = total.identity_mor(y)
        rep.check(
            prefix + "projection-identity",
            proj.mor_of(iy) == base.identity_mor(a),
            f"at {y!r}",
        )
        rep.check(
            prefix + "cleavage-unitarity",
            P.cleavage(y, base.identity_mor(a)) == iy,
            f"at {y!r}",
        )
        for z in sample(list(P.objects), 2, rng):
            for m in sample(list(_hom_enum(total, y, z)), mor_cap, rng):
                for w in sample(list(P.objects), 2, rng):
                    for m2 in sample(list(_hom_enum(total, z, w)), 2, rng):
                        rep.check(
                            prefix + "projection-composition",
                            proj.mor_of(total.compose(m2, m))
                            == base.compose(proj.mor_of(m2), proj.mor_of(m)),
                            f"{y!r} -> {z!r} -> {w!r}",
                        )
        for b in sample(base_objects, obj_cap, rng):
            for f in sample(list(_hom_enum(base, a, b)), mor_cap, rng):
                lift = P.cleavage(y, f)
                rep.check(
                    prefix + "cleavage-projection",
                    proj.mor_of(lift) == f,
                    f"at {y!r} along {f!r}",
                )
                rep.check(
                    prefix + "cleavage-source",
                    total.dom(lift) == y and proj.ob_of(total.cod(lift)) == base.cod(f),
                    f"at {y!r} along {f!r}",
                )
                if opc_budget > 0:
                    opc_budget -= 1
                    witness = opcartesian_failure(P, lift)
                    rep.check(
                        prefix + "cleavage-opcartesian",
                        witness is None,
                        f"at {y!r} along {f!r}: {witness!r}",
                    )
                yf = total.cod(lift)
                for c in sample(base_objects, 2, rng):
                    for g in sample(list(_hom_enum(base, b, c)), mor_cap, rng):
                        rep.check(
                            prefix + "cleavage-multiplicativity",
                            P.cleavage(y, base.compose(g, f))
                            == total.compose(P.cleavage(yf, g), lift),
                            f"at {y!r} along {f!r} then {g!r}",
                        )
    return rep


def check_perm_opfib(
    P: PermutativeOpfibration,
    seed=0,
    obj_cap: int = 5,
    mor_cap: int = 3,
    prefix: str = "",
) -> LawReport:
    """The split axioms plus strict monoidality and lift alignment.

    Pairs whose tensor leaves P.objects are skipped, so the object list
    should be closed under enough sums to exercise the laws.
    """
    rep = check_split_opfib(P, seed=seed, obj_cap=obj_cap, mor_cap=mor_cap, prefix=prefix)
    rng = stable_rng(seed, f"permopfib:{P.name}:{prefix}")
    total, base, proj = P.total, P.base, P.proj
    tp, bp = P.total_perm, P.base_perm
    # guard by base parts: computing an out-of-bound tensor would itself raise
    base_bound = set(proj.ob_of(y) for y in P.objects)
    rep.check(prefix + "strict-unit", proj.ob_of(tp.unit) == bp.unit, f"{tp.unit!r}")
    objs = list(P.objects)
    for _ in range(obj_cap * 2):
        x, y = rng.choice(objs), rng.choice(objs)
        a, b = proj.ob_of(x), proj.ob_of(y)
        if bp.tensor(a, b) not in base_bound or bp.tensor(b, a) not in base_bound:
            continue
        rep.check(
            prefix + "strict-tensor-objects",
            proj.ob_of(tp.tensor(x, y)) == bp.tensor(a, b),
            f"{x!r} {y!r}",
        )
        braid = tp.braiding(x, y)
        rep.check(
            prefix + "strict-braiding",
            proj.mor_of(braid) == bp.braiding(a, b),
            f"{x!r} {y!r}",
        )
        rep.check(
            prefix + "lift-braiding",
            braid == P.cleavage(tp.tensor(x, y), bp.braiding(a, b)),
            f"{x!r} {y!r}",
        )
        x2, y2 = rng.choice(objs), rng.choice(objs)
        a2, b2 = proj.ob_of(x2), proj.ob_of(y2)
        if bp.tensor(a2, b2) not in base_bound:
            continue
        for m in sample(list(_hom_enum(total, x, x2)), mor_cap, rng):
            for n in sample(list(_hom_enum(total, y, y2)), mor_cap, rng):
                rep.check(
                    prefix + "strict-tensor-morphisms",
                    proj.mor_of(tp.tensor_mor(m, n))
                    == bp.tensor_mor(proj.mor_of(m), proj.mor_of(n)),
                    f"{m!r} {n!r}",
                )
        for f in sample(list(_hom_enum(base, a, a2)), mor_cap, rng):
            for g in sample(list(_hom_enum(base, b, b2)), mor_cap, rng):
                rep.check(
                    prefix + "lift-sum",
                    P.cleavage(tp.tensor(x, y), bp.tensor_mor(f, g))
                    == tp.tensor_mor(P.cleavage(x, f), P.cleavage(y, g)),
                    f"at {x!r}, {y!r} along {f!r}, {g!r}",
                )
    return rep


# ---------------------------------------------------------------------------
# opcartesian multilinear cells


@dataclass(frozen=True, eq=False)
class OpcartesianNLinear:
    """An n-linear functor between total categories with its projection data."""

    functor: NLinearFunctor
    doms_opf: Tuple[PermutativeOpfibration, ...]
    cod_opf: PermutativeOpfibration

    @property
    def arity(self) -> int:
        return self.functor.arity

    @property
    def name(self) -> str:
        return self.functor.name

    def fob(self, xs):
        return self.functor.fob(xs)

    def fmor(self, fs):
        return self.functor.fmor(fs)

    def constraint(self, j, xs, xj_prime):
        return self.functor.constraint(j, xs, xj_prime)


@dataclass(frozen=True, eq=False)
class OpcartesianNLinearTrans:
    """An n-linear transformation whose components project to identities."""

    transformation: NLinearTransformation
    source: OpcartesianNLinear
    target: OpcartesianNLinear

    @property
    def arity(self) -> int:
        return self.transformation.arity

    @property
    def name(self) -> str:
        return self.transformation.name

    def at(self, xs):
        return self.transformation.at(xs)


def _mor_from_pool(total, pool: List, rng) -> Optional[Any]:
    x, y = rng.choice(pool), rng.choice(pool)
    opts = list(total.hom(x, y))
    if not opts:
        return None
    return rng.choice(opts)


def check_opcartesian_nlinear(
    F: OpcartesianNLinear,
    pools: Sequence[Sequence],
    seed=0,
    tuple_cap: int = 8,
    prefix: str = "",
) -> LawReport:
    """Projection, chosen-lift, and constraint-lift axioms on pooled samples.

    The fore-lift axiom (F maps tuples of opcartesian morphisms to an
    opcartesian morphism) follows from chosen-lift preservation together
    with the cleavage axioms and is not checked separately.  Pools must be
    closed enough that sums and tensors of sampled parts stay inside the
    declared bounds of every total category involved.
    """
    rep = LawReport(title=prefix or f"opcart:{F.name}")
    rng = stable_rng(seed, f"opcart:{F.name}:{prefix}")
    Q = F.cod_opf
    D = Q.base
    if F.arity == 0:
        got = F.fob(())
        rep.check(prefix + "projection-objects", Q.proj.ob_of(got) == D.one(), f"{got!r}")
        return rep
    handles = F.doms_opf
    for xs in _tuple_samples(pools, rng, tuple_cap):
        xs = tuple(xs)
        anga = tuple(h.proj.ob_of(x) for h, x in zip(handles, xs))
        rep.check(
            prefix + "projection-objects",
            Q.proj.ob_of(F.fob(xs)) == fold_otimes(D, anga),
            f"at {xs!r}",
        )
        ms = []
        for h, pool in zip(handles, pools):
            m = _mor_from_pool(h.total, list(pool), rng)
            if m is None:
                break
            ms.append(m)
        if len(ms) == len(xs):
            rep.check(
                prefix + "projection-morphisms",
                Q.proj.mor_of(F.fmor(tuple(ms)))
                == fold_otimes_mor(D, [h.proj.mor_of(m) for h, m in zip(handles, ms)]),
                f"at {ms!r}",
            )
        lifts, fs = [], []
        for h, x, pool in zip(handles, xs, pools):
            a = h.proj.ob_of(x)
            targets = list(dict.fromkeys(h.proj.ob_of(z) for z in pool))
            opts = list(_hom_enum(h.base, a, rng.choice(targets)))
            if not opts:
                break
            f = rng.choice(opts)
            fs.append(f)
            lifts.append(h.cleavage(x, f))
        if len(lifts) == len(xs):
            rep.check(
                prefix + "chosen-lift-preservation",
                F.fmor(tuple(lifts)) == Q.cleavage(F.fob(xs), fold_otimes_mor(D, fs)),
                f"at {xs!r} along {fs!r}",
            )
        i = rng.randint(1, F.arity)
        xp = rng.choice(list(pools[i - 1]))
        ap = handles[i - 1].proj.ob_of(xp)
        lam = laplaza_iso(D, anga, i, ap)
        dom_pair = Q.total_perm.tensor(F.fob(xs), F.fob(replace_at(xs, i, xp)))
        rep.check(
            prefix + "constraint-lift",
            F.constraint(i, xs, xp) == Q.cleavage(dom_pair, D.invert(lam)),
            f"slot {i} at {xs!r} with {xp!r}",
        )
    return rep


def check_opcartesian_nlinear_trans(
    theta: OpcartesianNLinearTrans,
    pools: Sequence[Sequence],
    seed=0,
    tuple_cap: int = 8,
    prefix: str = "",
) -> LawReport:
    """The projection axiom: every component projects to a base identity."""
    rep = LawReport(title=prefix or f"opcart2:{theta.name}")
    rng = stable_rng(seed, f"opcart2:{theta.name}:{prefix}")
    Q = theta.source.cod_opf
    D = Q.base
    if theta.arity == 0:
        comp = theta.at(())
        rep.check(
            prefix + "transformation-projection",
            Q.proj.mor_of(comp) == D.identity_mor(D.one()),
            f"{comp!r}",
        )
        return rep
    handles = theta.source.doms_opf
    for xs in _tuple_samples(pools, rng, tuple_cap):
        xs = tuple(xs)
        anga = tuple(h.proj.ob_of(x) for h, x in zip(handles, xs))
        rep.check(
            prefix + "transformation-projection",
            Q.proj.mor_of(theta.at(xs)) == D.identity_mor(fold_otimes(D, anga)),
            f"at {xs!r}",
        )
    return rep


# ---------------------------------------------------------------------------
# transport of indexed cells


_NAT_CACHE: Dict[int, Tuple[AdditiveNatTrans, OpcartesianNLinear]] = {}


def gro_nat(phi: AdditiveNatTrans) -> OpcartesianNLinear:
    """Transport an n-ary indexed cell to a strong n-linear functor of pairs.

    Objects go to (tensor of base parts, component value); a morphism tuple
    goes to (tensor of base morphisms, component at the target base tuple
    applied to the value parts).  The i-th constraint is the inverse
    distributivity isomorphism of the base paired with an identity value
    part; at arity one it degenerates to an identity, so a unary transport
    is strict symmetric monoidal.  Memoized per cell so repeated transports
    share the underlying table.
    """
    got = _NAT_CACHE.get(id(phi))
    if got is not None and got[0] is phi:
        return got[1]
    Z = phi.target
    D = Z.D
    Es = tuple(build_grothendieck(X) for X in phi.source)
    EZ = build_grothendieck(Z)

    def fob(objs):
        anga = tuple(o[0] for o in objs)
        return (fold_otimes(D, anga), phi.at(anga).ob_of(tuple(o[1] for o in objs)))

    def fmor(ms):
        angb = tuple(m.cod[0] for m in ms)
        return GroMor(
            fob(tuple(m.dom for m in ms)),
            fob(tuple(m.cod for m in ms)),
            fold_otimes_mor(D, [m.f for m in ms]),
            phi.at(angb).mor_of(tuple(m.p for m in ms)),
        )

    def f2(i, objs, op):
        anga = tuple(o[0] for o in objs)
        cod_obj = fob(replace_at(tuple(objs), i, Es[i - 1].boxtimes(objs[i - 1], op)))
        # the value part is an identity: the component respects the pairing
        return GroMor(
            EZ.boxtimes(fob(tuple(objs)), fob(replace_at(tuple(objs), i, op))),
            cod_obj,
            D.invert(laplaza_iso(D, anga, i, op[0])),
            Z.cat(cod_obj[0]).identity_mor(cod_obj[1]),
        )

    fn = NLinearFunctor(
        doms=tuple(E.additive for E in Es),
        cod=EZ.additive,
        fob=fob,
        fmor=fmor,
        f2=f2,
        strong=True,
        name=f"tot[{phi.name}]",
    )
    out = OpcartesianNLinear(fn, tuple(E.projection for E in Es), EZ.projection)
    _NAT_CACHE[id(phi)] = (phi, out)
    return out


def gro_mod(Phi: AdditiveModification) -> OpcartesianNLinearTrans:
    """Transport a 2-cell: identity base parts, component value parts."""
    src = gro_nat(Phi.source)
    tgt = gro_nat(Phi.target)
    Z = Phi.source.target
    D = Z.D

    def component(objs):
        anga = tuple(o[0] for o in objs)
        return GroMor(
            src.fob(objs),
            tgt.fob(objs),
            D.identity_mor(fold_otimes(D, anga)),
            Phi.at(anga).at(tuple(o[1] for o in objs)),
        )

    trans = NLinearTransformation(
        source=src.functor,
        target=tgt.functor,
        component=component,
        name=f"tot[{Phi.name}]",
    )
    return OpcartesianNLinearTrans(trans, src, tgt)


def gro_pseudo_sigma(phi: AdditiveNatTrans, sigma: Permutation, objects: Sequence) -> GroMor:
    """The comparison between transporting after or before a permutation.

    At an object tuple the morphism is the multiplicative reorder
    isomorphism of the base paired with an identity value part; its source
    is the transported acted cell's value, its target the acted transported
    cell's value.  The identity permutation yields an identity morphism.
    """
    objects = tuple(objects)
    if sigma.n != phi.arity or len(objects) != phi.arity:
        raise ValueError(f"{phi.name}: degree {sigma.n} does not match arity {phi.arity}")
    Z = phi.target
    D = Z.D
    inv = inverse(sigma)
    anga = tuple(o[0] for o in objects)
    back = act_right(anga, inv)
    w = phi.at(back).ob_of(act_right(tuple(o[1] for o in objects), inv))
    f = tensor_reorder(D, anga, sigma)
    source_second = Z.fmap(tensor_reorder(D, back, inv)).ob_of(w)
    if Z.fmap(f).ob_of(source_second) != w:
        raise StructuralError(f"{phi.name}: reorder isomorphisms fail to cancel at {objects!r}")
    return GroMor(
        (fold_otimes(D, anga), source_second),
        (fold_otimes(D, back), w),
        f,
        Z.cat(fold_otimes(D, back)).identity_mor(w),
    )


def arity_zero_embedding(E: GrothendieckCategory) -> FunctorData:
    """The fiber over the multiplicative unit, embedded into the pair category.

    Objects go to (one, x) and morphisms to (identity, p).  On the declared
    bound this is a bijection onto the pairs projecting to one, matching the
    convention that arity-zero cells are objects of the value category over
    the unit.
    """
    D = E.D
    one = D.one()
    fiber = E.source.cat(one)

    def mor(m):
        return GroMor((one, m.dom), (one, m.cod), D.identity_mor(one), m)

    return FunctorData(fiber, E, lambda x: (one, x), mor)


# ---------------------------------------------------------------------------
# multicategory views


class GroView(CatMulticategoryView):
    """Pair categories and their multilinear cells as one multicategory.

    Objects are the additive layers of built pair categories; cells are
    NLinearFunctors between them, compared by agreement over per-object
    pools.  A pool holds the pairs whose base part lies in pool_firsts,
    which must be closed enough for the sums and tensors the agreement
    checks sample.
    """

    has_two_cells = True

    def __init__(
        self,
        pool_firsts: Sequence,
        name: Optional[str] = None,
        seed=0,
        tuple_cap: int = 6,
    ):
        self.pool_firsts = set(pool_firsts)
        self.name = name or "gro-view"
        self.seed = seed
        self.tuple_cap = tuple_cap
        self._pools: Dict = {}

    def _pool(self, token: PermutativeStructure) -> List:
        got = self._pools.get(token)
        if got is None:
            got = [o for o in token.base.objects if o[0] in self.pool_firsts]
            if not got:
                raise SamplingError(f"{self.name}: empty pool for {token.base!r}")
            self._pools[token] = got
        return got

    def profile(self, p):
        return tuple(p.doms), p.cod

    def unit(self, c):
        return id_nlinear(c)

    def gamma(self, p, qs):
        return gamma_compose(p, list(qs))

    def sigma_act(self, p, sigma):
        return nlinear_sigma_act(p, sigma)

    def cell_eq(self, p, q) -> bool:
        pools = [self._pool(t) for t in p.doms]
        return nlinear_agree(p, q, pools, seed=self.seed, tuple_cap=self.tuple_cap).ok

    def describe(self, p) -> str:
        return p.name

    def sample_cell(self, c, rng):
        return id_nlinear(c)

    def two_profile(self, t):
        return t.source, t.target

    def two_id(self, p):
        return id_nlinear_trans(p)

    def two_vcomp(self, after, before):
        base = before.source.cod.base
        return NLinearTransformation(
            source=before.source,
            target=after.target,
            component=lambda xs: base.compose(after.at(xs), before.at(xs)),
            name=f"({after.name} . {before.name})",
        )

    def two_gamma(self, t, ss):
        return gamma_compose_trans(t, list(ss))

    def two_sigma(self, t, sigma):
        return nlinear_sigma_act(t, sigma)

    def two_eq(self, s, t) -> bool:
        pools = [self._pool(tok) for tok in s.source.doms]
        return (
            nlinear_agree(s.source, t.source, pools, seed=self.seed, tuple_cap=self.tuple_cap).ok
            and nlinear_agree(s.target, t.target, pools, seed=self.seed, tuple_cap=self.tuple_cap).ok
            and nlinear_trans_agree(s, t, pools, seed=self.seed, tuple_cap=self.tuple_cap).ok
        )

    def two_is_iso(self, t) -> bool:
        base = t.source.cod.base
        if t.arity == 0:
            comps = [t.at(())]
        else:
            pools = [self._pool(tok) for tok in t.source.doms]
            rng = stable_rng(self.seed, f"{self.name}:iso:{t.name}")
            comps = [t.at(tuple(xs)) for xs in _tuple_samples(pools, rng, self.tuple_cap)]
        for comp in comps:
            try:
                base.invert(comp)
            except (ValueError, KeyError):
                return False
        return True

    def describe_two(self, t) -> str:
        return t.name


class PFibView(CatMulticategoryView):
    """Permutative projections and opcartesian cells, without a right action.

    Objects are PermutativeOpfibration handles compared by identity; cells
    carry their n-linear data and agree when the handles match and the data
    agree over per-handle pools.  There is no symmetric group action here:
    acting on an opcartesian cell breaks its projection alignment, so
    sigma_act refuses.
    """

    symmetric = False
    has_two_cells = True

    def __init__(
        self,
        cells: Sequence[OpcartesianNLinear] = (),
        pool_firsts: Sequence = (),
        name: Optional[str] = None,
        seed=0,
        tuple_cap: int = 6,
    ):
        self.cells = list(cells)
        self.pool_firsts = set(pool_firsts)
        self.name = name or "pfib-view"
        self.seed = seed
        self.tuple_cap = tuple_cap
        self._pools: Dict[int, List] = {}

    def _pool(self, handle: PermutativeOpfibration) -> List:
        got = self._pools.get(id(handle))
        if got is None:
            got = [o for o in handle.objects if handle.proj.ob_of(o) in self.pool_firsts]
            if not got:
                raise SamplingError(f"{self.name}: empty pool for {handle.name}")
            self._pools[id(handle)] = got
        return got

    def profile(self, p):
        return tuple(p.doms_opf), p.cod_opf

    def unit(self, c):
        return OpcartesianNLinear(id_nlinear(c.total_perm), (c,), c)

    def gamma(self, p, qs):
        qs = list(qs)
        if len(qs) != p.arity:
            raise SamplingError(f"{p.name}: gamma needs {p.arity} inner cells, got {len(qs)}")
        for j, q in enumerate(qs, start=1):
            if q.cod_opf is not p.doms_opf[j - 1]:
                raise SamplingError(f"{p.name}: inner handle at slot {j} does not match")
        return OpcartesianNLinear(
            gamma_compose(p.functor, [q.functor for q in qs]),
            tuple(h for q in qs for h in q.doms_opf),
            p.cod_opf,
        )

    def sigma_act(self, p, sigma):
        raise StructuralError(f"{self.name}: opcartesian cells carry no permutation action")

    def cell_eq(self, p, q) -> bool:
        if (
            p.arity != q.arity
            or any(a is not b for a, b in zip(p.doms_opf, q.doms_opf))
            or p.cod_opf is not q.cod_opf
        ):
            return False
        pools = [self._pool(h) for h in p.doms_opf]
        return nlinear_agree(
            p.functor, q.functor, pools, seed=self.seed, tuple_cap=self.tuple_cap
        ).ok

    def describe(self, p) -> str:
        return p.name

    def sample_cell(self, c, rng):
        options = [p for p in self.cells if p.cod_opf is c]
        options.append(self.unit(c))
        return rng.choice(options)

    def two_profile(self, t):
        return t.source, t.target

    def two_id(self, p):
        return OpcartesianNLinearTrans(id_nlinear_trans(p.functor), p, p)

    def two_vcomp(self, after, before):
        total = before.source.cod_opf.total
        trans = NLinearTransformation(
            source=before.transformation.source,
            target=after.transformation.target,
            component=lambda xs: total.compose(after.at(xs), before.at(xs)),
            name=f"({after.name} . {before.name})",
        )
        return OpcartesianNLinearTrans(trans, before.source, after.target)

    def two_gamma(self, t, ss):
        ss = list(ss)
        return OpcartesianNLinearTrans(
            gamma_compose_trans(t.transformation, [s.transformation for s in ss]),
            self.gamma(t.source, [s.source for s in ss]),
            self.gamma(t.target, [s.target for s in ss]),
        )

    def two_sigma(self, t, sigma):
        raise StructuralError(f"{self.name}: opcartesian cells carry no permutation action")

    def two_eq(self, s, t) -> bool:
        if not self.cell_eq(s.source, t.source) or not self.cell_eq(s.target, t.target):
            return False
        pools = [self._pool(h) for h in s.source.doms_opf]
        return nlinear_trans_agree(
            s.transformation, t.transformation, pools, seed=self.seed, tuple_cap=self.tuple_cap
        ).ok

    def two_is_iso(self, t) -> bool:
        total = t.source.cod_opf.total
        if t.arity == 0:
            comps = [t.at(())]
        else:
            pools = [self._pool(h) for h in t.source.doms_opf]
            rng = stable_rng(self.seed, f"{self.name}:iso:{t.name}")
            comps = [t.at(tuple(xs)) for xs in _tuple_samples(pools, rng, self.tuple_cap)]
        for comp in comps:
            try:
                total.invert(comp)
            except (ValueError, KeyError):
                return False
        return True

    def describe_two(self, t) -> str:
        return t.name


def gro_multifunctor(
    view,
    pool_firsts: Sequence,
    name: Optional[str] = None,
    seed=0,
    tuple_cap: int = 6,
) -> PseudoSymmetricMultifunctorData:
    """The transport as a pseudo symmetric multifunctor into a GroView.

    The domain is a view of indexed cells (a DCatView or anything with the
    same cell types).  The pseudo symmetry component at (sigma, p) is the
    n-linear transformation whose components are the comparison morphisms
    of gro_pseudo_sigma.
    """
    cod = GroView(
        pool_firsts, name=f"{name}-cod" if name else None, seed=seed, tuple_cap=tuple_cap
    )

    def psi(sigma, p):
        return NLinearTransformation(
            source=gro_nat(indexed_sigma_act(p, sigma)).functor,
            target=nlinear_sigma_act(gro_nat(p).functor, sigma),
            component=lambda objs: gro_pseudo_sigma(p, sigma, objs),
            name=f"comm[{p.name}]^{sigma.images}",
        )

    return PseudoSymmetricMultifunctorData(
        dom=view,
        cod=cod,
        ob_map=lambda X: build_grothendieck(X).additive,
        cell_map=lambda p: gro_nat(p).functor,
        two_map=lambda t: gro_mod(t).transformation,
        psi=psi,
        name=name or "tot",
    )


def gro_pfib_multifunctor(
    view,
    pool_firsts: Sequence,
    name: Optional[str] = None,
    seed=0,
    tuple_cap: int = 6,
    cells: Sequence[OpcartesianNLinear] = (),
) -> PseudoSymmetricMultifunctorData:
    """The transport valued in opcartesian cells over their projections.

    The codomain view has no permutation action, so there are no pseudo
    components; this refinement exists for the round trips against the
    inverse constructions.
    """
    cod = PFibView(
        cells=cells,
        pool_firsts=pool_firsts,
        name=f"{name}-cod" if name else None,
        seed=seed,
        tuple_cap=tuple_cap,
    )
    return PseudoSymmetricMultifunctorData(
        dom=view,
        cod=cod,
        ob_map=lambda X: build_grothendieck(X).projection,
        cell_map=gro_nat,
        two_map=gro_mod,
        psi=None,
        name=name or "tot-pfib",
    )


# ---------------------------------------------------------------------------
# inverse constructions


def _fiber_category(P: SplitOpfibration, a) -> FinCategory:
    """The subcategory of total objects over a and morphisms over its identity.

    Raw total morphisms serve as the names of the records, so fibers built
    from the same projection compare structurally.
    """
    total, base, proj = P.total, P.base, P.proj
    ia = base.identity_mor(a)
    objects = [y for y in P.objects if proj.ob_of(y) == a]
    mors = []
    for y in objects:
        for z in objects:
            for m in _hom_enum(total, y, z):
                if proj.mor_of(m) == ia:
                    mors.append(MorRec(m, y, z))
    identity = {y: total.identity_mor(y) for y in objects}
    table = {}
    for g in mors:
        for f in mors:
            if f.cod == g.dom:
                table[(g.name, f.name)] = total.compose(g.name, f.name)
    return FinCategory(objects, mors, identity, table)


def _transport(P: SplitOpfibration, fibers: Dict, f) -> FunctorData:
    """Pushforward along f: chosen-lift targets on objects, unique raises on
    morphisms.  A raise count other than one refuses the projection."""
    total, base, proj = P.total, P.base, P.proj
    dom, cod = fibers[f.dom], fibers[f.cod]
    ib = base.identity_mor(f.cod)
    ob = {y: total.cod(P.cleavage(y, f)) for y in dom.objects}
    mor = {}
    for rec in dom.mors:
        want = total.compose(P.cleavage(rec.cod, f), rec.name)
        lift = P.cleavage(rec.dom, f)
        raises = [
            t
            for t in _hom_enum(total, ob[rec.dom], ob[rec.cod])
            if proj.mor_of(t) == ib and total.compose(t, lift) == want
        ]
        if len(raises) != 1:
            raise StructuralError(
                f"{P.name}: {len(raises)} raises for {rec.name!r} along {f!r}"
            )
        mor[rec.name] = raises[0]
    return FunctorData(dom, cod, ob, mor)


def reconstruct_from_opfibration(
    P: SplitOpfibration, bound: Sequence, seed=0, obj_cap: int = 6, mor_cap: int = 4
) -> Tuple[AdditiveSMFunctor, FunctorData]:
    """Rebuild the indexed family of a split opfibration and the comparison.

    Fibers are the literal fiber categories, pushforwards are chosen-lift
    transports, and the comparison functor sends a pair (a, y) to y and a
    morphism (f, p) to p composed after the chosen lift of f; it is an
    isomorphism onto the total category whose inverse projection is the
    first-factor projection of the rebuilt family.

    A cleavage that fails unitarity or multiplicativity on the sampled
    triangles is refused with the witness before any transport is built.
    For a permutative projection the family is additionally additive: unit
    and pairing are read off the total permutative layer, which makes the
    comparison strict symmetric monoidal.  Other malformed inputs (a
    non-functorial projection, a non-strict permutative layer) surface as
    loud lookup failures when the rebuilt family is used.
    """
    bound = tuple(dict.fromkeys(bound))
    total, base, proj = P.total, P.base, P.proj
    rng = stable_rng(seed, f"reconstruct:{P.name}")
    for y in sample(list(P.objects), obj_cap * 2, rng):
        a = proj.ob_of(y)
        if P.cleavage(y, base.identity_mor(a)) != total.identity_mor(y):
            raise StructuralError(f"{P.name}: cleavage is not unital at {y!r}")
        for b in sample(list(bound), 3, rng):
            for f in sample(list(_hom_enum(base, a, b)), mor_cap, rng):
                yf = total.cod(P.cleavage(y, f))
                for c in sample(list(bound), 2, rng):
                    for g in sample(list(_hom_enum(base, b, c)), mor_cap, rng):
                        if P.cleavage(y, base.compose(g, f)) != total.compose(
                            P.cleavage(yf, g), P.cleavage(y, f)
                        ):
                            raise StructuralError(
                                f"{P.name}: cleavage is not multiplicative at {y!r} "
                                f"along {f!r} then {g!r}"
                            )
    fibers = {a: _fiber_category(P, a) for a in bound}
    if isinstance(P, PermutativeOpfibration) and P.total_perm is not None:
        tp = P.total_perm
        unit_obj = tp.unit

        def sum2(a, b):
            cod = fibers[base.oplus(a, b)]
            return ComponentFunctor(
                lambda xs: tp.tensor(xs[0], xs[1]),
                lambda fs: cod.mor(tp.tensor_mor(fs[0].name, fs[1].name)),
                cod=cod,
            )

    else:
        unit_obj = None

        def sum2(a, b):
            raise StructuralError(f"{P.name}: not a permutative projection; no pairing")

    X = AdditiveSMFunctor(
        base,
        bound,
        cat=lambda a: fibers[a],
        fmap=lambda f: _transport(P, fibers, f),
        unit_obj=unit_obj,
        sum2=sum2,
        name=f"fibers[{P.name}]",
    )
    E = build_grothendieck(X, bound)
    phi = FunctorData(
        E,
        total,
        lambda o: o[1],
        lambda m: total.compose(m.p.name, P.cleavage(m.dom[1], m.f)),
    )
    return X, phi


def preimage_nlinear(F: OpcartesianNLinear):
    """Strip a transported cell back to the indexed cell it came from.

    Value parts are read off second entries; first entries are checked
    against the projection axioms and a violation is refused with the
    offending tuple.  Components are built lazily, so a violation deep in
    some fiber surfaces only when that fiber is consulted.  Requires
    handles whose total categories were built by build_grothendieck.  An
    arity-zero cell comes back as an object of the value category over the
    unit.
    """
    totals = [h.total for h in F.doms_opf] + [F.cod_opf.total]
    if not all(isinstance(t, GrothendieckCategory) for t in totals):
        raise StructuralError(f"{F.name}: preimages need projections of built pair categories")
    Z = F.cod_opf.total.source
    D = Z.D
    if F.arity == 0:
        got = F.fob(())
        if got[0] != D.one():
            raise StructuralError(
                f"{F.name}: projection axiom fails at (): {got[0]!r} != {D.one()!r}"
            )
        return got[1]
    Xs = tuple(h.total.source for h in F.doms_opf)

    def component(anga):
        def ob(xs):
            got = F.fob(tuple(zip(anga, xs)))
            want = fold_otimes(D, anga)
            if got[0] != want:
                raise StructuralError(
                    f"{F.name}: projection axiom fails at {tuple(zip(anga, xs))!r}: "
                    f"{got[0]!r} != {want!r}"
                )
            return got[1]

        def mor(ps):
            ms = tuple(
                GroMor((a, p.dom), (a, p.cod), D.identity_mor(a), p)
                for a, p in zip(anga, ps)
            )
            got = F.fmor(ms)
            if got.f != D.identity_mor(fold_otimes(D, anga)):
                raise StructuralError(
                    f"{F.name}: projection axiom fails at {ms!r}: {got.f!r} is not an identity"
                )
            return got.p

        return ComponentFunctor(ob, mor)

    return AdditiveNatTrans(Xs, Z, component, name=f"pre[{F.name}]")


def preimage_transformation(omega: OpcartesianNLinearTrans):
    """Strip a transported 2-cell back to its indexed 2-cell.

    Components must project to base identities; a violation is refused
    with the offending tuple.  An arity-zero cell comes back as the value
    part of its single component.
    """
    if (
        any(a is not b for a, b in zip(omega.source.doms_opf, omega.target.doms_opf))
        or omega.source.cod_opf is not omega.target.cod_opf
    ):
        raise StructuralError(f"{omega.name}: endpoints live over different projections")
    Z = omega.source.cod_opf.total.source
    D = Z.D
    if omega.arity == 0:
        got = omega.at(())
        if got.f != D.identity_mor(D.one()):
            raise StructuralError(f"{omega.name}: component at () does not project to an identity")
        return got.p
    src = preimage_nlinear(omega.source)
    tgt = preimage_nlinear(omega.target)

    def component(anga):
        def comp(xs):
            got = omega.at(tuple(zip(anga, xs)))
            if got.f != D.identity_mor(fold_otimes(D, anga)):
                raise StructuralError(
                    f"{omega.name}: component at {xs!r} does not project to an identity"
                )
            return got.p

        return comp

    return AdditiveModification(src, tgt, component, name=f"pre[{omega.name}]")
