"""Multilinear functors between permutative structures and their calculus.

An n-linear functor carries, besides the underlying functor out of a product
of permutative structures, one linearity constraint per input slot; the five
axioms tie the constraints to the additive structure.  This module provides
the data types, the bounded axiom checkers, the right symmetric group action,
the multicategorical composition with its composite constraints, and a
multicategory view over a bipermutative instance whose cells are multilinear
functors and whose 2-cells are multilinear transformations.

Constraint components are memoized per (slot, object tuple, second summand)
key the first time they are requested; nothing is pre-enumerated.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence, Tuple

from .biperm import FnMor, PermutativeStructure, fold_otimes, laplaza_iso, sample_hom
from .multicat import CatMulticategoryView, SamplingError, StructuralError, rand_perm
from .permalg import Permutation, act_right, inverse
from .reporting import LawReport, sample, stable_rng


def replace_at(xs: tuple, j: int, value) -> tuple:
    """The tuple xs with its j-th entry (1-based) replaced by value."""
    return xs[: j - 1] + (value,) + xs[j:]


@dataclass
class NLinearFunctor:
    """A functor prod_j doms[j] -> cod with one linearity constraint per slot.

    fob and fmor take a tuple per call, one entry per input slot; f2 takes
    (j, xs, xj_prime) with j 1-based and returns the component

        F<xs> (+) F<xs o_j xj_prime>  ->  F<xs o_j (xs_j (+) xj_prime)>.

    A 0-linear functor has doms == () and is the choice of the object
    fob(()); its f2 is never consulted.
    """

    doms: Tuple[PermutativeStructure, ...]
    cod: PermutativeStructure
    fob: Callable
    fmor: Callable
    f2: Optional[Callable] = None
    strong: bool = True
    name: str = "F"
    _table: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def arity(self) -> int:
        return len(self.doms)

    def constraint(self, j: int, xs: tuple, xj_prime) -> FnMor:
        if not 1 <= j <= self.arity:
            raise StructuralError(f"{self.name}: no slot {j} in arity {self.arity}")
        key = (j, xs, xj_prime)
        if key not in self._table:
            if self.f2 is None:
                raise StructuralError(f"{self.name}: missing linearity constraint")
            comp = self.f2(j, xs, xj_prime)
            if comp is None:
                raise StructuralError(f"{self.name}: missing component {key!r}")
            self._table[key] = comp
        return self._table[key]


@dataclass
class NLinearTransformation:
    """A natural transformation between parallel n-linear functors."""

    source: NLinearFunctor
    target: NLinearFunctor
    component: Callable
    name: str = "theta"

    @property
    def arity(self) -> int:
        return self.source.arity

    def at(self, xs: tuple) -> FnMor:
        comp = self.component(xs)
        if comp is None:
            raise StructuralError(f"{self.name}: missing component at {xs!r}")
        return comp


def id_nlinear(P: PermutativeStructure, name: str = "1") -> NLinearFunctor:
    """The identity 1-linear functor with identity constraint."""
    base = P.base

    def f2(j, xs, xp):
        return base.identity_mor(P.tensor(xs[0], xp))

    return NLinearFunctor(
        doms=(P,),
        cod=P,
        fob=lambda xs: xs[0],
        fmor=lambda fs: fs[0],
        f2=f2,
        strong=True,
        name=name,
    )


def const_nlinear(P: PermutativeStructure, obj, name: Optional[str] = None) -> NLinearFunctor:
    """A 0-linear functor: the choice of an object of the codomain."""
    return NLinearFunctor(
        doms=(),
        cod=P,
        fob=lambda xs: obj,
        fmor=lambda fs: P.base.identity_mor(obj),
        f2=None,
        strong=True,
        name=name or f"const:{obj!r}",
    )


def id_nlinear_trans(F: NLinearFunctor, name: str = "1") -> NLinearTransformation:
    return NLinearTransformation(
        source=F,
        target=F,
        component=lambda xs: F.cod.base.identity_mor(F.fob(xs)),
        name=name,
    )


def otimes_nlinear(C, n: int, name: Optional[str] = None) -> NLinearFunctor:
    """The n-fold multiplicative product as an n-linear functor on the additive layer.

    The j-th constraint is the inverse of the distributing isomorphism over
    the sum in the j-th tensor factor; for n = 2 these are the two
    factorization morphisms.
    """
    add = C.additive

    def fmor(fs):
        out = C.identity_mor(C.one())
        for f in fs:
            out = C.otimes_mor(out, f)
        return out

    def f2(j, xs, xp):
        return C.invert(laplaza_iso(C, xs, j, xp))

    return NLinearFunctor(
        doms=(add,) * n,
        cod=add,
        fob=lambda xs: fold_otimes(C, xs),
        fmor=fmor,
        f2=f2,
        strong=True,
        name=name or f"otimes^{n}",
    )


# -- sampling helpers ---------------------------------------------------------


def _tuple_pool(pools: Sequence[Sequence], rng, count: int) -> list:
    if any(len(p) == 0 for p in pools):
        raise SamplingError("empty object pool")
    seen = []
    for _ in range(count):
        seen.append(tuple(rng.choice(list(p)) for p in pools))
    return seen


def _mor_tuple(doms, pools, rng) -> Optional[tuple]:
    fs = []
    for P, pool in zip(doms, pools):
        a = rng.choice(list(pool))
        b = rng.choice(list(pool))
        mors = sample_hom(P.base, a, b, rng) or sample_hom(P.base, a, a, rng)
        if not mors:
            return None
        fs.append(rng.choice(mors))
    return tuple(fs)


# -- axiom checkers -----------------------------------------------------------


def check_nlinear(
    F: NLinearFunctor,
    pools: Sequence[Sequence],
    seed=0,
    tuple_cap: int = 12,
    prefix: str = "",
) -> LawReport:
    """All five axioms on object tuples drawn from the per-slot pools.

    pools[j] is the finite object set for the j-th input; morphism-level
    laws (unity on morphisms, constraint naturality) use sampled morphisms
    between pooled objects.
    """
    n = F.arity
    if len(pools) != n:
        raise ValueError(f"expected {n} object pools, got {len(pools)}")
    rep = LawReport(f"nlinear:{F.name}")
    if n == 0:
        rep.check(prefix + "constant-object", F.fob(()) == F.fob(()), repr(F.fob(())))
        return rep
    rng = stable_rng(seed, f"nlinear:{F.name}:{prefix}")
    D = F.cod
    base = D.base
    tuples = _tuple_pool(pools, rng, tuple_cap)
    for xs in tuples:
        for j in range(1, n + 1):
            e_j = F.doms[j - 1].unit
            got = F.fob(replace_at(xs, j, e_j))
            rep.check(
                prefix + "unity-objects",
                got == D.unit,
                f"slot {j} of {xs!r} gave {got!r}",
            )
            fs = _mor_tuple(F.doms, pools, rng)
            if fs is not None:
                got_m = F.fmor(replace_at(fs, j, F.doms[j - 1].base.identity_mor(e_j)))
                rep.check(
                    prefix + "unity-morphisms",
                    got_m == base.identity_mor(D.unit),
                    f"slot {j}: {got_m!r}",
                )
            for xp in sample(list(pools[j - 1]), 3, rng):
                comp = F.constraint(j, xs, xp)
                want_dom = D.tensor(F.fob(xs), F.fob(replace_at(xs, j, xp)))
                xj_sum = F.doms[j - 1].tensor(xs[j - 1], xp)
                want_cod = F.fob(replace_at(xs, j, xj_sum))
                rep.check(
                    prefix + "constraint-endpoints",
                    comp.dom == want_dom and comp.cod == want_cod,
                    f"slot {j} at {xs!r},{xp!r}: {comp!r}",
                )
                if F.strong:
                    try:
                        base.invert(comp)
                        invertible = True
                    except (ValueError, KeyError):
                        invertible = False
                    rep.check(
                        prefix + "constraint-invertibility",
                        invertible,
                        f"slot {j} at {xs!r},{xp!r}",
                    )
                if any(x == F.doms[i].unit for i, x in enumerate(xs)) or xp == F.doms[j - 1].unit:
                    rep.check(
                        prefix + "constraint-unity",
                        comp == base.identity_mor(comp.dom) and comp.dom == comp.cod,
                        f"slot {j} at {xs!r},{xp!r}: {comp!r}",
                    )
                # symmetry: push the braiding through the constraint
                swap_in = F.doms[j - 1].braiding(xs[j - 1], xp)
                lhs = base.compose(
                    F.fmor(
                        tuple(
                            F.doms[i].base.identity_mor(xs[i]) if i != j - 1 else swap_in
                            for i in range(n)
                        )
                    ),
                    comp,
                )
                flipped = F.constraint(j, replace_at(xs, j, xp), xs[j - 1])
                rhs = base.compose(
                    flipped, D.braiding(F.fob(xs), F.fob(replace_at(xs, j, xp)))
                )
                rep.check(
                    prefix + "constraint-symmetry",
                    lhs == rhs,
                    f"slot {j} at {xs!r},{xp!r}: lhs={lhs!r} rhs={rhs!r}",
                )
            # associativity needs two extra summands
            xp, xpp = (rng.choice(list(pools[j - 1])) for _ in range(2))
            comp_right = F.constraint(j, replace_at(xs, j, xp), xpp)
            sum_right = F.doms[j - 1].tensor(xp, xpp)
            one_f = base.identity_mor(F.fob(xs))
            route_b = base.compose(
                F.constraint(j, xs, sum_right), D.tensor_mor(one_f, comp_right)
            )
            comp_left = F.constraint(j, xs, xp)
            after = F.constraint(j, replace_at(xs, j, F.doms[j - 1].tensor(xs[j - 1], xp)), xpp)
            route_c = base.compose(
                after,
                D.tensor_mor(comp_left, base.identity_mor(F.fob(replace_at(xs, j, xpp)))),
            )
            rep.check(
                prefix + "constraint-associativity",
                route_b == route_c,
                f"slot {j} at {xs!r},{xp!r},{xpp!r}",
            )
            # naturality on sampled morphism tuples
            fs = _mor_tuple(F.doms, pools, rng)
            if fs is not None:
                Pj = F.doms[j - 1]
                xj2 = rng.choice(list(pools[j - 1]))
                gp = (sample_hom(Pj.base, xj2, xj2, rng) or [Pj.base.identity_mor(xj2)])[0]
                src = tuple(f.dom for f in fs)
                dst = tuple(f.cod for f in fs)
                lhs = base.compose(
                    F.constraint(j, dst, gp.cod),
                    D.tensor_mor(F.fmor(fs), F.fmor(replace_at(fs, j, gp))),
                )
                summed = Pj.tensor_mor(fs[j - 1], gp)
                rhs = base.compose(
                    F.fmor(replace_at(fs, j, summed)), F.constraint(j, src, gp.dom)
                )
                rep.check(
                    prefix + "constraint-naturality",
                    lhs == rhs,
                    f"slot {j}: lhs={lhs!r} rhs={rhs!r}",
                )
        # 2-by-2 over ordered pairs of distinct slots
        for j in range(1, n + 1):
            for k in range(1, n + 1):
                if j == k:
                    continue
                xp = rng.choice(list(pools[j - 1]))
                xkp = rng.choice(list(pools[k - 1]))
                with_jp = replace_at(xs, j, xp)
                with_kp = replace_at(xs, k, xkp)
                both = replace_at(with_jp, k, xkp)
                top = base.compose(
                    F.constraint(k, replace_at(xs, j, F.doms[j - 1].tensor(xs[j - 1], xp)), xkp),
                    D.tensor_mor(F.constraint(j, xs, xp), F.constraint(j, with_kp, xp)),
                )
                mid = D.tensor_mor(
                    D.tensor_mor(
                        base.identity_mor(F.fob(xs)),
                        D.braiding(F.fob(with_jp), F.fob(with_kp)),
                    ),
                    base.identity_mor(F.fob(both)),
                )
                bottom = base.compose(
                    F.constraint(j, replace_at(xs, k, F.doms[k - 1].tensor(xs[k - 1], xkp)), xp),
                    base.compose(
                        D.tensor_mor(F.constraint(k, xs, xkp), F.constraint(k, with_jp, xkp)),
                        mid,
                    ),
                )
                rep.check(
                    prefix + "constraint-2x2",
                    top == bottom,
                    f"slots {j},{k} at {xs!r},{xp!r},{xkp!r}",
                )
    return rep


def check_nlinear_trans(
    theta: NLinearTransformation,
    pools: Sequence[Sequence],
    seed=0,
    tuple_cap: int = 12,
    prefix: str = "",
) -> LawReport:
    """Naturality, the unity axiom, and constraint compatibility on pooled tuples."""
    F, G = theta.source, theta.target
    if tuple(F.doms) != tuple(G.doms) or F.cod != G.cod:
        raise ValueError("transformation endpoints must be parallel")
    n = F.arity
    rep = LawReport(f"nlinear-trans:{theta.name}")
    D = F.cod
    base = D.base
    if n == 0:
        comp = theta.at(())
        rep.check(
            prefix + "component-endpoints",
            comp.dom == F.fob(()) and comp.cod == G.fob(()),
            repr(comp),
        )
        return rep
    rng = stable_rng(seed, f"nlinear-trans:{theta.name}:{prefix}")
    for xs in _tuple_pool(pools, rng, tuple_cap):
        comp = theta.at(xs)
        rep.check(
            prefix + "component-endpoints",
            comp.dom == F.fob(xs) and comp.cod == G.fob(xs),
            f"at {xs!r}: {comp!r}",
        )
        if any(x == F.doms[i].unit for i, x in enumerate(xs)):
            rep.check(
                prefix + "unity",
                comp == base.identity_mor(D.unit),
                f"at {xs!r}: {comp!r}",
            )
        fs = _mor_tuple(F.doms, pools, rng)
        if fs is not None:
            src = tuple(f.dom for f in fs)
            dst = tuple(f.cod for f in fs)
            lhs = base.compose(theta.at(dst), F.fmor(fs))
            rhs = base.compose(G.fmor(fs), theta.at(src))
            rep.check(prefix + "naturality", lhs == rhs, f"lhs={lhs!r} rhs={rhs!r}")
        for j in range(1, n + 1):
            xp = rng.choice(list(pools[j - 1]))
            with_p = replace_at(xs, j, xp)
            summed = replace_at(xs, j, F.doms[j - 1].tensor(xs[j - 1], xp))
            lhs = base.compose(theta.at(summed), F.constraint(j, xs, xp))
            rhs = base.compose(
                G.constraint(j, xs, xp), D.tensor_mor(theta.at(xs), theta.at(with_p))
            )
            rep.check(
                prefix + "constraint-compatibility",
                lhs == rhs,
                f"slot {j} at {xs!r},{xp!r}: lhs={lhs!r} rhs={rhs!r}",
            )
    return rep


# -- symmetric group action ---------------------------------------------------


def sigma_act(cell, sigma: Permutation):
    """The right action: reindex the inputs of a functor or transformation by sigma.

    The acted functor evaluates the original at the tuple reshuffled so that
    slot sigma(j) receives the j-th new input; the j-th constraint of the
    result is the sigma(j)-th original constraint at the reshuffled tuple.
    """
    if isinstance(cell, NLinearTransformation):
        return NLinearTransformation(
            source=sigma_act(cell.source, sigma),
            target=sigma_act(cell.target, sigma),
            component=lambda xs: cell.at(act_right(xs, inverse(sigma))),
            name=f"{cell.name}^{sigma.images}",
        )
    F = cell
    if sigma.n != F.arity:
        raise ValueError(f"permutation degree {sigma.n} does not match arity {F.arity}")
    if sigma.is_identity():
        return F
    inv = inverse(sigma)

    def back(xs):
        return act_right(xs, inv)

    return NLinearFunctor(
        doms=act_right(F.doms, sigma),
        cod=F.cod,
        fob=lambda xs: F.fob(back(xs)),
        fmor=lambda fs: F.fmor(back(fs)),
        f2=lambda j, xs, xp: F.constraint(sigma(j), back(xs), xp),
        strong=F.strong,
        name=f"{F.name}^{sigma.images}",
    )


# -- multicategorical composition ----------------------------------------------


def _chunks(flat: tuple, sizes: Sequence[int]) -> list:
    out = []
    pos = 0
    for k in sizes:
        out.append(tuple(flat[pos : pos + k]))
        pos += k
    return out


def gamma_compose(F: NLinearFunctor, inners: Sequence[NLinearFunctor]) -> NLinearFunctor:
    """The composite F o (prod_j inners[j]) with its composite constraints.

    The l-th constraint routes through the outer constraint at the slot j
    owning flat position l, followed by F applied to the j-th inner
    constraint tensored with identities.
    """
    n = F.arity
    if len(inners) != n:
        raise SamplingError(f"gamma needs {n} inner functors, got {len(inners)}")
    for j, G in enumerate(inners):
        if G.cod != F.doms[j]:
            raise SamplingError(f"inner codomain at slot {j + 1} does not match")
    sizes = [G.arity for G in inners]
    D = F.cod
    base = D.base

    def fob(flat):
        return F.fob(tuple(G.fob(ws) for G, ws in zip(inners, _chunks(flat, sizes))))

    def fmor(flat):
        return F.fmor(tuple(G.fmor(ws) for G, ws in zip(inners, _chunks(flat, sizes))))

    def locate(l):
        pos = 0
        for j, k in enumerate(sizes):
            if l <= pos + k:
                return j + 1, l - pos
            pos += k
        raise StructuralError(f"no slot {l} in arity {sum(sizes)}")

    def f2(l, flat, wp):
        j, i = locate(l)
        chunks = _chunks(flat, sizes)
        Gj = inners[j - 1]
        wj = chunks[j - 1]
        images = tuple(G.fob(ws) for G, ws in zip(inners, chunks))
        inner_comp = Gj.constraint(i, wj, wp)
        outer = F.constraint(j, images, Gj.fob(replace_at(wj, i, wp)))
        tube = F.fmor(
            tuple(
                inners[m].cod.base.identity_mor(images[m]) if m != j - 1 else inner_comp
                for m in range(n)
            )
        )
        return base.compose(tube, outer)

    return NLinearFunctor(
        doms=tuple(P for G in inners for P in G.doms),
        cod=D,
        fob=fob,
        fmor=fmor,
        f2=f2,
        strong=F.strong and all(G.strong for G in inners),
        name=f"{F.name}({', '.join(G.name for G in inners)})",
    )


def gamma_compose_trans(
    theta: NLinearTransformation, inners: Sequence[NLinearTransformation]
) -> NLinearTransformation:
    """Horizontal composite of transformations along gamma_compose."""
    F, G = theta.source, theta.target
    src = gamma_compose(F, [t.source for t in inners])
    tgt = gamma_compose(G, [t.target for t in inners])
    sizes = [t.arity for t in inners]
    base = F.cod.base

    def component(flat):
        chunks = _chunks(flat, sizes)
        outs = tuple(t.target.fob(ws) for t, ws in zip(inners, chunks))
        legs = tuple(t.at(ws) for t, ws in zip(inners, chunks))
        return base.compose(theta.at(outs), F.fmor(legs))

    return NLinearTransformation(
        source=src,
        target=tgt,
        component=component,
        name=f"{theta.name}({', '.join(t.name for t in inners)})",
    )


# -- componentwise agreement ----------------------------------------------------


def nlinear_agree(
    F: NLinearFunctor,
    G: NLinearFunctor,
    pools: Sequence[Sequence],
    seed=0,
    tuple_cap: int = 10,
    prefix: str = "",
) -> LawReport:
    """Structural agreement of two functors' data on pooled samples."""
    rep = LawReport(f"agree:{F.name}={G.name}")
    rep.check(
        prefix + "agree-profile",
        F.arity == G.arity and tuple(F.doms) == tuple(G.doms) and F.cod == G.cod,
        f"{F.name} vs {G.name}",
    )
    if not rep.ok:
        return rep
    if F.arity == 0:
        rep.check(prefix + "agree-objects", F.fob(()) == G.fob(()), f"{F.fob(())!r}")
        return rep
    rng = stable_rng(seed, f"agree:{F.name}:{G.name}:{prefix}")
    for xs in _tuple_pool(pools, rng, tuple_cap):
        rep.check(
            prefix + "agree-objects",
            F.fob(xs) == G.fob(xs),
            f"at {xs!r}: {F.fob(xs)!r} vs {G.fob(xs)!r}",
        )
        fs = _mor_tuple(F.doms, pools, rng)
        if fs is not None:
            rep.check(
                prefix + "agree-morphisms",
                F.fmor(fs) == G.fmor(fs),
                f"{F.fmor(fs)!r} vs {G.fmor(fs)!r}",
            )
        j = rng.randint(1, F.arity)
        xp = rng.choice(list(pools[j - 1]))
        rep.check(
            prefix + "agree-constraints",
            F.constraint(j, xs, xp) == G.constraint(j, xs, xp),
            f"slot {j} at {xs!r},{xp!r}",
        )
    return rep


def nlinear_trans_agree(
    s: NLinearTransformation,
    t: NLinearTransformation,
    pools: Sequence[Sequence],
    seed=0,
    tuple_cap: int = 10,
    prefix: str = "",
) -> LawReport:
    rep = LawReport(f"agree:{s.name}={t.name}")
    if s.arity == 0:
        rep.check(prefix + "agree-components", s.at(()) == t.at(()), repr(s.at(())))
        return rep
    rng = stable_rng(seed, f"agree:{s.name}:{t.name}:{prefix}")
    for xs in _tuple_pool(pools, rng, tuple_cap):
        rep.check(
            prefix + "agree-components",
            s.at(xs) == t.at(xs),
            f"at {xs!r}: {s.at(xs)!r} vs {t.at(xs)!r}",
        )
    return rep


# -- the multicategory view ------------------------------------------------------


class PermCatView(CatMulticategoryView):
    """Multilinear functors over one bipermutative instance as a multicategory.

    Every object is the instance's additive layer, so all profiles match and
    sampled families always compose.  Cell equality is agreement of the
    component data over the view's object pool; this is the bounded notion
    the rest of the package uses for functor-valued cells.
    """

    has_two_cells = True

    def __init__(self, C, pool: Sequence, name: Optional[str] = None, seed=0):
        self.C = C
        self.token = C.additive
        self.pool = list(pool)
        self.name = name or f"permcat:{type(C).__name__.lower()}"
        self.seed = seed

    def profile(self, p: NLinearFunctor):
        return tuple(p.doms), p.cod

    def unit(self, c):
        return id_nlinear(c)

    def gamma(self, p, qs):
        return gamma_compose(p, qs)

    def sigma_act(self, p, sigma):
        return sigma_act(p, sigma)

    def cell_eq(self, p, q):
        pools = [self.pool] * p.arity
        return nlinear_agree(p, q, pools, seed=self.seed).ok

    def describe(self, p):
        return p.name

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
        return gamma_compose_trans(t, ss)

    def two_sigma(self, t, sigma):
        return sigma_act(t, sigma)

    def two_eq(self, s, t):
        pools = [self.pool] * s.arity
        return (
            nlinear_agree(s.source, t.source, pools, seed=self.seed).ok
            and nlinear_agree(s.target, t.target, pools, seed=self.seed).ok
            and nlinear_trans_agree(s, t, pools, seed=self.seed).ok
        )

    def two_is_iso(self, t):
        if t.arity == 0:
            comps = [t.at(())]
        else:
            rng = stable_rng(self.seed, f"{self.name}:iso")
            comps = [
                t.at(xs) for xs in _tuple_pool([self.pool] * t.arity, rng, 8)
            ]
        base = t.source.cod.base
        for comp in comps:
            try:
                base.invert(comp)
            except (ValueError, KeyError):
                return False
        return True

    def describe_two(self, t):
        return t.name

    def sample_cell(self, c, rng):
        kind = rng.choice(("unit", "unit", "const", "otimes", "otimes-acted"))
        if kind == "unit":
            return id_nlinear(self.token)
        if kind == "const":
            return const_nlinear(self.token, rng.choice(self.pool))
        F = otimes_nlinear(self.C, 2)
        if kind == "otimes-acted":
            return sigma_act(F, rand_perm(2, rng))
        return F

    def sample_two_from(self, p, rng):
        return id_nlinear_trans(p)
