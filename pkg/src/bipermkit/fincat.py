"""Finite and locally finite categories, functors, transformations, modifications.

A FinCategory is fully tabulated: objects, named morphisms, identities, and a
composition table.  A locally finite category is any object exposing the same
operational interface (hom / identity_mor / compose / dom / cod) with hom sets
enumerable on demand; the concrete bipermutative instances implement it with
procedures instead of tables.

Equality of categorical data is structural throughout: two categories, functors,
or transformations are equal when their tabulated data coincide.  No quotienting
by isomorphism happens anywhere.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Dict, Hashable, Iterable, List, Optional, Sequence, Tuple


@dataclass(frozen=True)
class MorRec:
    """A named morphism record: the name is the identity of the arrow."""

    name: Hashable
    dom: Hashable
    cod: Hashable


class LocallyFiniteCategory:
    """Operational category interface; subclasses supply the four core methods."""

    def hom(self, a, b) -> Tuple:
        raise NotImplementedError

    def identity_mor(self, a):
        raise NotImplementedError

    def compose(self, g, f):
        raise NotImplementedError

    def dom(self, f):
        return f.dom

    def cod(self, f):
        return f.cod


class FinCategory(LocallyFiniteCategory):
    """A finite category given by explicit tables."""

    def __init__(
        self,
        objects: Sequence[Hashable],
        mors: Sequence[MorRec],
        identity: Dict[Hashable, Hashable],
        table: Dict[Tuple[Hashable, Hashable], Hashable],
    ):
        self.objects = tuple(objects)
        self.mors = tuple(mors)
        self.identity = dict(identity)
        self.table = dict(table)
        self._by_name = {m.name: m for m in self.mors}
        if len(self._by_name) != len(self.mors):
            raise ValueError("duplicate morphism names")
        self._hom: Dict[Tuple[Hashable, Hashable], List[MorRec]] = {}
        for m in self.mors:
            self._hom.setdefault((m.dom, m.cod), []).append(m)

    def __eq__(self, other):
        return (
            isinstance(other, FinCategory)
            and self.objects == other.objects
            and self.mors == other.mors
            and self.identity == other.identity
            and self.table == other.table
        )

    def __repr__(self):
        return f"FinCategory({len(self.objects)} objects, {len(self.mors)} morphisms)"

    def mor(self, name) -> MorRec:
        return self._by_name[name]

    def hom(self, a, b) -> Tuple[MorRec, ...]:
        return tuple(self._hom.get((a, b), ()))

    def identity_mor(self, a) -> MorRec:
        return self._by_name[self.identity[a]]

    def compose(self, g: MorRec, f: MorRec) -> MorRec:
        if f.cod != g.dom:
            raise ValueError(f"not composable: cod {f.cod!r} vs dom {g.dom!r}")
        return self._by_name[self.table[(g.name, f.name)]]


@dataclass(frozen=True)
class PointedFinCategory:
    """A finite category with a chosen basepoint object."""

    cat: FinCategory
    basepoint: Hashable

    def __post_init__(self):
        if self.basepoint not in self.cat.objects:
            raise ValueError(f"basepoint {self.basepoint!r} is not an object")


def terminal_category() -> FinCategory:
    star = "*"
    return FinCategory([star], [MorRec(("id", star), star, star)], {star: ("id", star)}, {
        (("id", star), ("id", star)): ("id", star)
    })


def discrete_category(objects: Sequence[Hashable]) -> FinCategory:
    mors = [MorRec(("id", a), a, a) for a in objects]
    identity = {a: ("id", a) for a in objects}
    table = {((("id", a)), ("id", a)): ("id", a) for a in objects}
    return FinCategory(objects, mors, identity, table)


def product(cats: Sequence[FinCategory]) -> FinCategory:
    """Explicit product category; the empty product is the terminal category."""
    if not cats:
        return terminal_category()
    objects = [tuple(combo) for combo in itertools.product(*[c.objects for c in cats])]
    mors = [
        MorRec(tuple(m.name for m in combo), tuple(m.dom for m in combo), tuple(m.cod for m in combo))
        for combo in itertools.product(*[c.mors for c in cats])
    ]
    identity = {
        obj: tuple(c.identity[a] for c, a in zip(cats, obj)) for obj in objects
    }
    table = {}
    for g in mors:
        for f in mors:
            if f.cod == g.dom:
                table[(g.name, f.name)] = tuple(
                    c.table[(gn, fn)] for c, gn, fn in zip(cats, g.name, f.name)
                )
    return FinCategory(objects, mors, identity, table)


def verify_category(cat: FinCategory, bound: Optional[Iterable] = None) -> List[str]:
    """All category laws, optionally restricted to morphisms between in-bound objects.

    Returns a list of violations; empty means every law holds on the bound.
    """
    if bound is not None:
        keep = set(bound)
        objects = [a for a in cat.objects if a in keep]
        mors = [m for m in cat.mors if m.dom in keep and m.cod in keep]
        identity = {a: cat.identity[a] for a in objects if a in cat.identity}
        table = {
            k: v
            for k, v in cat.table.items()
            if k[0] in {m.name for m in mors} and k[1] in {m.name for m in mors}
        }
        cat = FinCategory(objects, mors, identity, table)
    failures: List[str] = []
    for a in cat.objects:
        if a not in cat.identity:
            failures.append(f"identity missing for object {a!r}")
            continue
        i = cat.identity_mor(a)
        if i.dom != a or i.cod != a:
            failures.append(f"identity of {a!r} has wrong endpoints")
    for m in cat.mors:
        if m.dom not in cat.objects or m.cod not in cat.objects:
            failures.append(f"morphism {m.name!r} has endpoints outside the object set")
    for g in cat.mors:
        for f in cat.mors:
            if f.cod == g.dom:
                if (g.name, f.name) not in cat.table:
                    failures.append(f"composite missing for {g.name!r} after {f.name!r}")
                    continue
                h = cat.compose(g, f)
                if h.dom != f.dom or h.cod != g.cod:
                    failures.append(f"composite {h.name!r} has wrong endpoints")
    if failures:
        # the law loops below assume well-formed tables
        return failures
    for m in cat.mors:
        left = cat.compose(cat.identity_mor(m.cod), m)
        right = cat.compose(m, cat.identity_mor(m.dom))
        if left != m:
            failures.append(f"left unit law fails at {m.name!r}")
        if right != m:
            failures.append(f"right unit law fails at {m.name!r}")
    for h in cat.mors:
        for g in cat.mors:
            if g.cod != h.dom:
                continue
            for f in cat.mors:
                if f.cod != g.dom:
                    continue
                if cat.compose(cat.compose(h, g), f) != cat.compose(h, cat.compose(g, f)):
                    failures.append(
                        f"associativity fails at ({h.name!r}, {g.name!r}, {f.name!r})"
                    )
    return failures


class FunctorData:
    """A functor presented by object and morphism assignments.

    Assignments may be dicts (serializable) or callables (procedural); both are
    used through ob_of / mor_of.
    """

    def __init__(self, dom, cod, ob, mor):
        self.dom = dom
        self.cod = cod
        self.ob = ob
        self.mor = mor

    def ob_of(self, a):
        return self.ob[a] if isinstance(self.ob, dict) else self.ob(a)

    def mor_of(self, f):
        if isinstance(self.mor, dict):
            name = self.mor[f.name]
            return self.cod.mor(name) if hasattr(self.cod, "mor") else name
        return self.mor(f)

    def __eq__(self, other):
        if not isinstance(other, FunctorData):
            return NotImplemented
        if isinstance(self.ob, dict) and isinstance(other.ob, dict):
            return self.ob == other.ob and self.mor == other.mor
        return self is other


def functor_equal(F: FunctorData, G: FunctorData, objects, mors) -> bool:
    """Pointwise equality on an explicit bound."""
    for a in objects:
        if F.ob_of(a) != G.ob_of(a):
            return False
    for f in mors:
        if F.mor_of(f) != G.mor_of(f):
            return False
    return True


def identity_functor(cat) -> FunctorData:
    return FunctorData(cat, cat, lambda a: a, lambda f: f)


def functor_compose(G: FunctorData, F: FunctorData) -> FunctorData:
    return FunctorData(F.dom, G.cod, lambda a: G.ob_of(F.ob_of(a)), lambda f: G.mor_of(F.mor_of(f)))


def verify_functor(
    F: FunctorData,
    objects: Optional[Iterable] = None,
    composable_pairs: Optional[Iterable] = None,
) -> List[str]:
    """Functor laws on a bound; defaults to the full tables of a FinCategory domain."""
    failures: List[str] = []
    dom = F.dom
    if objects is None:
        objects = dom.objects
    objects = list(objects)
    for a in objects:
        fa = F.ob_of(a)
        ia = F.mor_of(dom.identity_mor(a))
        want = F.cod.identity_mor(fa)
        if ia != want:
            failures.append(f"identity not preserved at {a!r}")
    if composable_pairs is None:
        mors = dom.mors
        composable_pairs = [(g, f) for g in mors for f in mors if f.cod == g.dom]
    for g, f in composable_pairs:
        lhs = F.mor_of(dom.compose(g, f))
        rhs = F.cod.compose(F.mor_of(g), F.mor_of(f))
        if lhs != rhs:
            failures.append(f"composition not preserved at ({g.name!r}, {f.name!r})")
    return failures


class NatTransData:
    """A natural transformation given by its components."""

    def __init__(self, F: FunctorData, G: FunctorData, component):
        self.F = F
        self.G = G
        self.component = component

    def at(self, a):
        c = self.component[a] if isinstance(self.component, dict) else self.component(a)
        if hasattr(self.G.cod, "mor") and not isinstance(c, MorRec) and not hasattr(c, "dom"):
            return self.G.cod.mor(c)
        return c

    def __eq__(self, other):
        if not isinstance(other, NatTransData):
            return NotImplemented
        if isinstance(self.component, dict) and isinstance(other.component, dict):
            return self.component == other.component
        return self is other


def nat_equal(s: NatTransData, t: NatTransData, objects) -> bool:
    return all(s.at(a) == t.at(a) for a in objects)


def verify_natural(
    alpha: NatTransData,
    objects: Optional[Iterable] = None,
    mors: Optional[Iterable] = None,
) -> List[str]:
    """Component endpoints plus the naturality square on a bound."""
    failures: List[str] = []
    F, G = alpha.F, alpha.G
    cod = F.cod
    if objects is None:
        objects = F.dom.objects
    for a in objects:
        c = alpha.at(a)
        if cod.dom(c) != F.ob_of(a) or cod.cod(c) != G.ob_of(a):
            failures.append(f"component at {a!r} has wrong endpoints")
    if failures:
        # squares below assume well-typed components
        return failures
    if mors is None:
        mors = F.dom.mors
    for f in mors:
        lhs = cod.compose(alpha.at(f.cod), F.mor_of(f))
        rhs = cod.compose(G.mor_of(f), alpha.at(f.dom))
        if lhs != rhs:
            failures.append(f"naturality fails at {getattr(f, 'name', f)!r}")
    return failures


def vertical_compose(beta: NatTransData, alpha: NatTransData) -> NatTransData:
    cod = alpha.F.cod
    return NatTransData(alpha.F, beta.G, lambda a: cod.compose(beta.at(a), alpha.at(a)))


class ModificationData:
    """A modification between Cat-valued natural transformations.

    phi and psi assign to each object a of the base a functor component; the
    modification assigns to each a a natural transformation phi_a -> psi_a.
    """

    def __init__(self, phi, psi, component):
        self.phi = phi
        self.psi = psi
        self.component = component

    def at(self, a) -> NatTransData:
        return self.component[a] if isinstance(self.component, dict) else self.component(a)


def verify_modification(
    M: ModificationData,
    base_mors: Iterable,
    fiber_objects,
    pushforward,
    target_pushforward,
) -> List[str]:
    """The modification square: pushing a component along f matches reindexing.

    For f: a -> b in the base, x in the fiber over a:
        target_pushforward(f)( M.at(a)_x ) == M.at(b)_{pushforward(f)(x)}.
    """
    failures: List[str] = []
    for f in base_mors:
        a, b = f.dom, f.cod
        for x in fiber_objects(a):
            lhs = target_pushforward(f)(M.at(a).at(x))
            rhs = M.at(b).at(pushforward(f)(x))
            if lhs != rhs:
                failures.append(f"modification square fails at {getattr(f, 'name', f)!r}, {x!r}")
    return failures
