"""Deterministic JSON serialization for the tabulated structures.

Trees are plain JSON values (dicts, lists, strings, ints, bools, null).  Names
of objects and morphisms may be nested tuples of strings and ints; they are
encoded as JSON arrays and decoded back to tuples, so round-tripping is exact
for tuple-named data.  Emission is canonical: sorted keys, two-space indent,
trailing newline.
"""

from __future__ import annotations

import json
from typing import Any

from .biperm import INSTANCE_BUILDERS, FnMor
from .dcat import AdditiveSMFunctor, ComponentFunctor
from .fincat import FinCategory, FunctorData, MorRec, NatTransData, PointedFinCategory
from .permalg import Permutation


def emit(tree: Any) -> str:
    return json.dumps(tree, sort_keys=True, indent=2) + "\n"


def parse(text: str) -> Any:
    return json.loads(text)


def encode_name(x: Any) -> Any:
    """Tuples become arrays, recursively; scalars pass through."""
    if isinstance(x, tuple):
        return [encode_name(v) for v in x]
    if isinstance(x, (str, int, bool)) or x is None:
        return x
    raise TypeError(f"name {x!r} is not serializable")


def decode_name(x: Any) -> Any:
    if isinstance(x, list):
        return tuple(decode_name(v) for v in x)
    return x


def perm_to_tree(p: Permutation) -> Any:
    return {"images": list(p.images)}


def perm_from_tree(tree: Any) -> Permutation:
    return Permutation(tuple(tree["images"]))


def fincat_to_tree(cat: FinCategory) -> Any:
    return {
        "objects": [encode_name(a) for a in cat.objects],
        "mors": [
            [encode_name(m.name), encode_name(m.dom), encode_name(m.cod)] for m in cat.mors
        ],
        "identity": [
            [encode_name(a), encode_name(cat.identity[a])] for a in cat.objects
        ],
        "table": sorted(
            [
                [encode_name(g), encode_name(f), encode_name(h)]
                for (g, f), h in cat.table.items()
            ]
        ),
    }


def fincat_from_tree(tree: Any) -> FinCategory:
    objects = [decode_name(a) for a in tree["objects"]]
    mors = [
        MorRec(decode_name(n), decode_name(d), decode_name(c)) for n, d, c in tree["mors"]
    ]
    identity = {decode_name(a): decode_name(n) for a, n in tree["identity"]}
    table = {
        (decode_name(g), decode_name(f)): decode_name(h) for g, f, h in tree["table"]
    }
    return FinCategory(objects, mors, identity, table)


def pointed_to_tree(p: PointedFinCategory) -> Any:
    return {"cat": fincat_to_tree(p.cat), "basepoint": encode_name(p.basepoint)}


def pointed_from_tree(tree: Any) -> PointedFinCategory:
    return PointedFinCategory(fincat_from_tree(tree["cat"]), decode_name(tree["basepoint"]))


def functor_to_tree(F: FunctorData) -> Any:
    if not isinstance(F.ob, dict) or not isinstance(F.mor, dict):
        raise TypeError("only table-backed functors serialize")
    return {
        "ob": sorted([[encode_name(a), encode_name(b)] for a, b in F.ob.items()]),
        "mor": sorted([[encode_name(f), encode_name(g)] for f, g in F.mor.items()]),
    }


def functor_from_tree(tree: Any, dom, cod) -> FunctorData:
    ob = {decode_name(a): decode_name(b) for a, b in tree["ob"]}
    mor = {decode_name(f): decode_name(g) for f, g in tree["mor"]}
    return FunctorData(dom, cod, ob, mor)


def nat_to_tree(t: NatTransData) -> Any:
    if not isinstance(t.component, dict):
        raise TypeError("only table-backed transformations serialize")
    comp = {}
    for a, c in t.component.items():
        name = c.name if isinstance(c, MorRec) else c
        comp[json.dumps(encode_name(a))] = encode_name(name)
    return {"component": [[k, v] for k, v in sorted(comp.items())]}


def nat_from_tree(tree: Any, F: FunctorData, G: FunctorData) -> NatTransData:
    component = {
        decode_name(json.loads(k)): decode_name(v) for k, v in tree["component"]
    }
    return NatTransData(F, G, component)


def _rows(rows) -> list:
    return sorted(rows, key=lambda r: json.dumps(r))


def smf_to_tree(X: AdditiveSMFunctor) -> Any:
    """Tabulate an indexed category: base instance by registry name, bound,
    value category and pushforward tables, unit object, and the pairing
    tables for pairs whose sum stays inside the bound.  Procedural
    suppliers are forced and frozen in the process."""
    D = X.D
    bound = list(X.bound)
    push = []
    for a in bound:
        for b in bound:
            for f in D.hom(a, b):
                F = X.fmap(f)
                ca = X.cat(a)
                push.append([
                    [encode_name(a), encode_name(b), list(f.images)],
                    {
                        "ob": _rows([[encode_name(x), encode_name(F.ob_of(x))] for x in ca.objects]),
                        "mor": _rows(
                            [[encode_name(m.name), encode_name(F.mor_of(m).name)] for m in ca.mors]
                        ),
                    },
                ])
    pair = []
    for a in bound:
        for b in bound:
            if not X.in_bound(D.oplus(a, b)):
                continue
            P = X.sum2(a, b)
            ca, cb = X.cat(a), X.cat(b)
            pair.append([
                [encode_name(a), encode_name(b)],
                {
                    "ob": _rows([
                        [[encode_name(x), encode_name(y)], encode_name(P.ob_of((x, y)))]
                        for x in ca.objects
                        for y in cb.objects
                    ]),
                    "mor": _rows([
                        [
                            [encode_name(p.name), encode_name(q.name)],
                            encode_name(P.mor_of((p, q)).name),
                        ]
                        for p in ca.mors
                        for q in cb.mors
                    ]),
                },
            ])
    return {
        "instance": D.name,
        "name": X.name,
        "bound": [encode_name(a) for a in bound],
        "unit": encode_name(X.unit_obj),
        "cats": [[encode_name(a), fincat_to_tree(X.cat(a))] for a in bound],
        "push": _rows(push),
        "pair": _rows(pair),
    }


def smf_from_tree(tree: Any) -> AdditiveSMFunctor:
    D = INSTANCE_BUILDERS[tree["instance"]]()
    cats = {decode_name(a): fincat_from_tree(t) for a, t in tree["cats"]}
    push = {}
    for (a, b, images), table in tree["push"]:
        f = FnMor(decode_name(a), decode_name(b), tuple(images))
        push[f] = table
    pairs = {
        (decode_name(a), decode_name(b)): table for (a, b), table in tree["pair"]
    }

    def cat(a):
        return cats.get(a)

    def fmap(f):
        table = push.get(f)
        if table is None:
            return None
        ob = {decode_name(x): decode_name(y) for x, y in table["ob"]}
        mor = {decode_name(m): decode_name(v) for m, v in table["mor"]}
        return FunctorData(cats[f.dom], cats[f.cod], ob, mor)

    def sum2(a, b):
        table = pairs.get((a, b))
        if table is None:
            return None
        ob = {decode_name(k): decode_name(v) for k, v in table["ob"]}
        mor = {decode_name(k): decode_name(v) for k, v in table["mor"]}
        return ComponentFunctor(ob, mor, cod=cats[D.oplus(a, b)])

    return AdditiveSMFunctor(
        D,
        [decode_name(a) for a in tree["bound"]],
        cat,
        fmap,
        unit_obj=decode_name(tree["unit"]),
        sum2=sum2,
        name=tree.get("name", "X"),
    )
