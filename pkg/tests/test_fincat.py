"""Category substrate: tables, laws, functors, transformations, round-trips."""

import itertools

import pytest

from bipermkit import serialize
from bipermkit.fincat import (
    FinCategory,
    FunctorData,
    ModificationData,
    MorRec,
    NatTransData,
    PointedFinCategory,
    discrete_category,
    functor_compose,
    functor_equal,
    identity_functor,
    nat_equal,
    product,
    terminal_category,
    verify_category,
    verify_functor,
    verify_modification,
    verify_natural,
    vertical_compose,
)


def walking_arrow():
    """Two objects, one non-identity arrow."""
    mors = [MorRec("ida", "a", "a"), MorRec("idb", "b", "b"), MorRec("f", "a", "b")]
    identity = {"a": "ida", "b": "idb"}
    table = {
        ("ida", "ida"): "ida",
        ("idb", "idb"): "idb",
        ("f", "ida"): "f",
        ("idb", "f"): "f",
    }
    return FinCategory(["a", "b"], mors, identity, table)


def cyclic_group_cat(n):
    """One object, morphisms the integers mod n under addition."""
    obj = "*"
    mors = [MorRec(k, obj, obj) for k in range(n)]
    identity = {obj: 0}
    table = {(g, f): (g + f) % n for g in range(n) for f in range(n)}
    return FinCategory([obj], mors, identity, table)


class TestVerifyCategory:
    def test_terminal(self):
        assert verify_category(terminal_category()) == []

    def test_walking_arrow(self):
        assert verify_category(walking_arrow()) == []

    def test_cyclic(self):
        assert verify_category(cyclic_group_cat(4)) == []

    def test_discrete(self):
        assert verify_category(discrete_category(["x", "y", "z"])) == []

    def test_broken_unit_detected(self):
        cat = cyclic_group_cat(3)
        bad = FinCategory(cat.objects, cat.mors, {"*": 1}, cat.table)
        assert any("unit" in msg for msg in verify_category(bad))

    def test_broken_associativity_detected(self):
        cat = cyclic_group_cat(3)
        table = dict(cat.table)
        table[(1, 1)] = 0
        bad = FinCategory(cat.objects, cat.mors, cat.identity, table)
        msgs = verify_category(bad)
        assert any("associativity" in msg for msg in msgs)

    def test_missing_composite_detected(self):
        cat = walking_arrow()
        table = dict(cat.table)
        del table[("idb", "f")]
        bad = FinCategory(cat.objects, cat.mors, cat.identity, table)
        assert any("missing" in msg for msg in verify_category(bad))


class TestProduct:
    def test_empty_product_is_terminal(self):
        assert product([]) == terminal_category()

    def test_binary_product_counts(self):
        c = walking_arrow()
        d = cyclic_group_cat(2)
        p = product([c, d])
        assert len(p.objects) == 2
        assert len(p.mors) == 6
        assert verify_category(p) == []

    def test_product_composition_is_componentwise(self):
        c = cyclic_group_cat(3)
        p = product([c, c])
        g = p.mor((1, 2))
        f = p.mor((2, 2))
        assert p.compose(g, f).name == (0, 1)

    def test_triple_product_laws(self):
        c = cyclic_group_cat(2)
        p = product([c, c, c])
        assert verify_category(p) == []


class TestFunctor:
    def test_identity_functor(self):
        c = walking_arrow()
        assert verify_functor(identity_functor(c)) == []

    def test_group_hom_as_functor(self):
        c4 = cyclic_group_cat(4)
        c2 = cyclic_group_cat(2)
        F = FunctorData(c4, c2, {"*": "*"}, {k: k % 2 for k in range(4)})
        assert verify_functor(F) == []

    def test_non_functor_detected(self):
        c4 = cyclic_group_cat(4)
        c2 = cyclic_group_cat(2)
        # 1 -> 1, 2 -> 1 fails additivity
        F = FunctorData(c4, c2, {"*": "*"}, {0: 0, 1: 1, 2: 1, 3: 1})
        assert verify_functor(F) != []

    def test_functor_compose(self):
        c4 = cyclic_group_cat(4)
        c2 = cyclic_group_cat(2)
        F = FunctorData(c4, c2, {"*": "*"}, {k: k % 2 for k in range(4)})
        G = identity_functor(c2)
        H = functor_compose(G, F)
        assert verify_functor(H, objects=c4.objects) == []
        assert functor_equal(H, F, c4.objects, c4.mors)


class TestNatural:
    def test_conjugation_naturality(self):
        """In a one-object groupoid, components are group elements; naturality
        at component c demands c g = h c between the two functors."""
        c4 = cyclic_group_cat(4)
        F = identity_functor(c4)
        G = identity_functor(c4)
        for c in range(4):
            alpha = NatTransData(F, G, {"*": c})
            assert verify_natural(alpha) == []

    def test_nonnatural_detected(self):
        c = walking_arrow()
        F = identity_functor(c)
        # constant-at-b functor
        G = FunctorData(c, c, {"a": "b", "b": "b"}, {"ida": "idb", "idb": "idb", "f": "idb"})
        assert verify_functor(G) == []
        alpha = NatTransData(F, G, {"a": "f", "b": "idb"})
        assert verify_natural(alpha) == []
        # wrong component endpoints
        beta = NatTransData(F, G, {"a": "ida", "b": "idb"})
        assert verify_natural(beta) != []

    def test_vertical_compose(self):
        c4 = cyclic_group_cat(4)
        F = identity_functor(c4)
        a = NatTransData(F, F, {"*": 1})
        b = NatTransData(F, F, {"*": 2})
        v = vertical_compose(b, a)
        assert v.at("*").name == 3
        assert nat_equal(v, NatTransData(F, F, {"*": 3}), ["*"])


class TestModification:
    def test_square(self):
        """Fibers indexed by a walking arrow; components transported along f."""
        base = walking_arrow()
        fiber = cyclic_group_cat(2)
        F = identity_functor(fiber)

        def phi(a):
            return F

        def push(f):
            return lambda x: x

        def tpush(f):
            return lambda m: m

        M = ModificationData(phi, phi, lambda a: NatTransData(F, F, {"*": 1}))
        fails = verify_modification(
            M, [base.mor("f")], lambda a: ["*"], push, tpush
        )
        assert fails == []

    def test_square_violation(self):
        base = walking_arrow()
        fiber = cyclic_group_cat(2)
        F = identity_functor(fiber)
        comp = {
            "a": NatTransData(F, F, {"*": 0}),
            "b": NatTransData(F, F, {"*": 1}),
        }
        M = ModificationData(lambda a: F, lambda a: F, comp)
        fails = verify_modification(
            M, [base.mor("f")], lambda a: ["*"], lambda f: (lambda x: x), lambda f: (lambda m: m)
        )
        assert fails != []


class TestPointed:
    def test_basepoint_validated(self):
        c = walking_arrow()
        PointedFinCategory(c, "a")
        with pytest.raises(ValueError):
            PointedFinCategory(c, "zzz")


class TestSerialize:
    def test_emit_parse_roundtrip(self):
        tree = {"b": [1, 2, {"x": None}], "a": "s"}
        assert serialize.parse(serialize.emit(tree)) == tree

    def test_emit_deterministic(self):
        t1 = {"b": 1, "a": 2}
        t2 = {"a": 2, "b": 1}
        assert serialize.emit(t1) == serialize.emit(t2)

    def test_perm_roundtrip(self):
        from bipermkit.permalg import Permutation

        p = Permutation((2, 3, 1))
        assert serialize.perm_from_tree(serialize.perm_to_tree(p)) == p

    def test_fincat_roundtrip(self):
        for cat in [terminal_category(), walking_arrow(), cyclic_group_cat(3)]:
            tree = cat and serialize.fincat_to_tree(cat)
            back = serialize.fincat_from_tree(serialize.parse(serialize.emit(tree)))
            assert back == cat

    def test_product_roundtrip_tuple_names(self):
        p = product([walking_arrow(), cyclic_group_cat(2)])
        tree = serialize.fincat_to_tree(p)
        back = serialize.fincat_from_tree(serialize.parse(serialize.emit(tree)))
        assert back == p

    def test_pointed_roundtrip(self):
        p = PointedFinCategory(walking_arrow(), "a")
        back = serialize.pointed_from_tree(serialize.pointed_to_tree(p))
        assert back == p

    def test_functor_roundtrip(self):
        c4 = cyclic_group_cat(4)
        c2 = cyclic_group_cat(2)
        F = FunctorData(c4, c2, {"*": "*"}, {k: k % 2 for k in range(4)})
        tree = serialize.functor_to_tree(F)
        back = serialize.functor_from_tree(serialize.parse(serialize.emit(tree)), c4, c2)
        assert functor_equal(back, F, c4.objects, c4.mors)

    def test_nat_roundtrip(self):
        c4 = cyclic_group_cat(4)
        F = identity_functor(c4)
        a = NatTransData(F, F, {"*": 3})
        tree = serialize.nat_to_tree(a)
        back = serialize.nat_from_tree(serialize.parse(serialize.emit(tree)), F, F)
        assert back.at("*") == a.at("*")
