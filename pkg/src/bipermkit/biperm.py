"""Tight bipermutative categories: four concrete instances and their checkers.

All four instances are locally finite categories whose morphisms are functions
on finite index sets, recorded as FnMor(dom, cod, images):

  finsk    objects n in N, elements {1..n}, all functions
  fset     same objects, morphisms only the permutations
  fskel    pointed objects {0..n} with basepoint 0, pointed functions;
           images lists the values on 1..n, with 0 allowed
  mandellA objects finite sequences of positive integers, morphisms total
           functions on the flattened index sets such that the preimage of
           each target block is empty or inside a single source block

The additive structure is sum/concatenation with block-swap braiding; the
multiplicative structure pairs indices with the second coordinate compared
first, so that (i, j) in a product of sizes (m, n) flattens to i + (j-1)m, and
the braiding is the matrix-transpose permutation.  Both distributivity maps
that happen to be identities are identities here: x(y+z) = xy + xz holds on
the nose for the chosen flattening, while (x+y)z -> xz + yz needs the tetris
rearrangement.  The invertible factorization maps partial_l / partial_r are
the inverses of the distributivity directions delta_r / delta_l.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import reduce
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .fincat import LocallyFiniteCategory
from .permalg import (
    Permutation,
    block_sum,
    block_swap,
    compose as pcompose,
    induced_block_perm,
    tetris,
    transpose_perm,
)
from .reporting import LawReport, sample, stable_rng


@dataclass(frozen=True)
class FnMor:
    """A morphism given by its value tuple on the flattened element set."""

    dom: object
    cod: object
    images: Tuple[int, ...]

    def __repr__(self):
        return f"FnMor({self.dom!r}->{self.cod!r}, {self.images!r})"


@dataclass(frozen=True)
class PermutativeStructure:
    """One symmetric strict monoidal layer of an instance."""

    base: object
    unit: object
    tensor: Callable
    tensor_mor: Callable
    braiding: Callable


def mor_to_tree(f: FnMor):
    from .serialize import encode_name

    return {
        "dom": encode_name(f.dom),
        "cod": encode_name(f.cod),
        "images": list(f.images),
    }


def mor_from_tree(tree) -> FnMor:
    from .serialize import decode_name

    return FnMor(decode_name(tree["dom"]), decode_name(tree["cod"]), tuple(tree["images"]))


class FnInstance(LocallyFiniteCategory):
    """Shared machinery for the three numeric instances."""

    name = "?"
    pointed = False

    # ---- category operations ----

    def size(self, a) -> int:
        return a

    def validate_mor(self, f: FnMor) -> None:
        if len(f.images) != self.size(f.dom):
            raise ValueError("image tuple length does not match the domain size")
        lo = 0 if self.pointed else 1
        for y in f.images:
            if not (lo <= y <= self.size(f.cod)):
                raise ValueError(f"image value {y} outside the codomain")

    def _cached(self, key, thunk) -> FnMor:
        v = self._memo.get(key)
        if v is None:
            v = thunk()
            self._memo[key] = v
        return v

    def identity_mor(self, a) -> FnMor:
        return self._cached(("id", a), lambda: FnMor(a, a, tuple(range(1, self.size(a) + 1))))

    def compose(self, g: FnMor, f: FnMor) -> FnMor:
        if f.cod != g.dom:
            raise ValueError(f"not composable: {f.cod!r} vs {g.dom!r}")
        if self.pointed:
            images = tuple(0 if y == 0 else g.images[y - 1] for y in f.images)
        else:
            images = tuple(g.images[y - 1] for y in f.images)
        return FnMor(f.dom, g.cod, images)

    def invert(self, f: FnMor) -> FnMor:
        n = self.size(f.dom)
        if self.size(f.cod) != n or sorted(f.images) != list(range(1, n + 1)):
            raise ValueError("not invertible")
        inv = [0] * n
        for i, y in enumerate(f.images, 1):
            inv[y - 1] = i
        return FnMor(f.cod, f.dom, tuple(inv))

    def mor_from_perm(self, a, b, p: Permutation) -> FnMor:
        return FnMor(a, b, p.images)

    def hom(self, a, b) -> Tuple[FnMor, ...]:
        key = (a, b)
        cached = self._hom_cache.get(key)
        if cached is None:
            cached = tuple(self._hom_enum(a, b))
            self._hom_cache[key] = cached
        return cached

    def __init__(self):
        self._hom_cache: Dict = {}
        self._memo: Dict = {}

    def _hom_enum(self, a, b):
        lo = 0 if self.pointed else 1
        values = range(lo, self.size(b) + 1)
        for images in itertools.product(values, repeat=self.size(a)):
            yield FnMor(a, b, images)

    def hom_size(self, a, b) -> int:
        base = self.size(b) + (1 if self.pointed else 0)
        return base ** self.size(a)

    # ---- additive structure ----

    def zero(self):
        return 0

    def oplus(self, a, b):
        return a + b

    def oplus_mor(self, f: FnMor, g: FnMor) -> FnMor:
        n = self.size(f.cod)
        left = f.images
        if self.pointed:
            right = tuple(0 if y == 0 else n + y for y in g.images)
        else:
            right = tuple(n + y for y in g.images)
        return FnMor(self.oplus(f.dom, g.dom), self.oplus(f.cod, g.cod), left + right)

    def beta_plus(self, a, b) -> FnMor:
        return self._cached(
            ("bp", a, b),
            lambda: FnMor(
                self.oplus(a, b), self.oplus(b, a), block_swap(self.size(a), self.size(b)).images
            ),
        )

    # ---- multiplicative structure ----

    def one(self):
        return 1

    def otimes(self, a, b):
        return a * b

    def otimes_mor(self, f: FnMor, g: FnMor) -> FnMor:
        m, mp = self.size(f.dom), self.size(g.dom)
        n = self.size(f.cod)
        images = []
        for j in range(mp):
            gj = g.images[j]
            for i in range(m):
                fi = f.images[i]
                if self.pointed and (fi == 0 or gj == 0):
                    images.append(0)
                else:
                    images.append(fi + (gj - 1) * n)
        return FnMor(self.otimes(f.dom, g.dom), self.otimes(f.cod, g.cod), tuple(images))

    def beta_times(self, a, b) -> FnMor:
        return self._cached(
            ("bt", a, b),
            lambda: FnMor(
                self.otimes(a, b), self.otimes(b, a), transpose_perm(self.size(a), self.size(b)).images
            ),
        )

    # ---- factorization structure ----

    def delta_l(self, a, b, c) -> FnMor:
        """x(y+z) = xy + xz on the nose: the identity permutation."""

        def build():
            src = self.otimes(a, self.oplus(b, c))
            tgt = self.oplus(self.otimes(a, b), self.otimes(a, c))
            return FnMor(src, tgt, tuple(range(1, self.size(src) + 1)))

        return self._cached(("dl", a, b, c), build)

    def delta_r(self, a, b, c) -> FnMor:
        def build():
            src = self.otimes(self.oplus(a, b), c)
            tgt = self.oplus(self.otimes(a, c), self.otimes(b, c))
            return FnMor(src, tgt, tetris(self.size(a), self.size(b), self.size(c)).images)

        return self._cached(("dr", a, b, c), build)

    def partial_l(self, a, b, c) -> FnMor:
        return self._cached(("pl", a, b, c), lambda: self.invert(self.delta_r(a, b, c)))

    def partial_r(self, a, b, c) -> FnMor:
        return self._cached(("pr", a, b, c), lambda: self.invert(self.delta_l(a, b, c)))

    # ---- bounded enumeration ----

    def objects_upto(self, bound) -> List:
        return list(range(bound + 1))

    @property
    def additive(self) -> PermutativeStructure:
        return PermutativeStructure(self, self.zero(), self.oplus, self.oplus_mor, self.beta_plus)

    @property
    def multiplicative(self) -> PermutativeStructure:
        return PermutativeStructure(self, self.one(), self.otimes, self.otimes_mor, self.beta_times)


class Finsk(FnInstance):
    name = "finsk"


class Fset(Finsk):
    """Permutations only; everything else restricts from the ambient functions."""

    name = "fset"

    def _hom_enum(self, a, b):
        if a != b:
            return
        for images in itertools.permutations(range(1, a + 1)):
            yield FnMor(a, b, images)

    def hom_size(self, a, b) -> int:
        if a != b:
            return 0
        out = 1
        for k in range(2, a + 1):
            out *= k
        return out


class Fskel(FnInstance):
    name = "fskel"
    pointed = True


def _offsets(m: Sequence[int]) -> List[int]:
    out = [0]
    for k in m:
        out.append(out[-1] + k)
    return out


def _block_table(m: Sequence[int]) -> List[Tuple[int, int]]:
    """Element (1-based, flattened) -> (block index, local index), both 1-based."""
    out = []
    for i, k in enumerate(m, 1):
        for x in range(1, k + 1):
            out.append((i, x))
    return out


class MandellA(LocallyFiniteCategory):
    """Sequences of positive integers; block-respecting functions."""

    name = "mandellA"
    pointed = False

    def __init__(self):
        self._hom_cache: Dict = {}
        self._memo: Dict = {}

    def _cached(self, key, thunk):
        v = self._memo.get(key)
        if v is None:
            v = thunk()
            self._memo[key] = v
        return v

    # ---- category operations ----

    def size(self, a) -> int:
        return sum(a)

    def valid_images(self, dom, cod, images) -> bool:
        if len(images) != self.size(dom):
            return False
        tgt_size = self.size(cod)
        if any(not (1 <= y <= tgt_size) for y in images):
            return False
        src_blocks = _block_table(dom)
        tgt_blocks = _block_table(cod)
        owner: Dict[int, int] = {}
        for x, y in enumerate(images, 1):
            i = src_blocks[x - 1][0]
            j = tgt_blocks[y - 1][0]
            if owner.setdefault(j, i) != i:
                return False
        return True

    def validate_mor(self, f: FnMor) -> None:
        if not self.valid_images(f.dom, f.cod, f.images):
            raise ValueError(
                "not a morphism: a target block receives from two source blocks"
                " or the images are out of range"
            )

    def make_mor(self, dom, cod, images) -> FnMor:
        f = FnMor(tuple(dom), tuple(cod), tuple(images))
        self.validate_mor(f)
        return f

    def identity_mor(self, a) -> FnMor:
        return self._cached(("id", a), lambda: FnMor(a, a, tuple(range(1, self.size(a) + 1))))

    def compose(self, g: FnMor, f: FnMor) -> FnMor:
        if f.cod != g.dom:
            raise ValueError(f"not composable: {f.cod!r} vs {g.dom!r}")
        return FnMor(f.dom, g.cod, tuple(g.images[y - 1] for y in f.images))

    def invert(self, f: FnMor) -> FnMor:
        n = self.size(f.dom)
        if self.size(f.cod) != n or sorted(f.images) != list(range(1, n + 1)):
            raise ValueError("not invertible")
        inv = [0] * n
        for i, y in enumerate(f.images, 1):
            inv[y - 1] = i
        return FnMor(f.cod, f.dom, tuple(inv))

    def mor_from_perm(self, a, b, p: Permutation) -> FnMor:
        f = FnMor(a, b, p.images)
        self.validate_mor(f)
        return f

    def hom(self, a, b) -> Tuple[FnMor, ...]:
        key = (a, b)
        cached = self._hom_cache.get(key)
        if cached is None:
            m, n = self.size(a), self.size(b)
            if n == 0:
                cached = (FnMor(a, b, ()),) if m == 0 else ()
            else:
                cached = tuple(
                    FnMor(a, b, images)
                    for images in itertools.product(range(1, n + 1), repeat=m)
                    if self.valid_images(a, b, images)
                )
            self._hom_cache[key] = cached
        return cached

    def hom_size(self, a, b) -> int:
        return len(self.hom(a, b))

    # ---- additive structure ----

    def zero(self):
        return ()

    def oplus(self, a, b):
        return tuple(a) + tuple(b)

    def oplus_mor(self, f: FnMor, g: FnMor) -> FnMor:
        shift = self.size(f.cod)
        images = f.images + tuple(shift + y for y in g.images)
        return FnMor(self.oplus(f.dom, g.dom), self.oplus(f.cod, g.cod), images)

    def beta_plus(self, a, b) -> FnMor:
        def build():
            p, q = len(a), len(b)
            perm = induced_block_perm(block_swap(p, q), tuple(a) + tuple(b))
            return FnMor(self.oplus(a, b), self.oplus(b, a), perm.images)

        return self._cached(("bp", a, b), build)

    # ---- multiplicative structure ----

    def one(self):
        return (1,)

    def otimes(self, a, b):
        key = ("ot", a, b)
        v = self._memo.get(key)
        if v is None:
            v = tuple(a[i] * b[j] for j in range(len(b)) for i in range(len(a)))
            self._memo[key] = v
        return v

    def otimes_mor(self, f: FnMor, g: FnMor) -> FnMor:
        m, mp = f.dom, g.dom
        n, np_ = f.cod, g.cod
        p, pn = len(m), len(n)
        m_offs, mp_offs = _offsets(m), _offsets(mp)
        n_blocks, np_blocks = _block_table(n), _block_table(np_)
        src = self.otimes(m, mp)
        tgt = self.otimes(n, np_)
        tgt_offs = _offsets(tgt)
        images = []
        for t in range(len(src)):
            i, j = t % p, t // p
            mi = m[i]
            for e in range(src[t]):
                x, y = e % mi, e // mi
                fx = f.images[m_offs[i] + x]
                gy = g.images[mp_offs[j] + y]
                ib, xl = n_blocks[fx - 1]
                jb, yl = np_blocks[gy - 1]
                tprime = (jb - 1) * pn + (ib - 1)
                eprime = (xl - 1) + (yl - 1) * n[ib - 1]
                images.append(tgt_offs[tprime] + eprime + 1)
        return FnMor(src, tgt, tuple(images))

    def beta_times(self, a, b) -> FnMor:
        def build():
            p, q = len(a), len(b)
            src = self.otimes(a, b)
            reloc = induced_block_perm(transpose_perm(p, q), src)
            fixes = []
            for t in range(p * q):
                i, j = t // q, t % q
                fixes.append(transpose_perm(a[i], b[j]))
            total = pcompose(block_sum(fixes), reloc)
            return FnMor(src, self.otimes(b, a), total.images)

        return self._cached(("bt", a, b), build)

    # ---- factorization structure ----

    def delta_l(self, a, b, c) -> FnMor:
        def build():
            src = self.otimes(a, self.oplus(b, c))
            tgt = self.oplus(self.otimes(a, b), self.otimes(a, c))
            return FnMor(src, tgt, tuple(range(1, self.size(src) + 1)))

        return self._cached(("dl", a, b, c), build)

    def delta_r(self, a, b, c) -> FnMor:
        def build():
            p, r, q = len(a), len(b), len(c)
            src = self.otimes(self.oplus(a, b), c)
            tgt = self.oplus(self.otimes(a, c), self.otimes(b, c))
            perm = induced_block_perm(tetris(p, r, q), src)
            return FnMor(src, tgt, perm.images)

        return self._cached(("dr", a, b, c), build)

    def partial_l(self, a, b, c) -> FnMor:
        return self._cached(("pl", a, b, c), lambda: self.invert(self.delta_r(a, b, c)))

    def partial_r(self, a, b, c) -> FnMor:
        return self._cached(("pr", a, b, c), lambda: self.invert(self.delta_l(a, b, c)))

    # ---- bounded enumeration ----

    def objects_upto(self, bound) -> List:
        """Sequences of length <= bound[0] with entries <= bound[1]."""
        length, entry = bound
        out: List[Tuple[int, ...]] = []
        for k in range(length + 1):
            out.extend(itertools.product(range(1, entry + 1), repeat=k))
        return out

    @property
    def additive(self) -> PermutativeStructure:
        return PermutativeStructure(self, self.zero(), self.oplus, self.oplus_mor, self.beta_plus)

    @property
    def multiplicative(self) -> PermutativeStructure:
        return PermutativeStructure(self, self.one(), self.otimes, self.otimes_mor, self.beta_times)


_INSTANCES: Dict[str, object] = {}


def instance_finsk() -> Finsk:
    return _INSTANCES.setdefault("finsk", Finsk())


def instance_fset() -> Fset:
    return _INSTANCES.setdefault("fset", Fset())


def instance_fskel() -> Fskel:
    return _INSTANCES.setdefault("fskel", Fskel())


def instance_mandellA() -> MandellA:
    return _INSTANCES.setdefault("mandellA", MandellA())


INSTANCE_BUILDERS = {
    "finsk": instance_finsk,
    "fset": instance_fset,
    "fskel": instance_fskel,
    "mandellA": instance_mandellA,
}

DEFAULT_NUMERIC_BOUND = 4
DEFAULT_SEQ_BOUND = (2, 3)


def default_bound(C) -> object:
    return DEFAULT_SEQ_BOUND if isinstance(C, MandellA) else DEFAULT_NUMERIC_BOUND


def override(base, **overrides):
    """A delegate with selected operations replaced; for exercising checkers.

    Each override is a function taking the base instance first:
    override(C, beta_times=lambda base, a, b: base.identity_mor(base.otimes(a, b))).
    """

    class _Override:
        def __init__(self):
            self.name = base.name + "-override"

        def __getattr__(self, k):
            if k in overrides:
                fn = overrides[k]
                return lambda *args: fn(base, *args)
            return getattr(base, k)

        @property
        def additive(self):
            return PermutativeStructure(self, self.zero(), self.oplus, self.oplus_mor, self.beta_plus)

        @property
        def multiplicative(self):
            return PermutativeStructure(self, self.one(), self.otimes, self.otimes_mor, self.beta_times)

    return _Override()


# ---------------------------------------------------------------------------
# morphism sampling


def sample_hom(C, a, b, rng, cap: int = 6) -> List[FnMor]:
    """A deterministic selection from hom(a, b), the whole set when small."""
    m, n = C.size(a), C.size(b)
    if isinstance(C, MandellA):
        if n == 0 or n ** m <= 4096:
            return sample(C.hom(a, b), cap, rng)
        return _sample_hom_A(C, a, b, rng, cap)
    if C.hom_size(a, b) > 4096:
        return _sample_hom_fn(C, a, b, rng, cap)
    return sample(C.hom(a, b), cap, rng)


def _sample_hom_fn(C, a, b, rng, cap) -> List[FnMor]:
    m, n = C.size(a), C.size(b)
    lo = 0 if C.pointed else 1
    seen = set()
    for _ in range(cap * 4):
        images = tuple(rng.randint(lo, n) for _ in range(m))
        seen.add(images)
        if len(seen) >= cap:
            break
    return [FnMor(a, b, images) for images in sorted(seen)]


def _sample_hom_A(C: MandellA, a, b, rng, cap) -> List[FnMor]:
    """Sample by choosing a block ownership, then element values inside it."""
    m, n = C.size(a), C.size(b)
    if n == 0:
        return [FnMor(a, b, ())] if m == 0 else []
    src_blocks = _block_table(a)
    tgt_offs = _offsets(b)
    seen = set()
    for _ in range(cap * 8):
        owner = [rng.randrange(0, len(a) + 1) for _ in b]  # 0 = unowned
        allowed: Dict[int, List[int]] = {i: [] for i in range(1, len(a) + 1)}
        for j, i in enumerate(owner, 1):
            if i:
                allowed[i].extend(range(tgt_offs[j - 1] + 1, tgt_offs[j] + 1))
        if any(a[i - 1] > 0 and not allowed[i] for i in range(1, len(a) + 1)):
            continue
        images = tuple(rng.choice(allowed[src_blocks[x - 1][0]]) for x in range(1, m + 1))
        seen.add(images)
        if len(seen) >= cap:
            break
    return [FnMor(a, b, images) for images in sorted(seen)]


def _mor_pairs(C, objects, unit: str, count: int) -> List[Tuple[FnMor, FnMor]]:
    """Deterministic pairs of independently sampled morphisms."""
    pairs = []
    singles = []
    for a in objects:
        for b in objects:
            singles.extend(sample_hom(C, a, b, stable_rng(unit, f"{a}-{b}"), 2))
    r = stable_rng(unit, "pairs")
    if not singles:
        return []
    for _ in range(count):
        pairs.append((r.choice(singles), r.choice(singles)))
    return pairs


def _composable_after(C, f: FnMor, objects, unit: str) -> Optional[FnMor]:
    cands = []
    for c in objects:
        cands.extend(sample_hom(C, f.cod, c, stable_rng(unit, f"{f.cod}-{c}"), 2))
    if not cands:
        return None
    return stable_rng(unit, repr(f.images)).choice(cands)


# ---------------------------------------------------------------------------
# checkers


def check_permutative(P: PermutativeStructure, objects, seed=0, prefix: str = "", mor_cap: int = 40) -> LawReport:
    """Strict symmetric monoidal laws: exhaustive on objects, sampled on morphisms."""
    C = P.base
    e = P.unit
    tens, tmor, beta = P.tensor, P.tensor_mor, P.braiding
    rep = LawReport()
    p = prefix

    for law in (
        "assoc-objects",
        "unit-objects",
        "tensor-identities",
        "tensor-composition",
        "assoc-morphisms",
        "unit-morphisms",
        "braiding-endpoints",
        "braiding-naturality",
        "symmetry",
        "hexagon",
        "unit-braiding",
    ):
        rep.law(p + law)

    for a in objects:
        rep.check(p + "unit-objects", tens(e, a) == a and tens(a, e) == a, f"a={a!r}")
        ia = C.identity_mor(a)
        lhs = tmor(C.identity_mor(e), ia)
        rhs = tmor(ia, C.identity_mor(e))
        rep.check(p + "unit-morphisms", lhs == ia and rhs == ia, f"a={a!r}")
        b_ae = beta(a, e)
        b_ea = beta(e, a)
        rep.check(
            p + "unit-braiding",
            b_ae == ia and b_ea == ia,
            f"a={a!r}: {b_ae!r}, {b_ea!r}",
        )

    for a in objects:
        for b in objects:
            iab = C.identity_mor(tens(a, b))
            rep.check(
                p + "tensor-identities",
                tmor(C.identity_mor(a), C.identity_mor(b)) == iab,
                f"a={a!r} b={b!r}",
            )
            bab = beta(a, b)
            ok = C.dom(bab) == tens(a, b) and C.cod(bab) == tens(b, a)
            rep.check(p + "braiding-endpoints", ok, f"a={a!r} b={b!r}")
            back = C.compose(beta(b, a), bab)
            rep.check(p + "symmetry", back == iab, f"a={a!r} b={b!r}")

    for a in objects:
        for b in objects:
            for c in objects:
                rep.check(
                    p + "assoc-objects",
                    tens(tens(a, b), c) == tens(a, tens(b, c)),
                    f"a={a!r} b={b!r} c={c!r}",
                )
                lhs = beta(a, tens(b, c))
                rhs = C.compose(
                    tmor(C.identity_mor(b), beta(a, c)),
                    tmor(beta(a, b), C.identity_mor(c)),
                )
                rep.check(p + "hexagon", lhs == rhs, f"a={a!r} b={b!r} c={c!r}")

    # sampled morphism-level laws
    unit = f"{seed}:{getattr(C, 'name', '?')}:{p}perm"
    pairs = _mor_pairs(C, objects, unit, mor_cap)
    ie = C.identity_mor(e)
    for f, g in pairs:
        rep.check(
            p + "unit-morphisms",
            tmor(ie, f) == f and tmor(f, ie) == f,
            f"f={f!r}",
        )
        lhs = beta(f.cod, g.cod)
        nat_l = C.compose(lhs, tmor(f, g))
        nat_r = C.compose(tmor(g, f), beta(f.dom, g.dom))
        rep.check(
            p + "braiding-naturality",
            nat_l == nat_r,
            f"f={f!r} g={g!r}",
        )
        f2 = _composable_after(C, f, objects, unit + ":after-f")
        g2 = _composable_after(C, g, objects, unit + ":after-g")
        if f2 is not None and g2 is not None:
            lhs = tmor(C.compose(f2, f), C.compose(g2, g))
            rhs = C.compose(tmor(f2, g2), tmor(f, g))
            rep.check(p + "tensor-composition", lhs == rhs, f"f={f!r} g={g!r}")
    triples = [(f, g, h) for (f, g), (h, _) in zip(pairs, reversed(pairs))]
    for f, g, h in triples[: mor_cap // 2]:
        lhs = tmor(tmor(f, g), h)
        rhs = tmor(f, tmor(g, h))
        rep.check(p + "assoc-morphisms", lhs == rhs, f"f={f!r} g={g!r} h={h!r}")
    return rep


def check_bipermutative(C, bound=None, seed=0, mor_cap: int = 40) -> LawReport:
    """Every axiom of a tight bipermutative category on in-bound objects.

    Object-indexed axioms are exhaustive over the bound; morphism-indexed ones
    use deterministic seeded samples.
    """
    if bound is None:
        bound = default_bound(C)
    objects = C.objects_upto(bound)
    rep = LawReport(title=f"bipermutative:{getattr(C, 'name', '?')}")
    rep.merge(check_permutative(C.additive, objects, seed, "add-", mor_cap))
    rep.merge(check_permutative(C.multiplicative, objects, seed, "mult-", mor_cap))

    zero, one = C.zero(), C.one()

    for law in (
        "mult-zero-objects",
        "mult-zero-morphisms",
        "zero-slot-factorization",
        "unit-slot-factorization",
        "factorization-naturality-left",
        "factorization-naturality-right",
        "factorization-symmetry-left",
        "factorization-symmetry-right",
        "factorization-internal-left",
        "factorization-internal-right",
        "factorization-external-i",
        "factorization-external-ii",
        "factorization-external-iii",
        "factorization-2x2",
        "mult-braiding-zero",
        "mult-braiding-factorization",
        "tightness",
    ):
        rep.law(law)

    id0 = C.identity_mor(zero)

    for a in objects:
        rep.check(
            "mult-zero-objects",
            C.otimes(a, zero) == zero and C.otimes(zero, a) == zero,
            f"a={a!r}",
        )
        rep.check(
            "mult-braiding-zero",
            C.beta_times(a, zero) == id0 and C.beta_times(zero, a) == id0,
            f"a={a!r}",
        )

    for a in objects:
        for b in objects:
            # partial with a zero slot
            pl = C.partial_l(zero, a, b)
            pr = C.partial_r(zero, a, b)
            ok = pl == C.identity_mor(C.otimes(a, b)) and pr == id0
            pl2 = C.partial_l(a, zero, b)
            pr2 = C.partial_r(a, zero, b)
            ok = ok and pl2 == C.identity_mor(C.otimes(a, b)) and pr2 == C.identity_mor(C.otimes(a, b))
            pl3 = C.partial_l(a, b, zero)
            pr3 = C.partial_r(a, b, zero)
            ok = ok and pl3 == id0 and pr3 == C.identity_mor(C.otimes(a, b))
            rep.check("zero-slot-factorization", ok, f"a={a!r} b={b!r}")
            ok = C.partial_l(a, b, one) == C.identity_mor(C.oplus(a, b)) and C.partial_r(
                one, a, b
            ) == C.identity_mor(C.oplus(a, b))
            rep.check("unit-slot-factorization", ok, f"a={a!r} b={b!r}")

    for a in objects:
        for b in objects:
            for c in objects:
                dl = C.delta_l(a, b, c)
                dr = C.delta_r(a, b, c)
                pl = C.partial_l(a, b, c)
                pr = C.partial_r(a, b, c)
                ok = (
                    C.compose(pl, dr) == C.identity_mor(C.dom(dr))
                    and C.compose(dr, pl) == C.identity_mor(C.dom(pl))
                    and C.compose(pr, dl) == C.identity_mor(C.dom(dl))
                    and C.compose(dl, pr) == C.identity_mor(C.dom(pr))
                )
                rep.check("tightness", ok, f"a={a!r} b={b!r} c={c!r}")
                lhs = C.compose(C.beta_times(C.oplus(a, b), c), pl)
                rhs = C.compose(
                    C.partial_r(c, a, b),
                    C.oplus_mor(C.beta_times(a, c), C.beta_times(b, c)),
                )
                rep.check("mult-braiding-factorization", lhs == rhs, f"a={a!r} b={b!r} c={c!r}")
                lhs = C.compose(C.partial_l(b, a, c), C.beta_plus(C.otimes(a, c), C.otimes(b, c)))
                rhs = C.compose(
                    C.otimes_mor(C.beta_plus(a, b), C.identity_mor(c)),
                    C.partial_l(a, b, c),
                )
                rep.check("factorization-symmetry-left", lhs == rhs, f"a={a!r} b={b!r} c={c!r}")
                lhs = C.compose(C.partial_r(a, c, b), C.beta_plus(C.otimes(a, b), C.otimes(a, c)))
                rhs = C.compose(
                    C.otimes_mor(C.identity_mor(a), C.beta_plus(b, c)),
                    C.partial_r(a, b, c),
                )
                rep.check("factorization-symmetry-right", lhs == rhs, f"a={a!r} b={b!r} c={c!r}")

    for a in objects:
        for b in objects:
            for c in objects:
                for d in objects:
                    # internal: two ways to merge three summands
                    lhs = C.compose(
                        C.partial_l(a, C.oplus(b, c), d),
                        C.oplus_mor(C.identity_mor(C.otimes(a, d)), C.partial_l(b, c, d)),
                    )
                    rhs = C.compose(
                        C.partial_l(C.oplus(a, b), c, d),
                        C.oplus_mor(C.partial_l(a, b, d), C.identity_mor(C.otimes(c, d))),
                    )
                    rep.check(
                        "factorization-internal-left", lhs == rhs, f"{a!r},{b!r},{c!r},{d!r}"
                    )
                    lhs = C.compose(
                        C.partial_r(a, b, C.oplus(c, d)),
                        C.oplus_mor(C.identity_mor(C.otimes(a, b)), C.partial_r(a, c, d)),
                    )
                    rhs = C.compose(
                        C.partial_r(a, C.oplus(b, c), d),
                        C.oplus_mor(C.partial_r(a, b, c), C.identity_mor(C.otimes(a, d))),
                    )
                    rep.check(
                        "factorization-internal-right", lhs == rhs, f"{a!r},{b!r},{c!r},{d!r}"
                    )
                    # external: factorization against a product
                    lhs = C.partial_l(a, b, C.otimes(c, d))
                    rhs = C.compose(
                        C.otimes_mor(C.partial_l(a, b, c), C.identity_mor(d)),
                        C.partial_l(C.otimes(a, c), C.otimes(b, c), d),
                    )
                    rep.check("factorization-external-i", lhs == rhs, f"{a!r},{b!r},{c!r},{d!r}")
                    lhs = C.compose(
                        C.otimes_mor(C.partial_r(a, b, c), C.identity_mor(d)),
                        C.partial_l(C.otimes(a, b), C.otimes(a, c), d),
                    )
                    rhs = C.compose(
                        C.otimes_mor(C.identity_mor(a), C.partial_l(b, c, d)),
                        C.partial_r(a, C.otimes(b, d), C.otimes(c, d)),
                    )
                    rep.check("factorization-external-ii", lhs == rhs, f"{a!r},{b!r},{c!r},{d!r}")
                    lhs = C.partial_r(C.otimes(a, b), c, d)
                    rhs = C.compose(
                        C.otimes_mor(C.identity_mor(a), C.partial_r(b, c, d)),
                        C.partial_r(a, C.otimes(b, c), C.otimes(b, d)),
                    )
                    rep.check("factorization-external-iii", lhs == rhs, f"{a!r},{b!r},{c!r},{d!r}")
                    # 2x2: four summands, two merge orders
                    ab, abp = C.otimes(a, c), C.otimes(a, d)
                    apb, apbp = C.otimes(b, c), C.otimes(b, d)
                    lhs = C.compose(
                        C.partial_l(a, b, C.oplus(c, d)),
                        C.oplus_mor(C.partial_r(a, c, d), C.partial_r(b, c, d)),
                    )
                    shuffle = C.oplus_mor(
                        C.identity_mor(ab),
                        C.oplus_mor(C.beta_plus(abp, apb), C.identity_mor(apbp)),
                    )
                    rhs = C.compose(
                        C.partial_r(C.oplus(a, b), c, d),
                        C.compose(
                            C.oplus_mor(C.partial_l(a, b, c), C.partial_l(a, b, d)), shuffle
                        ),
                    )
                    rep.check("factorization-2x2", lhs == rhs, f"{a!r},{b!r},{c!r},{d!r}")

    # sampled morphism-level ring laws
    unit = f"{seed}:{getattr(C, 'name', '?')}:ring"
    pairs = _mor_pairs(C, objects, unit, mor_cap)
    thirds = [h for h, _ in reversed(pairs)]
    for (f, g), h in zip(pairs, thirds):
        lhs = C.otimes_mor(f, id0)
        rhs = C.otimes_mor(id0, f)
        rep.check("mult-zero-morphisms", lhs == id0 and rhs == id0, f"f={f!r}")
        a, b, c = f.dom, g.dom, h.dom
        a2, b2, c2 = f.cod, g.cod, h.cod
        lhs = C.compose(
            C.partial_l(a2, b2, c2),
            C.oplus_mor(C.otimes_mor(f, h), C.otimes_mor(g, h)),
        )
        rhs = C.compose(C.otimes_mor(C.oplus_mor(f, g), h), C.partial_l(a, b, c))
        rep.check("factorization-naturality-left", lhs == rhs, f"f={f!r} g={g!r} h={h!r}")
        lhs = C.compose(
            C.partial_r(a2, b2, c2),
            C.oplus_mor(C.otimes_mor(f, g), C.otimes_mor(f, h)),
        )
        rhs = C.compose(C.otimes_mor(f, C.oplus_mor(g, h)), C.partial_r(a, b, c))
        rep.check("factorization-naturality-right", lhs == rhs, f"f={f!r} g={g!r} h={h!r}")
    return rep


# ---------------------------------------------------------------------------
# canonical coherence isomorphisms


def fold_otimes(C, objs: Sequence) -> object:
    return reduce(C.otimes, objs, C.one())


def fold_oplus(C, objs: Sequence) -> object:
    return reduce(C.oplus, objs, C.zero())


def fold_oplus_mor(C, mors: Sequence[FnMor]) -> FnMor:
    return reduce(C.oplus_mor, mors, C.identity_mor(C.zero()))


def fold_otimes_mor(C, mors: Sequence[FnMor]) -> FnMor:
    return reduce(C.otimes_mor, mors, C.identity_mor(C.one()))


def laplaza_iso(C, objs: Sequence, i: int, ai_prime) -> FnMor:
    """The canonical iso a1..(ai + ai')..an -> (a1..ai..an) + (a1..ai'..an).

    Distributes the i-th slot outward: first over the left factors, then over
    the right ones.  With one factor it degenerates to an identity, and a zero
    anywhere makes it an identity as well.
    """
    n = len(objs)
    if not 1 <= i <= n:
        raise IndexError(f"slot {i} out of range 1..{n}")
    u = fold_otimes(C, objs[: i - 1])
    v = fold_otimes(C, objs[i:])
    ai = objs[i - 1]
    step1 = C.otimes_mor(C.delta_l(u, ai, ai_prime), C.identity_mor(v))
    step2 = C.delta_r(C.otimes(u, ai), C.otimes(u, ai_prime), v)
    return C.compose(step2, step1)


def reorder_iso(P: PermutativeStructure, objs: Sequence, sigma: Permutation) -> FnMor:
    """The braiding-built iso  (x) objs[j]  ->  (x) objs[sigma^{-1}(j)].

    The factor in source slot k lands in target slot sigma(k).  Built from
    adjacent transpositions, each an identity-tensored braiding component.
    """
    C = P.base
    n = len(objs)
    if sigma.n != n:
        raise ValueError("arity mismatch")

    def fold(xs):
        return reduce(P.tensor, xs, P.unit)

    order = list(range(1, n + 1))
    cur = list(objs)
    total = C.identity_mor(fold(objs))
    changed = True
    while changed:
        changed = False
        for k in range(n - 1):
            if sigma(order[k]) > sigma(order[k + 1]):
                pre = fold(cur[:k])
                suf = fold(cur[k + 2 :])
                step = P.tensor_mor(
                    P.tensor_mor(C.identity_mor(pre), P.braiding(cur[k], cur[k + 1])),
                    C.identity_mor(suf),
                )
                total = C.compose(step, total)
                order[k], order[k + 1] = order[k + 1], order[k]
                cur[k], cur[k + 1] = cur[k + 1], cur[k]
                changed = True
    return total


def tensor_reorder(C, objs: Sequence, sigma: Permutation) -> FnMor:
    """reorder_iso over the multiplicative layer."""
    return reorder_iso(C.multiplicative, objs, sigma)


def sum_reorder(C, objs: Sequence, sigma: Permutation) -> FnMor:
    """reorder_iso over the additive layer."""
    return reorder_iso(C.additive, objs, sigma)


# ---------------------------------------------------------------------------
# structure paths


@dataclass(frozen=True)
class PathStep:
    """One prime edge: generator, tree position, optional argument expressions."""

    gen: str
    pos: Tuple[int, ...] = ()
    args: Tuple = ()


@dataclass(frozen=True)
class StructurePath:
    """A formal domain expression plus a sequence of prime edges."""

    domain: Tuple
    steps: Tuple[PathStep, ...]


def eval_expr(expr, bindings, C):
    kind = expr[0]
    if kind == "var":
        return bindings[expr[1]]
    if kind == "zero":
        return C.zero()
    if kind == "one":
        return C.one()
    if kind == "oplus":
        return C.oplus(eval_expr(expr[1], bindings, C), eval_expr(expr[2], bindings, C))
    if kind == "otimes":
        return C.otimes(eval_expr(expr[1], bindings, C), eval_expr(expr[2], bindings, C))
    raise ValueError(f"unknown expression head {kind!r}")


def _subexpr(expr, pos):
    for k in pos:
        expr = expr[k + 1]
    return expr


def _replace(expr, pos, new):
    if not pos:
        return new
    head, left, right = expr
    if pos[0] == 0:
        return (head, _replace(left, pos[1:], new), right)
    return (head, left, _replace(right, pos[1:], new))


class PathError(ValueError):
    pass


def _generator(C, gen, expr, args, bindings):
    """Rewrite expr by one generator; returns (new_expr, morphism)."""

    def ev(e):
        return eval_expr(e, bindings, C)

    def ident(e):
        return C.identity_mor(ev(e))

    if gen == "one":
        return expr, ident(expr)
    if gen == "xi_plus":
        if expr[0] != "oplus":
            raise PathError("xi_plus expects a sum")
        _, x, y = expr
        return ("oplus", y, x), C.beta_plus(ev(x), ev(y))
    if gen == "xi_plus_inv":
        if expr[0] != "oplus":
            raise PathError("xi_plus_inv expects a sum")
        _, x, y = expr
        return ("oplus", y, x), C.invert(C.beta_plus(ev(y), ev(x)))
    if gen == "xi_times":
        if expr[0] != "otimes":
            raise PathError("xi_times expects a product")
        _, x, y = expr
        return ("otimes", y, x), C.beta_times(ev(x), ev(y))
    if gen == "xi_times_inv":
        if expr[0] != "otimes":
            raise PathError("xi_times_inv expects a product")
        _, x, y = expr
        return ("otimes", y, x), C.invert(C.beta_times(ev(y), ev(x)))
    if gen == "alpha_plus":
        if expr[0] != "oplus" or expr[1][0] != "oplus":
            raise PathError("alpha_plus expects a left-nested sum")
        _, (_, x, y), z = expr
        return ("oplus", x, ("oplus", y, z)), ident(expr)
    if gen == "alpha_plus_inv":
        if expr[0] != "oplus" or expr[2][0] != "oplus":
            raise PathError("alpha_plus_inv expects a right-nested sum")
        _, x, (_, y, z) = expr
        return ("oplus", ("oplus", x, y), z), ident(expr)
    if gen == "alpha_times":
        if expr[0] != "otimes" or expr[1][0] != "otimes":
            raise PathError("alpha_times expects a left-nested product")
        _, (_, x, y), z = expr
        return ("otimes", x, ("otimes", y, z)), ident(expr)
    if gen == "alpha_times_inv":
        if expr[0] != "otimes" or expr[2][0] != "otimes":
            raise PathError("alpha_times_inv expects a right-nested product")
        _, x, (_, y, z) = expr
        return ("otimes", ("otimes", x, y), z), ident(expr)
    if gen == "lambda_plus":
        if expr[0] != "oplus" or expr[1] != ("zero",):
            raise PathError("lambda_plus expects 0 + x")
        return expr[2], ident(expr)
    if gen == "lambda_plus_inv":
        return ("oplus", ("zero",), expr), ident(expr)
    if gen == "rho_plus":
        if expr[0] != "oplus" or expr[2] != ("zero",):
            raise PathError("rho_plus expects x + 0")
        return expr[1], ident(expr)
    if gen == "rho_plus_inv":
        return ("oplus", expr, ("zero",)), ident(expr)
    if gen == "lambda_times":
        if expr[0] != "otimes" or expr[1] != ("one",):
            raise PathError("lambda_times expects 1 x")
        return expr[2], ident(expr)
    if gen == "lambda_times_inv":
        return ("otimes", ("one",), expr), ident(expr)
    if gen == "rho_times":
        if expr[0] != "otimes" or expr[2] != ("one",):
            raise PathError("rho_times expects x 1")
        return expr[1], ident(expr)
    if gen == "rho_times_inv":
        return ("otimes", expr, ("one",)), ident(expr)
    if gen == "lambda_bullet":
        if expr[0] != "otimes" or expr[1] != ("zero",):
            raise PathError("lambda_bullet expects 0 x")
        return ("zero",), ident(expr)
    if gen == "lambda_bullet_inv":
        if expr != ("zero",) or not args:
            raise PathError("lambda_bullet_inv expects 0 and a factor argument")
        return ("otimes", ("zero",), args[0]), C.identity_mor(C.zero())
    if gen == "rho_bullet":
        if expr[0] != "otimes" or expr[2] != ("zero",):
            raise PathError("rho_bullet expects x 0")
        return ("zero",), ident(expr)
    if gen == "rho_bullet_inv":
        if expr != ("zero",) or not args:
            raise PathError("rho_bullet_inv expects 0 and a factor argument")
        return ("otimes", args[0], ("zero",)), C.identity_mor(C.zero())
    if gen == "partial_l":
        if (
            expr[0] != "oplus"
            or expr[1][0] != "otimes"
            or expr[2][0] != "otimes"
            or expr[1][2] != expr[2][2]
        ):
            raise PathError("partial_l expects xc + yc with a shared right factor")
        _, (_, x, c), (_, y, _c) = expr
        return ("otimes", ("oplus", x, y), c), C.partial_l(ev(x), ev(y), ev(c))
    if gen in ("partial_l_inv", "delta_r"):
        if expr[0] != "otimes" or expr[1][0] != "oplus":
            raise PathError("delta_r expects (x + y) c")
        _, (_, x, y), c = expr
        return ("oplus", ("otimes", x, c), ("otimes", y, c)), C.delta_r(ev(x), ev(y), ev(c))
    if gen == "partial_r":
        if (
            expr[0] != "oplus"
            or expr[1][0] != "otimes"
            or expr[2][0] != "otimes"
            or expr[1][1] != expr[2][1]
        ):
            raise PathError("partial_r expects ax + ay with a shared left factor")
        _, (_, a, x), (_, _a, y) = expr
        return ("otimes", a, ("oplus", x, y)), C.partial_r(ev(a), ev(x), ev(y))
    if gen in ("partial_r_inv", "delta_l"):
        if expr[0] != "otimes" or expr[2][0] != "oplus":
            raise PathError("delta_l expects a (x + y)")
        _, a, (_, x, y) = expr
        return ("oplus", ("otimes", a, x), ("otimes", a, y)), C.delta_l(ev(a), ev(x), ev(y))
    raise PathError(f"unknown generator {gen!r}")


def _whisker(C, expr, pos, mor, bindings):
    """Tensor/sum the generator morphism with identities up the tree."""
    if not pos:
        return mor
    head, left, right = expr
    combine = C.oplus_mor if head == "oplus" else C.otimes_mor
    if pos[0] == 0:
        return combine(_whisker(C, left, pos[1:], mor, bindings), C.identity_mor(eval_expr(right, bindings, C)))
    return combine(C.identity_mor(eval_expr(left, bindings, C)), _whisker(C, right, pos[1:], mor, bindings))


def evaluate_structure_path(C, path: StructurePath, bindings: Dict) -> FnMor:
    """The composite value of a structure path under concrete bindings."""
    expr = path.domain
    total = C.identity_mor(eval_expr(expr, bindings, C))
    for step in path.steps:
        sub = _subexpr(expr, step.pos)
        new_sub, mor = _generator(C, step.gen, sub, step.args, bindings)
        full = _whisker(C, expr, step.pos, mor, bindings)
        expr = _replace(expr, step.pos, new_sub)
        total = C.compose(full, total)
    return total
