"""Permutations in one-line notation and the block calculus built on them.

Conventions, fixed once and used everywhere else in the package:

* a permutation of {1..n} is stored as the tuple of images
  (sigma(1), ..., sigma(n)), 1-based;
* compose(sigma, tau) applies tau first: compose(sigma, tau)(i) = sigma(tau(i));
* the right action on tuples is act_right(x, sigma) = (x[sigma(1)], ..., x[sigma(n)]).

Two block-permutation builders are provided because two conventions are in
genuine use and they disagree for non-involutive permutations:

* ``block_permutation(sigma, lengths)`` lists the source blocks in the order
  sigma(1), sigma(2), ... as an images tuple, so that acting on a tuple from
  the right shows source block sigma(j) at slot j.  Example:
  block_permutation(swap, (1, 2)).images == (2, 3, 1).
* ``induced_block_perm(sigma, lengths)`` is the function that relocates the
  j-th source block (of length lengths[j-1]) to slot sigma(j), preserving the
  order inside each block.  Example:
  induced_block_perm(swap, (1, 2)).images == (3, 1, 2).

They are related by inverse(block_permutation(s, L)) == induced_block_perm(inverse(s), L).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence, Tuple


@dataclass(frozen=True)
class Permutation:
    """A permutation of {1..n} in one-line notation."""

    images: Tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.images)
        if sorted(self.images) != list(range(1, n + 1)):
            raise ValueError(f"not a permutation of 1..{n}: {self.images!r}")

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        if not 1 <= i <= self.n:
            raise ValueError(f"argument {i} outside 1..{self.n}")
        return self.images[i - 1]

    def is_identity(self) -> bool:
        return all(v == i + 1 for i, v in enumerate(self.images))

    def __repr__(self) -> str:
        return f"Permutation({self.images})"


def identity(n: int) -> Permutation:
    return Permutation(tuple(range(1, n + 1)))


def compose(sigma: Permutation, tau: Permutation) -> Permutation:
    """sigma after tau: compose(sigma, tau)(i) = sigma(tau(i))."""
    if sigma.n != tau.n:
        raise ValueError(f"size mismatch: {sigma.n} vs {tau.n}")
    return Permutation(tuple(sigma.images[tau.images[i] - 1] for i in range(tau.n)))


def inverse(sigma: Permutation) -> Permutation:
    images = [0] * sigma.n
    for i, v in enumerate(sigma.images):
        images[v - 1] = i + 1
    return Permutation(tuple(images))


def act_right(x: Sequence, sigma: Permutation) -> tuple:
    """<x>sigma = (x[sigma(1)], ..., x[sigma(n)])."""
    if len(x) != sigma.n:
        raise ValueError(f"tuple length {len(x)} does not match degree {sigma.n}")
    return tuple(x[sigma.images[i] - 1] for i in range(sigma.n))


def block_sum(perms: Iterable[Permutation]) -> Permutation:
    """sigma_1 x ... x sigma_k acting on consecutive blocks."""
    images: list[int] = []
    offset = 0
    for p in perms:
        images.extend(offset + v for v in p.images)
        offset += p.n
    return Permutation(tuple(images))


def _runs(lengths: Sequence[int]) -> list[list[int]]:
    runs: list[list[int]] = []
    start = 1
    for k in lengths:
        if k < 0:
            raise ValueError(f"negative block length {k}")
        runs.append(list(range(start, start + k)))
        start += k
    return runs


def block_permutation(sigma: Permutation, lengths: Sequence[int]) -> Permutation:
    """Rearrangement of consecutive blocks, images-listing convention.

    The source 1..(sum lengths) is split into blocks b_1, ..., b_n with
    len(b_j) = lengths[j-1]; the result's images tuple is the concatenation
    b_{sigma(1)}, ..., b_{sigma(n)}.  Acting on a tuple from the right puts
    source block sigma(j) at slot j.
    """
    if sigma.n != len(lengths):
        raise ValueError(f"degree {sigma.n} does not match {len(lengths)} blocks")
    runs = _runs(lengths)
    images: list[int] = []
    for j in range(1, sigma.n + 1):
        images.extend(runs[sigma(j) - 1])
    return Permutation(tuple(images))


def induced_block_perm(sigma: Permutation, lengths: Sequence[int]) -> Permutation:
    """The function relocating source block j (of length lengths[j-1]) to slot sigma(j).

    This is the convention behind induced block permutations of flattened
    disjoint unions: an element at offset t of block j lands at offset t of
    the sigma(j)-th slot, where slot s has length lengths[sigma^{-1}(s)-1].
    """
    if sigma.n != len(lengths):
        raise ValueError(f"degree {sigma.n} does not match {len(lengths)} blocks")
    inv = inverse(sigma)
    # offset of each target slot
    slot_offset = [0] * (sigma.n + 1)
    for s in range(1, sigma.n + 1):
        slot_offset[s] = slot_offset[s - 1] + lengths[inv(s) - 1]
    images: list[int] = []
    for j in range(1, sigma.n + 1):
        base = slot_offset[sigma(j) - 1]
        images.extend(base + t for t in range(1, lengths[j - 1] + 1))
    return Permutation(tuple(images))


def block_swap(m: int, n: int) -> Permutation:
    """The braiding of two consecutive blocks: k -> n+k for k <= m, k -> k-m after."""
    return Permutation(tuple(n + k for k in range(1, m + 1)) + tuple(range(1, n + 1)))


def transpose_perm(m: int, n: int) -> Permutation:
    """The transpose bijection mn -> nm: i + (j-1)m -> j + (i-1)n."""
    images = [0] * (m * n)
    for j in range(1, n + 1):
        for i in range(1, m + 1):
            images[i + (j - 1) * m - 1] = j + (i - 1) * n
    return Permutation(tuple(images))


def tetris(m: int, n: int, p: int) -> Permutation:
    """The rearrangement (m+n)p -> mp + np that stacks [A|B] into [A over B].

    Column c of row k of the p x (m+n) matrix sits at c + (k-1)(m+n); the
    first m columns go to i + (k-1)m, the last n columns to pm + j + (k-1)n.
    """
    total = (m + n) * p
    images = [0] * total
    for k in range(1, p + 1):
        for i in range(1, m + 1):
            images[i + (k - 1) * (m + n) - 1] = i + (k - 1) * m
        for j in range(1, n + 1):
            images[j + m + (k - 1) * (m + n) - 1] = j + (k - 1) * n + p * m
    return Permutation(tuple(images))


def all_permutations(n: int) -> Iterator[Permutation]:
    """All of Sigma_n in lexicographic order of images."""
    for images in itertools.permutations(range(1, n + 1)):
        yield Permutation(images)


def from_cycles(n: int, *cycles: Sequence[int]) -> Permutation:
    """Build a permutation of {1..n} from disjoint cycles, e.g. from_cycles(3, (1, 2))."""
    images = list(range(1, n + 1))
    for cyc in cycles:
        for a, b in zip(cyc, cyc[1:] + type(cyc)((cyc[0],))):
            images[a - 1] = b
    return Permutation(tuple(images))
