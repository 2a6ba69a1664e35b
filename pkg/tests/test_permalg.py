"""Oracle and law tests for the permutation layer.

The oracles below are written independently of the implementation: they move
labelled entries around in lists and read the permutation off the result.
"""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bipermkit.permalg import (
    Permutation,
    act_right,
    all_permutations,
    block_permutation,
    block_sum,
    block_swap,
    compose,
    from_cycles,
    identity,
    induced_block_perm,
    inverse,
    tetris,
    transpose_perm,
)


# ---------------------------------------------------------------- oracles


def oracle_block_listing(sigma, lengths):
    """Images tuple by literally concatenating labelled blocks."""
    labels = list(range(1, sum(lengths) + 1))
    blocks = []
    pos = 0
    for k in lengths:
        blocks.append(labels[pos:pos + k])
        pos += k
    out = []
    for j in range(1, len(lengths) + 1):
        out.extend(blocks[sigma(j) - 1])
    return tuple(out)


def oracle_induced(sigma, lengths):
    """Destination map by physically placing each block at its slot."""
    n = len(lengths)
    blocks = []
    pos = 1
    for k in lengths:
        blocks.append(list(range(pos, pos + k)))
        pos += k
    slots = [None] * n
    for j in range(1, n + 1):
        slots[sigma(j) - 1] = blocks[j - 1]
    flat = [x for slot in slots for x in slot]
    images = [0] * (pos - 1)
    for target_index, label in enumerate(flat, start=1):
        images[label - 1] = target_index
    return tuple(images)


def oracle_transpose(m, n):
    """Transpose an n x m matrix whose (j,i) entry is i + (j-1)m."""
    matrix = [[i + (j - 1) * m for i in range(1, m + 1)] for j in range(1, n + 1)]
    images = [0] * (m * n)
    for j in range(1, n + 1):
        for i in range(1, m + 1):
            # entry (j,i) moves to the (i,j) position of the transposed matrix,
            # which is read off with the same second-entry-first flattening
            images[matrix[j - 1][i - 1] - 1] = j + (i - 1) * n
    return tuple(images)


def oracle_tetris(m, n, p):
    """Stack the labelled matrix [A|B] into [A over B] and read positions off."""
    rows = [list(range(k * (m + n) + 1, (k + 1) * (m + n) + 1)) for k in range(p)]
    a_part = [row[:m] for row in rows]
    b_part = [row[m:] for row in rows]
    target = [x for row in a_part for x in row] + [x for row in b_part for x in row]
    images = [0] * ((m + n) * p)
    for target_index, label in enumerate(target, start=1):
        images[label - 1] = target_index
    return tuple(images)


# ---------------------------------------------------------------- basics


def test_identity_and_validation():
    assert identity(3).images == (1, 2, 3)
    with pytest.raises(ValueError):
        Permutation((1, 1, 2))
    with pytest.raises(ValueError):
        Permutation((0, 1))


def test_compose_applies_second_argument_first():
    sigma = Permutation((2, 3, 1))
    tau = Permutation((1, 3, 2))
    assert compose(sigma, tau).images == tuple(sigma(tau(i)) for i in (1, 2, 3))


def test_act_right_is_an_action():
    x = ("a", "b", "c", "d")
    for sigma in all_permutations(4):
        for tau in all_permutations(4):
            assert act_right(act_right(x, sigma), tau) == act_right(x, compose(sigma, tau))


perm_strategy = st.integers(min_value=1, max_value=6).flatmap(
    lambda n: st.permutations(list(range(1, n + 1))).map(lambda p: Permutation(tuple(p)))
)


@given(perm_strategy)
def test_inverse_laws(sigma):
    assert compose(sigma, inverse(sigma)).is_identity()
    assert compose(inverse(sigma), sigma).is_identity()


@given(perm_strategy, perm_strategy)
def test_inverse_antihomomorphism(a, b):
    if a.n != b.n:
        return
    assert inverse(compose(a, b)) == compose(inverse(b), inverse(a))


def test_block_sum_is_monoidal():
    for a in all_permutations(2):
        for b in all_permutations(3):
            for c in all_permutations(2):
                for d in all_permutations(3):
                    lhs = block_sum([compose(a, c), compose(b, d)])
                    rhs = compose(block_sum([a, b]), block_sum([c, d]))
                    assert lhs == rhs


# ------------------------------------------------- block permutations


def test_block_permutation_worked_example():
    swap = Permutation((2, 1))
    assert block_permutation(swap, (1, 2)).images == (2, 3, 1)
    assert induced_block_perm(swap, (1, 2)).images == (3, 1, 2)


def test_block_permutation_against_oracle():
    lengths_pool = [(), (2,), (1, 2), (3, 1), (2, 2, 1), (1, 3, 2), (2, 1, 3, 1)]
    for lengths in lengths_pool:
        for sigma in all_permutations(len(lengths)):
            assert block_permutation(sigma, lengths).images == oracle_block_listing(sigma, lengths)
            assert induced_block_perm(sigma, lengths).images == oracle_induced(sigma, lengths)


def test_block_permutation_vs_induced_inverse_relation():
    for lengths in [(1, 2, 3), (2, 2, 2), (1, 1, 4), (3, 1, 2, 2)]:
        for sigma in all_permutations(len(lengths)):
            assert inverse(block_permutation(sigma, lengths)) == induced_block_perm(
                inverse(sigma), lengths
            )


def test_block_permutation_rearranges_tuples():
    sigma = from_cycles(3, (1, 2, 3))  # 1->2->3->1
    lengths = (1, 2, 3)
    x = ("a", "b1", "b2", "c1", "c2", "c3")
    moved = act_right(x, block_permutation(sigma, lengths))
    # slot j shows source block sigma(j): blocks 2, 3, 1
    assert moved == ("b1", "b2", "c1", "c2", "c3", "a")


def test_block_permutation_composition_factoring():
    """block_permutation(sigma tau, L) factors through the lengths permuted by sigma."""
    for n in range(1, 5):
        for lengths in itertools.product((1, 2, 3), repeat=n):
            for sigma in all_permutations(n):
                for tau in all_permutations(n):
                    lhs = block_permutation(compose(sigma, tau), lengths)
                    rhs = compose(
                        block_permutation(sigma, lengths),
                        block_permutation(tau, act_right(lengths, sigma)),
                    )
                    assert lhs == rhs


def test_induced_block_perm_composition():
    """induced_block_perm(sigma tau, L) = induced(sigma, L tau-arranged) after induced(tau, L)."""
    for n in range(1, 5):
        for lengths in itertools.product((1, 2, 3), repeat=n):
            for sigma in all_permutations(n):
                for tau in all_permutations(n):
                    lhs = induced_block_perm(compose(sigma, tau), lengths)
                    rhs = compose(
                        induced_block_perm(sigma, act_right(lengths, inverse(tau))),
                        induced_block_perm(tau, lengths),
                    )
                    assert lhs == rhs


# ------------------------------------------------- named permutations


def test_block_swap_formula_and_symmetry():
    for m in range(5):
        for n in range(5):
            bs = block_swap(m, n)
            assert bs == induced_block_perm(Permutation((2, 1)), (m, n))
            assert compose(block_swap(n, m), bs).is_identity()


def test_transpose_against_matrix_oracle():
    for m in range(7):
        for n in range(7):
            assert transpose_perm(m, n).images == oracle_transpose(m, n)


def test_transpose_involution():
    for m in range(7):
        for n in range(7):
            assert compose(transpose_perm(n, m), transpose_perm(m, n)).is_identity()


def test_tetris_against_stacking_oracle():
    for m in range(5):
        for n in range(5):
            for p in range(5):
                assert tetris(m, n, p).images == oracle_tetris(m, n, p)


def test_transpose_tetris_square():
    """Transposing [A|B] equals stacking then transposing blockwise, for all p,r,q <= 4."""
    for p in range(5):
        for r in range(5):
            for q in range(5):
                lhs = transpose_perm(p + r, q)
                rhs = compose(
                    block_sum([transpose_perm(p, q), transpose_perm(r, q)]),
                    tetris(p, r, q),
                )
                assert lhs == rhs


def test_degenerate_blocks():
    assert block_swap(0, 3).is_identity()
    assert block_swap(3, 0).is_identity()
    assert transpose_perm(1, 4) == identity(4)
    assert transpose_perm(4, 1) == identity(4)
    assert tetris(0, 2, 3).is_identity()
    assert tetris(2, 0, 3).is_identity()
    assert tetris(2, 3, 0) == identity(0)
    assert tetris(2, 3, 1) == identity(5)
