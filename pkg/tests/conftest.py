"""Shared brute-force oracles.

Everything here recomputes results the slow, obvious way, in pure Python and
straight off the exponent arithmetic, so the package's fast paths (numpy
carriers, generator closures, profile shortcuts) have something independent
to disagree with.
"""

from collections import Counter

import pytest

from pgroups.core import GroupShape


def dumb_radices(shape: GroupShape) -> list[int]:
    return [shape.prime ** k for k in shape.exponents]


def dumb_coords(shape: GroupShape, idx: int) -> list[int]:
    out = []
    for r in dumb_radices(shape):
        out.append(idx % r)
        idx //= r
    return out


def dumb_index(shape: GroupShape, coords) -> int:
    idx = 0
    stride = 1
    for c, r in zip(coords, dumb_radices(shape)):
        idx += (c % r) * stride
        stride *= r
    return idx


def dumb_add_table(shape: GroupShape) -> list[list[int]]:
    n = shape.order
    table = [[0] * n for _ in range(n)]
    coords = [dumb_coords(shape, i) for i in range(n)]
    for a in range(n):
        for b in range(n):
            summed = [x + y for x, y in zip(coords[a], coords[b])]
            table[a][b] = dumb_index(shape, summed)
    return table


def dumb_element_order(shape: GroupShape, idx: int, add=None) -> int:
    if add is None:
        add = dumb_add_table(shape)
    acc = idx
    order = 1
    while acc != 0:
        acc = add[acc][idx]
        order += 1
    return order


def dumb_order_counter(shape: GroupShape, members) -> Counter:
    add = dumb_add_table(shape)
    return Counter(dumb_element_order(shape, m, add) for m in members)


def mask_members(mask: int):
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def is_closed_mask(shape: GroupShape, mask: int, add=None) -> bool:
    if add is None:
        add = dumb_add_table(shape)
    members = mask_members(mask)
    for a in members:
        for b in members:
            if not (mask >> add[a][b]) & 1:
                return False
    return True


def closed_subset_masks(shape: GroupShape) -> set[int]:
    """Every subgroup mask, found by filtering all subsets.  Order <= 16 only."""
    n = shape.order
    assert n <= 16, "subset oracle is exponential in the group order"
    add = dumb_add_table(shape)
    out = set()
    for bits in range(1 << (n - 1)):
        mask = (bits << 1) | 1
        if is_closed_mask(shape, mask, add):
            out.add(mask)
    return out


def dumb_endo_table(shape: GroupShape, entries) -> list[int]:
    """Image index for every element under the matrix, coordinate by coordinate."""
    p = shape.prime
    exps = shape.exponents
    n = shape.order
    rank = shape.rank
    table = []
    for idx in range(n):
        coords = dumb_coords(shape, idx)
        image = []
        for i in range(rank):
            total = 0
            for j in range(rank):
                total += entries[i][j] * p ** max(0, exps[i] - exps[j]) * coords[j]
            image.append(total % p ** exps[i])
        table.append(dumb_index(shape, image))
    return table


def all_dumb_endo_tables(shape: GroupShape) -> list[list[int]]:
    """Tables of every endomorphism, from the raw entry ranges."""
    from itertools import product

    p = shape.prime
    exps = shape.exponents
    rank = shape.rank
    cells = [
        (i, j, p ** min(exps[i], exps[j]))
        for i in range(rank)
        for j in range(rank)
    ]
    tables = []
    for values in product(*(range(m) for _, _, m in cells)):
        entries = [[0] * rank for _ in range(rank)]
        for (i, j, _), v in zip(cells, values):
            entries[i][j] = v
        tables.append(dumb_endo_table(shape, entries))
    return tables


def dumb_char_fi_flags(shape: GroupShape, masks) -> tuple[list[bool], list[bool]]:
    """(characteristic, fully invariant) per mask, by scanning every endomorphism."""
    tables = all_dumb_endo_tables(shape)
    n = shape.order
    bijective = [t for t in tables if len(set(t)) == n]

    def stable(mask: int, table) -> bool:
        return all((mask >> table[m]) & 1 for m in mask_members(mask))

    char = [all(stable(mask, t) for t in bijective) for mask in masks]
    fi = [all(stable(mask, t) for t in tables) for mask in masks]
    return char, fi


def iso_matches(shape: GroupShape, mask: int, claimed: GroupShape) -> bool:
    """Order statistics determine finite abelian groups, so compare those."""
    if claimed.is_trivial_marker():
        return mask == 1
    if claimed.order != len(mask_members(mask)):
        return False
    return dumb_order_counter(shape, mask_members(mask)) == dumb_order_counter(
        claimed, range(claimed.order)
    )


@pytest.fixture(scope="session")
def tiny_shapes():
    """Order <= 16: the subset oracle is affordable."""
    from pgroups.core import make_shape

    return [
        make_shape(2, [1]),
        make_shape(2, [2]),
        make_shape(2, [1, 1]),
        make_shape(2, [3]),
        make_shape(2, [1, 2]),
        make_shape(2, [1, 1, 1]),
        make_shape(2, [4]),
        make_shape(2, [1, 3]),
        make_shape(2, [2, 2]),
        make_shape(2, [1, 1, 2]),
        make_shape(2, [1, 1, 1, 1]),
        make_shape(3, [1]),
        make_shape(3, [2]),
        make_shape(3, [1, 1]),
        make_shape(5, [1]),
        make_shape(13, [1]),
    ]


@pytest.fixture(scope="session")
def endo_oracle_shapes():
    """Cheap to scan every endomorphism."""
    from pgroups.core import make_shape

    return [
        make_shape(2, [1, 2]),
        make_shape(2, [1, 3]),
        make_shape(2, [2, 2]),
        make_shape(2, [1, 1, 2]),
        make_shape(2, [1, 1, 1]),
        make_shape(3, [1, 1]),
        make_shape(3, [1, 2]),
        make_shape(5, [1, 1]),
    ]
