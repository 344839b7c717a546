"""Characteristic and fully invariant subgroups, projections, transitivity.

Both invariance tests are generator-stability tests with early exit:

* `is_characteristic` checks alpha(H) <= H for each automorphism generator;
  equality follows from finiteness, so stability under the generated group
  (inverses included) comes for free.
* `is_fully_invariant` checks stability under the n^2 single-entry maps;
  every endomorphism is an entrywise combination of those, and a subgroup is
  closed under sums and integer multiples.

The structured route to the fully invariant lattice is `fi_from_profiles`:
group the cyclic summands into homocyclic layers B_k (one per distinct
exponent k); fully invariant subgroups are exactly the sums of power
subgroups p^(n_k) B_k whose profile (n_k) is monotone and grows at most by
the exponent gap between consecutive layers.  Projections onto layers are
endomorphisms, which is what pins every fully invariant subgroup to that
form; the brute filtered-enumeration route stays available as the oracle and
the two are cross-checked by the harness.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .caps import CapExceeded, sweep_cap
from .core import (
    GroupShape,
    INFINITE,
    _mask_from_bool,
    carrier,
    mask_to_indices,
)
from .endos import aut_generators, induced_table, stability_test_set
from .lattice import (
    Subgroup,
    _lex_key,
    _span_mask,
    enumerate_subgroups,
)


@lru_cache(maxsize=256)
def _aut_rows(shape: GroupShape) -> tuple[list[int], ...]:
    car = carrier(shape)
    return tuple(induced_table(g, car).tolist() for g in aut_generators(shape))


@lru_cache(maxsize=256)
def _stability_rows(shape: GroupShape) -> tuple[list[int], ...]:
    car = carrier(shape)
    return tuple(induced_table(m, car).tolist() for m in stability_test_set(shape))


def _stable_under(mask: int, rows) -> bool:
    for row in rows:
        m = mask
        while m:
            low = m & -m
            if not mask >> row[low.bit_length() - 1] & 1:
                return False
            m ^= low
    return True


def is_characteristic(h: Subgroup) -> bool:
    """True iff every automorphism maps H into (hence onto) H."""
    return _stable_under(h.mask, _aut_rows(h.shape))


def is_fully_invariant(h: Subgroup) -> bool:
    """True iff every endomorphism maps H into H."""
    return _stable_under(h.mask, _stability_rows(h.shape))


def enumerate_characteristic(shape: GroupShape, subgroups=None) -> list[Subgroup]:
    if subgroups is None:
        subgroups = enumerate_subgroups(shape)
    return [h for h in subgroups if is_characteristic(h)]


def enumerate_fully_invariant(shape: GroupShape, subgroups=None) -> list[Subgroup]:
    if subgroups is None:
        subgroups = enumerate_subgroups(shape)
    return [h for h in subgroups if is_fully_invariant(h)]


def char_equals_fi(shape: GroupShape, subgroups=None) -> bool:
    """Whether the characteristic and fully invariant lattices coincide."""
    if subgroups is None:
        subgroups = enumerate_subgroups(shape)
    return all(
        is_fully_invariant(h) for h in subgroups if is_characteristic(h)
    )  # fully invariant always implies characteristic


def kaplansky_2group_predicate(shape: GroupShape) -> bool:
    """For p = 2: at most two Ulm invariants equal 1, successive if exactly two.

    This is the combinatorial side of the char-equals-fi dichotomy for finite
    abelian 2-groups.
    """
    if shape.prime != 2:
        raise ValueError("predicate is specific to p = 2")
    from .core import ulm_invariants

    ones = [n for n, f in enumerate(ulm_invariants(shape)) if f == 1]
    if len(ones) > 2:
        return False
    if len(ones) == 2:
        return ones[1] == ones[0] + 1
    return True


# ---- layers and projections --------------------------------------------------------


def distinct_exponents(shape: GroupShape) -> tuple[int, ...]:
    return tuple(sorted(set(shape.exponents)))


def layer_positions(shape: GroupShape, k: int) -> tuple[int, ...]:
    return tuple(i for i, e in enumerate(shape.exponents) if e == k)


@lru_cache(maxsize=512)
def _positions_row(shape: GroupShape, positions: tuple[int, ...]) -> list[int]:
    """row[x] = index of x with all coordinates outside `positions` zeroed."""
    car = carrier(shape)
    total = np.zeros(car.n, dtype=np.int64)
    for i in positions:
        total += car.coords_mat[i] * car.strides[i]
    return total.tolist()


@lru_cache(maxsize=512)
def _layer_mask(shape: GroupShape, positions: tuple[int, ...]) -> int:
    """Mask of elements supported only on `positions`."""
    car = carrier(shape)
    keep = np.ones(car.n, dtype=bool)
    pos = set(positions)
    for i in range(shape.rank):
        if i not in pos:
            keep &= car.coords_mat[i] == 0
    return _mask_from_bool(keep)


def layer_subgroup(shape: GroupShape, k: int, n: int = 0) -> Subgroup:
    """p^n B_k where B_k is the homocyclic layer of exponent k."""
    positions = layer_positions(shape, k)
    if not positions:
        raise ValueError(f"{shape} has no summand of exponent {k}")
    mask = _layer_mask(shape, positions)
    if n:
        mask &= carrier(shape).socle_mask(max(k - n, 0))
    return Subgroup(shape, mask)


def project_onto_positions(h: Subgroup, positions: tuple[int, ...]) -> Subgroup:
    """Image of H under the coordinate projection, as a subgroup of G."""
    row = _positions_row(h.shape, tuple(positions))
    mask = 0
    for m in h.members():
        mask |= 1 << row[m]
    return Subgroup(h.shape, mask)


def restrict_to_positions(h: Subgroup, positions: tuple[int, ...]):
    """View a subgroup supported on `positions` inside the standalone group
    on those summands.  Returns (sub_shape, subgroup_of_sub_shape)."""
    shape = h.shape
    positions = tuple(positions)
    if h.mask & ~_layer_mask(shape, positions):
        raise ValueError("subgroup is not supported on the given positions")
    sub_shape = GroupShape(shape.prime, tuple(shape.exponents[i] for i in positions))
    car = carrier(shape)
    sub_car = carrier(sub_shape)
    mask = 0
    for m in h.members():
        coords = car.coords_of(m)
        mask |= 1 << sub_car.index_of(tuple(coords[i] for i in positions))
    return sub_shape, Subgroup(sub_shape, mask)


# ---- projection profiles -----------------------------------------------------------


class ProfileViolation(Exception):
    """A layer projection of the subgroup is not a power subgroup p^n B_k."""


@dataclass(frozen=True, slots=True)
class ProjectionProfile:
    """Exponents of the layer projections: pi_k(H) = p^(n_k) B_k."""

    shape: GroupShape
    levels: tuple[int, ...]  # present exponents, ascending
    n_values: tuple[int, ...]

    def as_dict(self) -> dict[int, int]:
        return dict(zip(self.levels, self.n_values))

    def satisfies_bounds(self) -> bool:
        return all(0 <= n <= k for k, n in zip(self.levels, self.n_values))

    def satisfies_growth(self) -> bool:
        pairs = zip(self.levels, self.n_values)
        prev_k, prev_n = next(pairs)
        for k, n in pairs:
            if not prev_n <= n <= prev_n + (k - prev_k):
                return False
            prev_k, prev_n = k, n
        return True


def projection_profile(h: Subgroup) -> ProjectionProfile:
    """Profile of a subgroup whose layer projections are power subgroups.

    Raises ProfileViolation otherwise; for characteristic subgroups that
    would falsify the projection structure statement the harness checks.
    """
    shape = h.shape
    car = carrier(shape)
    levels = distinct_exponents(shape)
    n_values = []
    for k in levels:
        positions = layer_positions(shape, k)
        proj = project_onto_positions(h, positions)
        if proj.mask == 1:
            n_values.append(k)
            continue
        # order of the projection pins down the only possible n
        e = max(int(car.order_exponents()[m]) for m in proj.members())
        n = k - e
        expected = _layer_mask(shape, positions) & car.socle_mask(e)
        if n < 0 or proj.mask != expected:
            raise ProfileViolation(
                f"projection onto exponent-{k} layer of {shape} is not a power subgroup"
            )
        n_values.append(n)
    return ProjectionProfile(shape, levels, tuple(n_values))


def _profile_vectors(levels: tuple[int, ...]):
    """All (n_k) with 0 <= n_k <= k, monotone, gaps bounded by exponent gaps."""
    if not levels:
        return
    first = levels[0]
    for start in range(first + 1):
        vec = [start]

        def extend(vec):
            depth = len(vec)
            if depth == len(levels):
                yield tuple(vec)
                return
            k_prev, k_here = levels[depth - 1], levels[depth]
            lo = vec[-1]
            hi = min(k_here, vec[-1] + (k_here - k_prev))
            for n in range(lo, hi + 1):
                vec.append(n)
                yield from extend(vec)
                vec.pop()

        yield from extend(vec)


def fi_from_profiles(shape: GroupShape) -> list[Subgroup]:
    """The fully invariant lattice, built from layer profiles.

    Complete because projections onto layers are endomorphisms (so any fully
    invariant H splits as the sum of its layer projections) and the fully
    invariant subgroups of a homocyclic layer are its power subgroups.  Every
    candidate is still pushed through `is_fully_invariant`.
    """
    car = carrier(shape)
    levels = distinct_exponents(shape)
    out = []
    for vec in _profile_vectors(levels):
        keep = np.ones(car.n, dtype=bool)
        for k, n in zip(levels, vec):
            modulus = shape.prime ** n
            if modulus == 1:
                continue
            for i in layer_positions(shape, k):
                keep &= car.coords_mat[i] % modulus == 0
        h = Subgroup(shape, _mask_from_bool(keep))
        if not is_fully_invariant(h):
            raise AssertionError(
                f"profile {vec} for {shape} produced a non fully invariant subgroup"
            )
        out.append(h)
    nbytes = (car.n + 7) // 8
    out.sort(key=lambda h: (h.order, _lex_key(h.mask, car.full_mask, nbytes)))
    return out


def fi_profile_iso_types(shape: GroupShape) -> list[tuple[tuple[int, ...], GroupShape]]:
    """(profile vector, iso type) pairs for the profile route, by exponent
    arithmetic alone: sum_k p^(n_k) B_k has one Z(p^(k - n_k)) per exponent-k
    summand.  Never touches the carrier, so it scales past the point where
    `fi_from_profiles` masks are worth materializing; the two routes are
    cross-checked on small shapes."""
    levels = distinct_exponents(shape)
    mult = {k: len(layer_positions(shape, k)) for k in levels}
    out = []
    for vec in _profile_vectors(levels):
        exps = []
        for k, n in zip(levels, vec):
            if k - n > 0:
                exps.extend([k - n] * mult[k])
        out.append((vec, GroupShape(shape.prime, tuple(sorted(exps)))))
    return out


# ---- transitivity sweeps -----------------------------------------------------------


def _ulm_key(car, heights_list, mulp, idx) -> tuple:
    seq = []
    cur = idx
    while cur:
        seq.append(heights_list[cur])
        cur = mulp[cur]
    seq.append(INFINITE)
    return tuple(seq)


def _check_sweep_cap(shape: GroupShape, what: str) -> None:
    cap = sweep_cap()
    if shape.order > cap:
        raise CapExceeded("sweep", cap, shape.order, f"{what} for {shape}")


def is_transitive(shape: GroupShape) -> bool:
    """Do automorphisms act transitively on each Ulm-sequence class?"""
    _check_sweep_cap(shape, "transitivity sweep")
    car = carrier(shape)
    rows = _aut_rows(shape)
    heights_list = car.heights()
    mulp = car.mul_row(shape.prime)
    orbit_of = [-1] * car.n
    orbit_count = 0
    for start in range(car.n):
        if orbit_of[start] >= 0:
            continue
        orbit_of[start] = orbit_count
        frontier = [start]
        while frontier:
            nxt = []
            for x in frontier:
                for row in rows:
                    y = row[x]
                    if orbit_of[y] < 0:
                        orbit_of[y] = orbit_count
                        nxt.append(y)
            frontier = nxt
        orbit_count += 1
    by_ulm: dict[tuple, int] = {}
    for idx in range(car.n):
        key = _ulm_key(car, heights_list, mulp, idx)
        known = by_ulm.setdefault(key, orbit_of[idx])
        if known != orbit_of[idx]:
            return False
    return True


def endo_image_of(shape: GroupShape, idx: int) -> Subgroup:
    """{phi(x) : phi an endomorphism} for the element with dense index idx.

    Equals the sum over coordinates of c_j * G[p^(k_j)]; an endomorphism is
    free to send each generator anywhere of compatible order.
    """
    car = carrier(shape)
    coords = car.coords_of(idx)
    acc = 1
    for j, c in enumerate(coords):
        if not c:
            continue
        row = car.mul_row(c)
        part = 0
        for z in mask_to_indices(car.socle_mask(shape.exponents[j])):
            part |= 1 << row[z]
        acc = _span_mask(car, mask_to_indices(part), base=acc)
    return Subgroup(shape, acc)


def is_fully_transitive(shape: GroupShape) -> bool:
    """Whenever the Ulm sequence of x is pointwise <= that of y, some
    endomorphism must carry x to y."""
    _check_sweep_cap(shape, "full transitivity sweep")
    car = carrier(shape)
    heights_list = car.heights()
    mulp = car.mul_row(shape.prime)
    keys = [_ulm_key(car, heights_list, mulp, idx) for idx in range(car.n)]

    def leq(a: tuple, b: tuple) -> bool:
        span_len = max(len(a), len(b))
        for j in range(span_len):
            av = a[j] if j < len(a) else INFINITE
            bv = b[j] if j < len(b) else INFINITE
            if not av <= bv:
                return False
        return True

    for x in range(car.n):
        image = endo_image_of(shape, x)
        for y in range(car.n):
            if leq(keys[x], keys[y]) and not image.mask >> y & 1:
                return False
    return True
