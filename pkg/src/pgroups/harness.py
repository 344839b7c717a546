"""Corpus sweeps: run registered claim checkers over shape families.

A claim is a named property of shapes (or of a fixed family) together with an
applicability filter.  `run_claims` walks the corpus shape by shape, feeds
each applicable checker, and merges the outcomes into one ClaimReport per
claim.  Shapes are independent work units, so the sweep parallelizes across
processes; reports are merged in corpus order and are byte-identical for a
given corpus and claim set regardless of the job count (runtime fields
excepted).

The registry also carries out-of-scope entries (no checker, a reason
instead) so the gap between what the source material states and what a
finite sweep can instantiate stays visible in one place.
"""

from __future__ import annotations

import hashlib
import json
import time
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .cache import LatticeCache
from .caps import CapExceeded, carrier_cap, endo_oracle_cap
from .classify import (
    _nontrivial,
    _nonzero,
    _pairwise_iso_witness,
    classify_ifi,
    classify_strongly_ifi,
    ifi_criterion,
    subgroup_descriptor,
)
from .core import GroupShape, carrier, element, format_shape, is_prime, make_shape
from .endos import (
    aut_closure_tables,
    automorphism_flags,
    bijective_flags_by_table,
    endo_count,
    endo_entry_batches,
    induced_table,
    induced_tables_batch,
    random_endo,
)
from .invariance import (
    ProfileViolation,
    _layer_mask,
    _stability_rows,
    _stable_under,
    distinct_exponents,
    fi_from_profiles,
    fi_profile_iso_types,
    is_characteristic,
    is_fully_invariant,
    kaplansky_2group_predicate,
    layer_positions,
    project_onto_positions,
    projection_profile,
    restrict_to_positions,
)
from .lattice import Subgroup, enumerate_subgroups, span, subgroup_contains, subgroup_sum

MAX_STORED_VIOLATIONS = 16


# ---- corpus ------------------------------------------------------------------------


@dataclass(frozen=True)
class Corpus:
    prime: int
    max_order: int
    shapes: tuple[GroupShape, ...]


def _partitions_of(total: int, smallest: int = 1):
    """Ascending partitions of `total`."""
    if total == 0:
        yield ()
        return
    for part in range(smallest, total + 1):
        for rest in _partitions_of(total - part, part):
            yield (part,) + rest


def build_corpus(prime: int, max_order: int) -> Corpus:
    """Every shape with order <= max_order, ordered by (rank, exponents)."""
    if not is_prime(prime):
        raise ValueError(f"{prime} is not prime")
    if max_order < 1:
        raise ValueError("max_order must be positive")
    shapes: list[GroupShape] = []
    total = 1
    while prime ** total <= max_order:
        shapes.extend(make_shape(prime, part) for part in _partitions_of(total))
        total += 1
    shapes.sort(key=lambda s: (s.rank, s.exponents))
    return Corpus(prime, max_order, tuple(shapes))


# ---- per-shape lattice bundles -------------------------------------------------------


@dataclass
class ShapeLattice:
    shape: GroupShape
    subgroups: tuple[Subgroup, ...]
    char_flags: tuple[bool, ...]
    fi_flags: tuple[bool, ...]

    def characteristic(self) -> list[Subgroup]:
        return [h for h, f in zip(self.subgroups, self.char_flags) if f]

    def fully_invariant(self) -> list[Subgroup]:
        return [h for h, f in zip(self.subgroups, self.fi_flags) if f]


def compute_shape_lattice(shape: GroupShape) -> ShapeLattice:
    subs = enumerate_subgroups(shape)
    char = tuple(is_characteristic(h) for h in subs)
    fi = tuple(is_fully_invariant(h) for h in subs)
    return ShapeLattice(shape, tuple(subs), char, fi)


def _iso_string(shape_or_marker: GroupShape) -> str:
    return "" if shape_or_marker.is_trivial_marker() else format_shape(shape_or_marker)


class LatticeStore:
    """ShapeLattice provider: small in-memory window plus optional disk cache."""

    def __init__(self, cache: Optional[LatticeCache] = None, memo_limit: int = 3):
        self._cache = cache
        self._memo: dict[str, ShapeLattice] = {}
        self._memo_order: list[str] = []
        self._limit = memo_limit

    def get(self, shape: GroupShape) -> ShapeLattice:
        key = format_shape(shape)
        if key in self._memo:
            return self._memo[key]
        lat = self._load(shape) if self._cache is not None else None
        if lat is None:
            lat = compute_shape_lattice(shape)
            if self._cache is not None:
                self._cache.save(
                    shape,
                    [h.mask for h in lat.subgroups],
                    lat.char_flags,
                    lat.fi_flags,
                    [_iso_string(h.iso_type()) for h in lat.subgroups],
                )
        self._memo[key] = lat
        self._memo_order.append(key)
        while len(self._memo_order) > self._limit:
            del self._memo[self._memo_order.pop(0)]
        return lat

    def _load(self, shape: GroupShape) -> Optional[ShapeLattice]:
        got = self._cache.load(shape)
        if got is None:
            return None
        masks, char_flags, fi_flags, iso_types = got
        type_memo: dict[str, GroupShape] = {}
        subs = []
        for mask, iso in zip(masks, iso_types):
            h = Subgroup(shape, mask)
            if iso not in type_memo:
                if iso == "":
                    type_memo[iso] = GroupShape(shape.prime, ())
                else:
                    prime_s, exps_s = iso.split(":")
                    type_memo[iso] = GroupShape(
                        int(prime_s), tuple(int(e) for e in exps_s.split(","))
                    )
            h._iso = type_memo[iso]
            subs.append(h)
        return ShapeLattice(shape, tuple(subs), tuple(char_flags), tuple(fi_flags))


# ---- claim plumbing ------------------------------------------------------------------


@dataclass
class CheckOutcome:
    violations: list = field(default_factory=list)
    adapted: bool = False
    checked: bool = True  # False: shape skipped entirely (not counted)
    notes: list = field(default_factory=list)
    skips: list = field(default_factory=list)  # crosscheck parts skipped under caps


@dataclass(frozen=True)
class ClaimSpec:
    claim_id: str
    summary: str
    kind: str  # "per-shape" | "family" | "out-of-scope"
    applies: Optional[Callable[[GroupShape], bool]] = None
    check: Optional[Callable[["CheckContext", GroupShape], CheckOutcome]] = None
    family: Optional[Callable[["CheckContext", Corpus], tuple[int, CheckOutcome]]] = None
    notes: tuple = ()
    reason: str = ""


@dataclass
class ClaimReport:
    claim_id: str
    prime: int
    max_order: int
    shapes_checked: int
    status: str  # pass | fail | adapted | out-of-scope
    violations: list = field(default_factory=list)
    total_violations: int = 0
    runtime_ms: int = 0
    notes: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "claim_id": self.claim_id,
            "prime": self.prime,
            "max_order": self.max_order,
            "shapes_checked": self.shapes_checked,
            "status": self.status,
            "violations": self.violations,
            "total_violations": self.total_violations,
            "runtime_ms": self.runtime_ms,
            "notes": self.notes,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


class CheckContext:
    """What checkers see: lazy per-shape lattice access."""

    def __init__(self, store: LatticeStore):
        self.store = store

    def lattice(self, shape: GroupShape) -> ShapeLattice:
        return self.store.get(shape)


class UnknownClaimError(ValueError):
    pass


def _violation(shape: GroupShape, **witness) -> dict:
    return {"shape": format_shape(shape), "witness": witness}


# ---- checkers ------------------------------------------------------------------------


def _check_ifi_criterion(ctx: CheckContext, shape: GroupShape) -> CheckOutcome:
    out = CheckOutcome()
    got = classify_ifi(shape)
    want = ifi_criterion(shape)
    if got != want:
        out.violations.append(
            _violation(shape, computed_ifi=got, closed_form=want)
        )
    return out


def _check_strongly_elementary(ctx: CheckContext, shape: GroupShape) -> CheckOutcome:
    out = CheckOutcome()
    got = classify_strongly_ifi(shape)
    want = all(k == 1 for k in shape.exponents)
    if got != want:
        out.violations.append(
            _violation(shape, computed_strongly_ifi=got, elementary=want)
        )
    return out


def _check_doubling(ctx: CheckContext, shape: GroupShape) -> CheckOutcome:
    out = CheckOutcome()
    if shape.order ** 2 > carrier_cap():
        out.checked = False
        out.notes.append(
            f"{format_shape(shape)}: doubled shape exceeds the carrier cap, skipped"
        )
        return out
    doubled = make_shape(shape.prime, shape.exponents * 2)
    lat = ctx.lattice(shape)
    ic = _pairwise_iso_witness(_nontrivial(lat.characteristic())) is None

    # doubled side by exponent arithmetic; the mask route confirms it while
    # the doubled carrier is still cheap
    types = [t for _, t in fi_profile_iso_types(doubled)]
    nontrivial_types = [t for t in types if t.exponents and t != doubled]
    ifi_doubled = len(set(nontrivial_types)) <= 1
    if doubled.order <= 1024:
        direct = classify_ifi(doubled)
        if direct != ifi_doubled:
            out.violations.append(
                _violation(
                    shape,
                    detail="mask route and arithmetic route disagree on the doubled shape",
                    mask_route=direct,
                    arithmetic_route=ifi_doubled,
                )
            )
    if ic != ifi_doubled:
        out.violations.append(
            _violation(
                shape,
                doubled=format_shape(doubled),
                ic_of_base=ic,
                ifi_of_doubled=ifi_doubled,
            )
        )
    return out


def _char_not_fi_violations(ctx: CheckContext, shape: GroupShape) -> list[dict]:
    lat = ctx.lattice(shape)
    out = []
    for h, c, f in zip(lat.subgroups, lat.char_flags, lat.fi_flags):
        if c and not f:
            out.append(
                _violation(
                    shape,
                    subgroup=subgroup_descriptor(h),
                    detail="characteristic but not fully invariant",
                )
            )
    return out


def _check_char_eq_fi_holds(ctx: CheckContext, shape: GroupShape) -> CheckOutcome:
    out = CheckOutcome()
    out.violations = _char_not_fi_violations(ctx, shape)
    return out


def _check_kaplansky(ctx: CheckContext, shape: GroupShape) -> CheckOutcome:
    out = CheckOutcome()
    lat = ctx.lattice(shape)
    eq = all(c == f for c, f in zip(lat.char_flags, lat.fi_flags))
    want = kaplansky_2group_predicate(shape)
    if eq != want:
        out.violations.append(
            _violation(shape, char_eq_fi=eq, ulm_predicate=want)
        )
    return out


def _check_no_weakly_ic(ctx: CheckContext, shape: GroupShape) -> CheckOutcome:
    out = CheckOutcome()
    lat = ctx.lattice(shape)
    for h, c in zip(lat.subgroups, lat.char_flags):
        if c and not h.is_full() and h.iso_type() == shape:
            out.violations.append(
                _violation(
                    shape,
                    subgroup=subgroup_descriptor(h),
                    detail="proper characteristic subgroup isomorphic to the whole group",
                )
            )
    return out


def _splits(n: int) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    return [(tuple(range(t)), tuple(range(t, n))) for t in range(1, n)]


def _check_split_stability(ctx: CheckContext, shape: GroupShape) -> CheckOutcome:
    out = CheckOutcome()
    n = shape.rank
    lat = ctx.lattice(shape)
    chars = lat.characteristic()
    srows = _stability_rows(shape)
    for a_pos, b_pos in _splits(n):
        for h in chars:
            for s in a_pos:
                for u in b_pos:
                    if not _stable_under(h.mask, (srows[u * n + s],)):
                        out.violations.append(
                            _violation(
                                shape,
                                split=[list(a_pos), list(b_pos)],
                                map_source=s,
                                map_target=u,
                                subgroup=subgroup_descriptor(h),
                                detail="left-to-right single-entry map leaves the subgroup",
                            )
                        )
            proj = project_onto_positions(h, a_pos)
            _, standalone = restrict_to_positions(proj, a_pos)
            if not is_characteristic(standalone):
                out.violations.append(
                    _violation(
                        shape,
                        split=[list(a_pos), list(b_pos)],
                        subgroup=subgroup_descriptor(h),
                        detail="left projection is not characteristic in the left summand",
                    )
                )
    return out


def _check_slice_sums(ctx: CheckContext, shape: GroupShape) -> CheckOutcome:
    out = CheckOutcome()
    n = shape.rank
    lat = ctx.lattice(shape)
    chars = lat.characteristic()
    decompositions = _splits(n)
    singletons = tuple((i,) for i in range(n))
    if singletons not in decompositions:
        decompositions = decompositions + [singletons]
    for parts in decompositions:
        for h in chars:
            pieces_inter = [
                Subgroup(shape, h.mask & _layer_mask(shape, pos)) for pos in parts
            ]
            pieces_proj = [project_onto_positions(h, pos) for pos in parts]
            for label, pieces in (
                ("sum of intersections", pieces_inter),
                ("sum of projections", pieces_proj),
            ):
                total = pieces[0]
                for piece in pieces[1:]:
                    total = subgroup_sum(total, piece)
                if not is_characteristic(total):
                    out.violations.append(
                        _violation(
                            shape,
                            parts=[list(p) for p in parts],
                            subgroup=subgroup_descriptor(h),
                            combination=label,
                            detail=f"{label} over the split is not characteristic",
                        )
                    )
    return out


def _check_odd_split_support(ctx: CheckContext, shape: GroupShape) -> CheckOutcome:
    out = CheckOutcome()
    lat = ctx.lattice(shape)
    chars = lat.characteristic()
    for a_pos, b_pos in _splits(shape.rank):
        amask = _layer_mask(shape, a_pos)
        bmask = _layer_mask(shape, b_pos)
        for h in chars:
            if h.mask & ~bmask and (h.mask & amask) == 1:
                out.violations.append(
                    _violation(
                        shape,
                        split=[list(a_pos), list(b_pos)],
                        subgroup=subgroup_descriptor(h),
                        detail="subgroup leaves the right summand but misses the left one",
                    )
                )
    return out


def _check_char_profiles(ctx: CheckContext, shape: GroupShape) -> CheckOutcome:
    out = CheckOutcome()
    levels = distinct_exponents(shape)
    if set(levels) != set(range(1, levels[-1] + 1)):
        out.adapted = True
        out.notes.append(
            f"{format_shape(shape)}: sparse exponent set, growth bound composed "
            "across the gaps (adapted statement)"
        )
    car = carrier(shape)
    lat = ctx.lattice(shape)
    for h in lat.characteristic():
        try:
            prof = projection_profile(h)
        except ProfileViolation as exc:
            out.violations.append(
                _violation(shape, subgroup=subgroup_descriptor(h), detail=str(exc))
            )
            continue
        if not prof.satisfies_bounds():
            out.violations.append(
                _violation(
                    shape,
                    subgroup=subgroup_descriptor(h),
                    profile=list(prof.n_values),
                    detail="projection exponent out of bounds",
                )
            )
        if not prof.satisfies_growth():
            out.violations.append(
                _violation(
                    shape,
                    subgroup=subgroup_descriptor(h),
                    profile=list(prof.n_values),
                    detail="projection exponents break the growth bound",
                )
            )
        nv = prof.as_dict()
        for pos_k, k in enumerate(levels):
            nk = nv[k]
            if nk < k:
                for k2 in levels[pos_k + 1:]:
                    tail = _layer_mask(shape, layer_positions(shape, k2)) & car.socle_mask(
                        k - nk
                    )
                    if tail & ~h.mask:
                        out.violations.append(
                            _violation(
                                shape,
                                subgroup=subgroup_descriptor(h),
                                levels=[k, k2],
                                detail="tail of a higher layer is not contained",
                            )
                        )
            positions = layer_positions(shape, k)
            if len(positions) >= 2:
                proj = project_onto_positions(h, positions)
                if not subgroup_contains(h, proj):
                    out.violations.append(
                        _violation(
                            shape,
                            subgroup=subgroup_descriptor(h),
                            level=k,
                            detail="projection onto a repeated-exponent layer escapes",
                        )
                    )
    return out


def _family_pinned_witnesses(ctx: CheckContext, corpus: Corpus) -> tuple[int, CheckOutcome]:
    out = CheckOutcome()
    if corpus.prime != 2:
        out.notes.append("pinned family lives at p = 2; nothing to check here")
        return 0, out
    checked = 0
    for i in range(1, 5):
        fam = make_shape(2, (1, 2 * i + 1))
        h = span(fam, [element(fam, (1, 2 ** i))])
        checked += 1
        if not is_characteristic(h):
            out.violations.append(
                _violation(
                    fam,
                    generator=[1, 2 ** i],
                    detail="pinned cyclic subgroup is not characteristic",
                )
            )
        if is_fully_invariant(h):
            out.violations.append(
                _violation(
                    fam,
                    generator=[1, 2 ** i],
                    detail="pinned cyclic subgroup is unexpectedly fully invariant",
                )
            )
    return checked, out


def _check_implications(ctx: CheckContext, shape: GroupShape) -> CheckOutcome:
    out = CheckOutcome()
    lat = ctx.lattice(shape)
    for h, c, f in zip(lat.subgroups, lat.char_flags, lat.fi_flags):
        if f and not c:
            out.violations.append(
                _violation(
                    shape,
                    subgroup=subgroup_descriptor(h),
                    detail="fully invariant flag without characteristic flag",
                )
            )
    chars = lat.characteristic()
    fis = lat.fully_invariant()
    ic = _pairwise_iso_witness(_nontrivial(chars)) is None
    ifi = _pairwise_iso_witness(_nontrivial(fis)) is None
    s_ic = _pairwise_iso_witness(_nonzero(chars)) is None
    s_ifi = _pairwise_iso_witness(_nonzero(fis)) is None
    rules = [
        ("ic implies ifi", ic, ifi),
        ("strongly ic implies ic", s_ic, ic),
        ("strongly ic implies strongly ifi", s_ic, s_ifi),
        ("strongly ifi implies ifi", s_ifi, ifi),
    ]
    for name, premise, conclusion in rules:
        if premise and not conclusion:
            out.violations.append(_violation(shape, rule=name, detail="implication broken"))
    return out


# ---- oracle cross-checks --------------------------------------------------------------

_SAMPLED_ENDOS = 48
_SUBGROUP_SCAN_LIMIT = 512
_CLOSURE_SCAN_LIMIT = 1024


def _shape_seed(shape: GroupShape) -> int:
    digest = hashlib.sha256(format_shape(shape).encode()).digest()
    return int.from_bytes(digest[:8], "big")


def _member_indices(mask: int) -> np.ndarray:
    out = []
    m = mask
    while m:
        low = m & -m
        out.append(low.bit_length() - 1)
        m ^= low
    return np.array(out, dtype=np.int64)


def _mask_stable_under(mask: int, tables: np.ndarray, size: int) -> bool:
    """True iff every table row maps the mask's members into the mask."""
    members = _member_indices(mask)
    flags = np.zeros(size, dtype=bool)
    flags[members] = True
    return bool(flags[tables[:, members]].all())


def _check_oracles(ctx: CheckContext, shape: GroupShape) -> CheckOutcome:
    out = CheckOutcome()
    car = carrier(shape)
    lat = ctx.lattice(shape)

    # profile route against the brute-force filter, and its arithmetic iso
    # types against mask-derived ones
    profile_subs = fi_from_profiles(shape)
    brute = {h.mask for h, f in zip(lat.subgroups, lat.fi_flags) if f}
    if brute != {h.mask for h in profile_subs}:
        out.violations.append(
            _violation(
                shape,
                check="profile-route-vs-brute",
                profile_count=len(profile_subs),
                brute_count=len(brute),
                detail="profile route and brute filtering disagree",
            )
        )
    arith = sorted(_iso_string(t) for _, t in fi_profile_iso_types(shape))
    masked = sorted(_iso_string(h.iso_type()) for h in profile_subs)
    if arith != masked:
        out.violations.append(
            _violation(
                shape,
                check="profile-iso-arithmetic",
                detail="arithmetic iso types disagree with mask iso types",
            )
        )

    # full closure against the filtered exhaustive enumeration, with the fast
    # invertibility test compared to table bijectivity on every endomorphism
    closure = None
    if endo_count(shape) > endo_oracle_cap():
        out.skips.append("closure-vs-filtered-endos")
    else:
        try:
            closure = aut_closure_tables(shape)
        except CapExceeded:
            out.skips.append("closure-vs-filtered-endos")
        if closure is not None:
            strides = list(car.strides)
            closure_keys = {tuple(int(t[s]) for s in strides) for t in closure}
            filtered_keys = set()
            for ents in endo_entry_batches(shape):
                tables = induced_tables_batch(shape, ents)
                bij = bijective_flags_by_table(tables)
                fast = automorphism_flags(shape, ents)
                for b in np.nonzero(bij != fast)[0]:
                    out.violations.append(
                        _violation(
                            shape,
                            check="fast-aut-vs-bijective-table",
                            entries=ents[b].tolist(),
                            fast=bool(fast[b]),
                            bijective=bool(bij[b]),
                        )
                    )
                keys = tables[bij][:, strides]
                filtered_keys.update(map(tuple, keys.tolist()))
            if closure_keys != filtered_keys:
                out.violations.append(
                    _violation(
                        shape,
                        check="closure-vs-filtered-endos",
                        closure_size=len(closure_keys),
                        filtered_size=len(filtered_keys),
                        detail="generator closure and filtered enumeration differ",
                    )
                )

    # fully-invariant flags against sampled random endomorphisms
    if len(lat.subgroups) <= _SUBGROUP_SCAN_LIMIT:
        rng = np.random.default_rng(_shape_seed(shape))
        rows = np.stack(
            [
                induced_table(random_endo(shape, rng), car)
                for _ in range(_SAMPLED_ENDOS)
            ]
        )
        for h, f in zip(lat.subgroups, lat.fi_flags):
            if f and not _mask_stable_under(h.mask, rows, car.n):
                out.violations.append(
                    _violation(
                        shape,
                        check="fi-flag-vs-random-endos",
                        subgroup=subgroup_descriptor(h),
                        detail="flagged fully invariant but a sampled endomorphism escapes",
                    )
                )
    else:
        out.skips.append("fi-flag-vs-random-endos")

    # characteristic flags (decided from generators) against the full closure
    if (
        closure is not None
        and len(closure) <= _CLOSURE_SCAN_LIMIT
        and len(lat.subgroups) <= _SUBGROUP_SCAN_LIMIT
    ):
        crows = np.stack(closure)
        for h, c in zip(lat.subgroups, lat.char_flags):
            if _mask_stable_under(h.mask, crows, car.n) != c:
                out.violations.append(
                    _violation(
                        shape,
                        check="char-flag-vs-closure",
                        subgroup=subgroup_descriptor(h),
                        detail="generator stability disagrees with closure stability",
                    )
                )
    else:
        out.skips.append("char-flag-vs-closure")
    return out


# ---- registry ------------------------------------------------------------------------


def _always(shape: GroupShape) -> bool:
    return True


def _rank_at_least_2(shape: GroupShape) -> bool:
    return shape.rank >= 2


def _all_exponents_at_most_2(shape: GroupShape) -> bool:
    return all(k <= 2 for k in shape.exponents)


def _all_multiplicities_at_least_2(shape: GroupShape) -> bool:
    exps = shape.exponents
    return all(exps.count(k) >= 2 for k in set(exps))


def _odd_prime_rank_2(shape: GroupShape) -> bool:
    return shape.prime != 2 and shape.rank >= 2


def _odd_prime(shape: GroupShape) -> bool:
    return shape.prime != 2


def _is_2_group(shape: GroupShape) -> bool:
    return shape.prime == 2


_REGISTRY: dict[str, ClaimSpec] = {}


def _register(spec: ClaimSpec) -> None:
    _REGISTRY[spec.claim_id] = spec


_register(ClaimSpec(
    "thm-2.1",
    "the squared shape is ifi exactly when the base shape is ic",
    "per-shape", applies=_always, check=_check_doubling,
))
_register(ClaimSpec(
    "thm-2.5-i",
    "ifi matches the closed-form exponent criterion",
    "per-shape", applies=_always, check=_check_ifi_criterion,
))
_register(ClaimSpec(
    "thm-2.5-ii",
    "strongly ifi holds exactly on exponent-1 shapes",
    "per-shape", applies=_always, check=_check_strongly_elementary,
))
_register(ClaimSpec(
    "sq-zero-char-eq-fi",
    "characteristic equals fully invariant when every exponent is at most 2",
    "per-shape", applies=_all_exponents_at_most_2, check=_check_char_eq_fi_holds,
))
_register(ClaimSpec(
    "lemma-2.14",
    "characteristic subgroups absorb left-to-right single-entry maps and "
    "project onto characteristic subgroups of the left summand",
    "per-shape", applies=_rank_at_least_2, check=_check_split_stability,
))
_register(ClaimSpec(
    "prop-2.15",
    "characteristic equals fully invariant when every summand has an "
    "isomorphic partner",
    "per-shape", applies=_all_multiplicities_at_least_2, check=_check_char_eq_fi_holds,
))
_register(ClaimSpec(
    "prop-2.16",
    "no shape has a proper characteristic subgroup isomorphic to itself",
    "per-shape", applies=_always, check=_check_no_weakly_ic,
    notes=(
        "bounded case: every finite group is bounded, so this sweeps the "
        "bounded instance of the statement and the existence scan must come "
        "back empty",
    ),
))
_register(ClaimSpec(
    "lemma-2.17",
    "sums of slice intersections and slice projections of a characteristic "
    "subgroup are characteristic",
    "per-shape", applies=_rank_at_least_2, check=_check_slice_sums,
))
_register(ClaimSpec(
    "remark-2.17-odd",
    "for odd primes, a characteristic subgroup that leaves the right summand "
    "meets the left summand",
    "per-shape", applies=_odd_prime_rank_2, check=_check_odd_split_support,
))
_register(ClaimSpec(
    "example-2.18",
    "the pinned cyclic witnesses in shapes 2:1,3 through 2:1,9 are "
    "characteristic and not fully invariant",
    "family", family=_family_pinned_witnesses,
))
_register(ClaimSpec(
    "lemma-2.25",
    "layer projections of characteristic subgroups are power subgroups with "
    "bounded, slowly growing exponents, contained tails, and absorbed "
    "repeated-layer projections",
    "per-shape", applies=_always, check=_check_char_profiles,
))
_register(ClaimSpec(
    "prop-2.26",
    "for 2-groups, characteristic equals fully invariant exactly when at most "
    "two multiplicity-one exponents occur and, if two, they are adjacent",
    "per-shape", applies=_is_2_group, check=_check_kaplansky,
))
_register(ClaimSpec(
    "odd-p-char-eq-fi",
    "exploratory: characteristic equals fully invariant on every odd-prime "
    "shape in range",
    "per-shape", applies=_odd_prime, check=_check_char_eq_fi_holds,
    notes=(
        "exploratory sweep beyond the stated p = 2 equivalence; a fail here "
        "is an empirical finding about the range, not an implementation bug",
    ),
))
_register(ClaimSpec(
    "defs-implications",
    "verdict implications (strong to plain, ic to ifi) and the "
    "fully-invariant-implies-characteristic flag invariant",
    "per-shape", applies=_always, check=_check_implications,
))
_register(ClaimSpec(
    "oracle-crosscheck",
    "internal shortcuts agree with independent brute-force oracles",
    "per-shape", applies=_always, check=_check_oracles,
))

for _claim_id, _reason in [
    ("thm-2.1-ipi", "the third equivalence clause names a group class that "
                    "comes with no definition; untestable"),
    ("torsion-free-branches", "homogeneous torsion-free groups of idempotent "
                              "type have no finite instances"),
    ("divisible-groups", "nontrivial divisible groups are infinite"),
    ("unbounded-weakly-ic", "weakly-ic existence results require unbounded "
                            "groups; every finite group is bounded"),
    ("separable-and-basic", "separable, torsion-complete, and basic-subgroup "
                            "results concern infinite groups"),
    ("endo-ring-examples", "the endomorphism-ring and p-adic constructions "
                           "build infinite groups"),
]:
    _register(ClaimSpec(_claim_id, "out of scope", "out-of-scope", reason=_reason))


def registry() -> dict[str, ClaimSpec]:
    return dict(_REGISTRY)


def runnable_claim_ids() -> list[str]:
    return [cid for cid, spec in _REGISTRY.items() if spec.kind != "out-of-scope"]


def all_claim_ids() -> list[str]:
    return list(_REGISTRY)


# ---- execution ------------------------------------------------------------------------


def _unit_cost(shape: GroupShape, claim_ids: list[str]) -> int:
    cost = shape.order * (2 ** shape.rank)
    if "oracle-crosscheck" in claim_ids:
        total = endo_count(shape)
        if total <= endo_oracle_cap():
            cost += total // 4
    return cost


def _run_unit(store: LatticeStore, shape: GroupShape, claim_ids: list[str]) -> dict:
    ctx = CheckContext(store)
    results = {}
    for cid in claim_ids:
        spec = _REGISTRY[cid]
        if not spec.applies(shape):
            continue
        started = time.perf_counter()
        outcome = spec.check(ctx, shape)
        elapsed_ms = int((time.perf_counter() - started) * 1000)
        results[cid] = (outcome, elapsed_ms)
    return results


_WORKER_STORE: Optional[LatticeStore] = None


def _worker_init(cache_dir) -> None:
    global _WORKER_STORE
    _WORKER_STORE = LatticeStore(LatticeCache(cache_dir) if cache_dir else None)


def _worker_run(args):
    shape, claim_ids = args
    return format_shape(shape), _run_unit(_WORKER_STORE, shape, claim_ids)


def run_claims(
    claim_ids,
    corpus: Corpus,
    *,
    jobs: int = 1,
    cache_dir=None,
    store: Optional[LatticeStore] = None,
) -> list[ClaimReport]:
    """One report per requested claim, in request order."""
    for cid in claim_ids:
        if cid not in _REGISTRY:
            raise UnknownClaimError(f"unknown claim: {cid}")
    per_shape = [c for c in claim_ids if _REGISTRY[c].kind == "per-shape"]
    families = [c for c in claim_ids if _REGISTRY[c].kind == "family"]
    out_of_scope = [c for c in claim_ids if _REGISTRY[c].kind == "out-of-scope"]

    unit_results: dict[str, dict] = {}
    if per_shape and corpus.shapes:
        units = sorted(
            corpus.shapes, key=lambda s: _unit_cost(s, per_shape), reverse=True
        )
        if jobs > 1 and len(units) > 1:
            import multiprocessing

            mp = multiprocessing.get_context("fork")
            with mp.Pool(jobs, initializer=_worker_init, initargs=(cache_dir,)) as pool:
                work = [(shape, per_shape) for shape in units]
                for key, res in pool.imap_unordered(_worker_run, work):
                    unit_results[key] = res
        else:
            local = store or LatticeStore(LatticeCache(cache_dir) if cache_dir else None)
            for shape in units:
                unit_results[format_shape(shape)] = _run_unit(local, shape, per_shape)

    reports = []
    for cid in claim_ids:
        spec = _REGISTRY[cid]
        report = ClaimReport(
            claim_id=cid,
            prime=corpus.prime,
            max_order=corpus.max_order,
            shapes_checked=0,
            status="pass",
            notes=list(spec.notes),
        )
        if spec.kind == "out-of-scope":
            report.status = "out-of-scope"
            report.notes.append(spec.reason)
            reports.append(report)
            continue

        started = time.perf_counter()
        adapted = False
        all_violations: list[dict] = []
        skip_shapes: dict[str, list[str]] = {}
        ran_units = 0
        if spec.kind == "family":
            local = store or LatticeStore(LatticeCache(cache_dir) if cache_dir else None)
            checked, outcome = spec.family(CheckContext(local), corpus)
            report.shapes_checked = checked
            all_violations.extend(outcome.violations)
            adapted = adapted or outcome.adapted
            report.notes.extend(outcome.notes)
            report.runtime_ms += int((time.perf_counter() - started) * 1000)
        else:
            for shape in corpus.shapes:
                res = unit_results.get(format_shape(shape), {})
                if cid not in res:
                    continue
                outcome, elapsed_ms = res[cid]
                report.runtime_ms += elapsed_ms
                if outcome.checked:
                    report.shapes_checked += 1
                    ran_units += 1
                adapted = adapted or outcome.adapted
                all_violations.extend(outcome.violations)
                report.notes.extend(outcome.notes)
                for name in outcome.skips:
                    skip_shapes.setdefault(name, []).append(format_shape(shape))
        for name in sorted(skip_shapes):
            shapes = skip_shapes[name]
            listed = ", ".join(shapes[:12]) + (", ..." if len(shapes) > 12 else "")
            report.notes.append(
                f"{name}: skipped on {len(shapes)} of {ran_units} shapes "
                f"(oracle caps): {listed}"
            )
        if spec.kind == "per-shape" and report.shapes_checked == 0:
            report.notes.append("no shape in this corpus matches the applicability filter")
        report.total_violations = len(all_violations)
        report.violations = all_violations[:MAX_STORED_VIOLATIONS]
        if all_violations:
            report.status = "fail"
        elif adapted:
            report.status = "adapted"
        reports.append(report)
    return reports


def verify_claim(claim_id: str, corpus: Corpus, **kwargs) -> ClaimReport:
    return run_claims([claim_id], corpus, **kwargs)[0]


def oracle_crosscheck(corpus: Corpus, **kwargs) -> ClaimReport:
    return verify_claim("oracle-crosscheck", corpus, **kwargs)
