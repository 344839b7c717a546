"""Verdicts about a group's characteristic / fully invariant landscape.

Conventions: "non-trivial" excludes both {0} and G, "non-zero" excludes only
{0}.  The verdicts:

* ifi: all non-trivial fully invariant subgroups are pairwise isomorphic
* ic: all non-trivial characteristic subgroups are pairwise isomorphic
* strongly_ifi / strongly_ic: same but over non-zero subgroups (so G itself
  participates, and for finite groups this forces the lattice to be {0, G})
* weakly_ic: some proper characteristic subgroup is isomorphic to G itself;
  impossible for finite groups on cardinality grounds, but computed honestly
  by scanning, not short-circuited

`ifi_criterion` is the closed-form test the ifi verdict is measured against
on sweeps: pG = 0, or p^2 G = 0 with rank(G) = rank(pG); for shapes that
reads "all exponents equal 1 or all exponents equal 2".

Every false verdict carries a minimal witness in enumeration order.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import GroupShape, format_shape
from .invariance import enumerate_characteristic, fi_from_profiles
from .lattice import Subgroup, enumerate_subgroups


def subgroup_descriptor(h: Subgroup) -> dict:
    """JSON-able snapshot: order, canonical generators, iso type."""
    iso = h.iso_type()
    return {
        "order": h.order,
        "generators": [list(g.coords) for g in h.generators],
        "iso_type": None if iso.is_trivial_marker() else format_shape(iso),
    }


def _pairwise_iso_witness(subs: list[Subgroup]):
    """None if all listed subgroups share an iso type, else the first clash."""
    if not subs:
        return None
    first = subs[0]
    t0 = first.iso_type()
    for other in subs[1:]:
        if other.iso_type() != t0:
            return {
                "first": subgroup_descriptor(first),
                "second": subgroup_descriptor(other),
            }
    return None


def _nontrivial(subs: list[Subgroup]) -> list[Subgroup]:
    return [h for h in subs if not h.is_trivial() and not h.is_full()]


def _nonzero(subs: list[Subgroup]) -> list[Subgroup]:
    return [h for h in subs if not h.is_trivial()]


def ifi_criterion(shape: GroupShape) -> bool:
    """Closed-form ifi test: every exponent is 1, or every exponent is 2."""
    exps = set(shape.exponents)
    return exps == {1} or exps == {2}


def classify_ifi(shape: GroupShape) -> bool:
    return _pairwise_iso_witness(_nontrivial(fi_from_profiles(shape))) is None


def classify_ic(shape: GroupShape, subgroups=None) -> bool:
    chars = enumerate_characteristic(shape, subgroups)
    return _pairwise_iso_witness(_nontrivial(chars)) is None


def classify_strongly_ifi(shape: GroupShape) -> bool:
    return _pairwise_iso_witness(_nonzero(fi_from_profiles(shape))) is None


def classify_strongly_ic(shape: GroupShape, subgroups=None) -> bool:
    chars = enumerate_characteristic(shape, subgroups)
    return _pairwise_iso_witness(_nonzero(chars)) is None


def classify_strongly(shape: GroupShape, subgroups=None) -> tuple[bool, bool]:
    """(strongly ifi, strongly ic)."""
    return (
        classify_strongly_ifi(shape),
        classify_strongly_ic(shape, subgroups),
    )


def classify_weakly_ic(shape: GroupShape, subgroups=None) -> bool:
    chars = enumerate_characteristic(shape, subgroups)
    return any(
        not h.is_full() and h.iso_type() == shape for h in chars
    )


@dataclass(frozen=True)
class ClassificationVerdict:
    shape: GroupShape
    is_ifi: bool
    is_ic: bool
    is_strongly_ifi: bool
    is_strongly_ic: bool
    is_weakly_ic: bool
    criterion_ifi: bool
    char_eq_fi: bool
    witnesses: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "shape": format_shape(self.shape),
            "is_ifi": self.is_ifi,
            "is_ic": self.is_ic,
            "is_strongly_ifi": self.is_strongly_ifi,
            "is_strongly_ic": self.is_strongly_ic,
            "is_weakly_ic": self.is_weakly_ic,
            "criterion_ifi": self.criterion_ifi,
            "char_eq_fi": self.char_eq_fi,
            "witnesses": self.witnesses,
        }


def classify(shape: GroupShape, subgroups=None) -> ClassificationVerdict:
    """Full verdict.  Needs the subgroup lattice, so the enumeration cap
    applies; pass `subgroups` to reuse one already enumerated."""
    if subgroups is None:
        subgroups = enumerate_subgroups(shape)
    fi = fi_from_profiles(shape)
    chars = enumerate_characteristic(shape, subgroups)
    char_eq_fi = {h.mask for h in chars} == {h.mask for h in fi}

    witnesses: dict = {}
    ifi_w = _pairwise_iso_witness(_nontrivial(fi))
    ic_w = _pairwise_iso_witness(_nontrivial(chars))
    s_ifi_w = _pairwise_iso_witness(_nonzero(fi))
    s_ic_w = _pairwise_iso_witness(_nonzero(chars))
    weakly_hits = [
        h for h in chars if not h.is_full() and h.iso_type() == shape
    ]
    if ifi_w:
        witnesses["ifi"] = ifi_w
    if ic_w:
        witnesses["ic"] = ic_w
    if s_ifi_w:
        witnesses["strongly_ifi"] = s_ifi_w
    if s_ic_w:
        witnesses["strongly_ic"] = s_ic_w
    if weakly_hits:
        # can only happen for infinite groups; recorded for honesty
        witnesses["weakly_ic"] = subgroup_descriptor(weakly_hits[0])

    return ClassificationVerdict(
        shape=shape,
        is_ifi=ifi_w is None,
        is_ic=ic_w is None,
        is_strongly_ifi=s_ifi_w is None,
        is_strongly_ic=s_ic_w is None,
        is_weakly_ic=bool(weakly_hits),
        criterion_ifi=ifi_criterion(shape),
        char_eq_fi=char_eq_fi,
        witnesses=witnesses,
    )
