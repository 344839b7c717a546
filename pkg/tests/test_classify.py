"""Classification verdicts: frozen truth table plus structural checks."""

import pytest

from pgroups.classify import (
    classify,
    classify_ic,
    classify_ifi,
    classify_strongly,
    classify_strongly_ic,
    classify_strongly_ifi,
    classify_weakly_ic,
    ifi_criterion,
    subgroup_descriptor,
)
from pgroups.core import make_shape
from pgroups.harness import build_corpus
from pgroups.lattice import enumerate_subgroups, trivial_subgroup

# (ifi, ic, strongly_ifi, strongly_ic, weakly, criterion, char_eq_fi)
VERDICTS = {
    (2, (1,)): (True, True, True, True, False, True, True),
    (2, (2,)): (True, True, False, False, False, True, True),
    (2, (3,)): (False, False, False, False, False, False, True),
    (2, (1, 1)): (True, True, True, True, False, True, True),
    (5, (1, 1)): (True, True, True, True, False, True, True),
    (2, (2, 2)): (True, True, False, False, False, True, True),
    (2, (1, 2)): (False, False, False, False, False, False, True),
    (3, (1, 2)): (False, False, False, False, False, False, True),
    (2, (1, 3)): (False, False, False, False, False, False, False),
    (2, (1, 1, 2)): (False, False, False, False, False, False, True),
}


@pytest.mark.parametrize("key", sorted(VERDICTS))
def test_frozen_verdicts(key):
    p, exps = key
    shape = make_shape(p, exps)
    v = classify(shape)
    got = (
        v.is_ifi,
        v.is_ic,
        v.is_strongly_ifi,
        v.is_strongly_ic,
        v.is_weakly_ic,
        v.criterion_ifi,
        v.char_eq_fi,
    )
    assert got == VERDICTS[key]


def test_individual_classifiers_match_full_verdict():
    for key in VERDICTS:
        shape = make_shape(key[0], key[1])
        v = classify(shape)
        assert classify_ifi(shape) == v.is_ifi
        assert classify_ic(shape) == v.is_ic
        assert classify_strongly_ifi(shape) == v.is_strongly_ifi
        assert classify_strongly_ic(shape) == v.is_strongly_ic
        assert classify_weakly_ic(shape) == v.is_weakly_ic
        assert classify_strongly(shape) == (v.is_strongly_ifi, v.is_strongly_ic)


@pytest.mark.parametrize(
    "p,exps,expected",
    [
        (2, [1, 1, 1, 1, 1], True),
        (3, [1, 1], True),
        (2, [2, 2, 2], True),
        (2, [2], True),
        (2, [1, 2], False),
        (2, [3], False),
        (2, [1, 1, 2], False),
        (3, [1, 1, 2, 2], False),
    ],
)
def test_ifi_criterion_closed_form(p, exps, expected):
    # pG = 0, or p^2 G = 0 with as many order-p^2 summands as summands
    assert ifi_criterion(make_shape(p, exps)) == expected


def test_witness_structure_for_2_1_3():
    v = classify(make_shape(2, [1, 3]))
    assert set(v.witnesses) == {"ifi", "ic", "strongly_ifi", "strongly_ic"}
    w = v.witnesses["ifi"]
    assert w["first"]["order"] == 2
    assert w["first"]["iso_type"] == "2:1"
    assert w["second"]["order"] == 4
    assert w["second"]["iso_type"] == "2:1,1"


def test_no_witnesses_when_everything_agrees():
    v = classify(make_shape(2, [1, 1]))
    assert v.witnesses == {}


def test_classify_accepts_precomputed_lattice():
    shape = make_shape(2, [1, 3])
    subs = enumerate_subgroups(shape)
    assert classify(shape, subgroups=subs) == classify(shape)


def test_verdict_serialization_round_trip():
    d = classify(make_shape(2, [2, 2])).to_dict()
    assert d["shape"] == "2:2,2"
    assert d["is_ifi"] is True and d["is_strongly_ifi"] is False
    assert set(d) == {
        "shape",
        "is_ifi",
        "is_ic",
        "is_strongly_ifi",
        "is_strongly_ic",
        "is_weakly_ic",
        "criterion_ifi",
        "char_eq_fi",
        "witnesses",
    }


def test_weakly_ic_false_across_small_corpora():
    for corpus in (build_corpus(2, 32), build_corpus(3, 27)):
        for shape in corpus.shapes:
            assert not classify_weakly_ic(shape), shape


def test_subgroup_descriptor_of_trivial():
    d = subgroup_descriptor(trivial_subgroup(make_shape(2, [1, 2])))
    assert d == {"order": 1, "generators": [], "iso_type": None}
