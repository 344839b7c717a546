"""The IFI / IC taxonomy over a small corpus.

classify() decides, for one shape, whether all nontrivial fully invariant
(resp. characteristic) subgroups are pairwise isomorphic, the strong variants
that include the endpoints, the weak variant asking for a proper characteristic
subgroup isomorphic to the whole group, and whether the two invariance notions
coincide.  Here the verdicts are tabulated for every 2-group of order <= 32.
"""

from pgroups import build_corpus, classify, format_shape

corpus = build_corpus(2, 32)
cols = ("ifi", "ic", "s_ifi", "s_ic", "weak", "c=fi")
print(f"{'shape':10s} " + " ".join(f"{c:>5s}" for c in cols))
for shape in corpus.shapes:
    v = classify(shape)
    row = (
        v.is_ifi,
        v.is_ic,
        v.is_strongly_ifi,
        v.is_strongly_ic,
        v.is_weakly_ic,
        v.char_eq_fi,
    )
    print(f"{format_shape(shape):10s} "
          + " ".join(f"{'x' if b else '.':>5s}" for b in row))

# when a verdict is negative the witnesses say why
v = classify(next(s for s in corpus.shapes if format_shape(s) == "2:1,3"))
w = v.witnesses["ifi"]
print(f"\n2:1,3 fails ifi: order-{w['first']['order']} {w['first']['iso_type']} "
      f"vs order-{w['second']['order']} {w['second']['iso_type']}")
