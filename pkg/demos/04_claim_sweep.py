"""Claim sweeps through the library API.

The CLI's `verify` subcommand is a thin wrapper over run_claims(); this runs a
few claims directly on a small corpus and shows how the reports are shaped.
The same thing from a shell:

    pgroups verify --p 2 --max-order 32 --claims prop-2.26,lemma-2.25,example-2.18
"""

from pgroups import build_corpus, registry, run_claims

corpus = build_corpus(2, 32)
print(f"corpus: p={corpus.prime}, {len(corpus.shapes)} shapes up to order "
      f"{corpus.max_order}\n")

wanted = ["prop-2.26", "lemma-2.25", "example-2.18", "oracle-crosscheck"]
for report in run_claims(wanted, corpus):
    spec = registry()[report.claim_id]
    print(f"{report.claim_id}: {report.status} "
          f"({report.shapes_checked} shapes, "
          f"{report.total_violations} violations, {report.runtime_ms} ms)")
    print(f"  {spec.summary}")
    for note in report.notes:
        print(f"  note: {note}")
    print()

print("every runnable claim id:")
for cid, spec in sorted(registry().items()):
    if spec.kind != "out-of-scope":
        print(f"  {cid:20s} {spec.summary}")
