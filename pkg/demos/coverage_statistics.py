#!/usr/bin/env python3
"""Detection-coverage statistics over the bundled corpus.

Reproduces the case-study numbers: a handful of generic rules carry
most of the detection load, and ten of them cover nearly as much as the
other seventy-three combined.
"""

from sig_audit import bundled_corpus, bundled_set_a, contribution, detection_matrix, overlap, partition
from sig_audit.normalize import RAW_PIPELINE

corpus = bundled_corpus()
matrix = detection_matrix(corpus, RAW_PIPELINE)

profile = contribution(matrix)
total = profile.total_vectors
print(f"{len(corpus.signatures)} signatures x {total} vectors")
print()
print("top ten contributors")
for entry in profile.entries[:10]:
    bar = "#" * (entry.count // 5)
    print(f"  {entry.signature_id:<5} {entry.count:>3} ({entry.share_pct:>4}%) {bar}")
print()

set_a = bundled_set_a()
a, b = partition(matrix, ids=set_a)
o = overlap(matrix, a, b)
print(f"set A ({len(a)} generic rules) detects {o.both + o.only_a}/{total}")
print(f"set B ({len(b)} specific rules) detects {o.both + o.only_b}/{total}")
print(f"detected by both sets: {o.both} ({100 * o.both / total:.1f}%)")
print(f"only set A:            {o.only_a} ({100 * o.only_a / total:.1f}%)")
print(f"only set B:            {o.only_b} ({100 * o.only_b / total:.1f}%)")
print(f"undetected:            {o.neither}")
print()

# a generic rule swallowing its specific variants
from sig_audit.classify import classify_redundant

superseded_by_72 = sorted(
    f.signature_id
    for f in classify_redundant(matrix)
    if f.evidence.get("superseded_by") == "S_72"
)
print("rules superseded by the generic stacked-query rule S_72:", superseded_by_72)
