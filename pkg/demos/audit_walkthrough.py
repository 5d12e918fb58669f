#!/usr/bin/env python3
"""End-to-end audit of the bundled PHPIDS SQL-injection rule set.

Runs the whole chain (corpus -> pipeline -> matrix -> classifiers) and
prints a digest of what each weakness category found.
"""

from sig_audit import run_audit
from sig_audit.classify import Label

report = run_audit()

print("corpus fingerprint ", report.corpus_fingerprint[:16])
print("pipeline fingerprint", report.pipeline_fingerprint[:16])
print()

print("weakness counts")
for label in Label:
    print(f"  {label.value:<13} {report.category_counts[label.value]}")
print()

# one concrete exhibit per category
for label in Label:
    group = [f for f in report.findings if f.label is label]
    if not group:
        continue
    f = group[0]
    print(f"{label.value}: {f.signature_id}")
    if label is Label.INCOMPLETE:
        v = f.evidence["violations"][0]
        print(f"  family {v['family']}: has {v['present']}, missing {v['missing']}")
    elif label is Label.SEMI_RELEVANT:
        dead = f.evidence["dead_subrules"]
        print(f"  {len(dead)} dead sub-rules, e.g. {dead[0]['source']}")
    elif label is Label.SUSCEPTIBLE:
        w = f.evidence["witnesses"][0]
        print(f"  seed   {w['seed_payload']!r}")
        print(f"  mutant {w['mutant']!r} escapes the rule")
    elif label is Label.REDUNDANT:
        print(f"  superseded by {f.evidence.get('superseded_by')}")
    elif label is Label.INCONSISTENT:
        v = f.evidence["vectors"][0]
        print(f"  vector {v['id']} lost at stage: {v['stage']}")
    print()

print("vectors bypassing the deployed stack:", list(report.bypass_ids))
for note in report.notes:
    print("note:", note)
