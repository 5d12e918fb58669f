"""End-to-end audit runs and report rendering.

``run_audit`` wires corpus loading, the pipeline, the detection matrix,
all six classifiers and the coverage analytics into one deterministic
report. Capability figures (contribution, overlap, the definitional
classifiers) are computed on raw payloads; the deployed pipeline only
drives the bypass set and the inconsistency findings, and both views are
reported side by side rather than folded into one number.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from . import classify, corpus as corpus_mod, matcher, mutate, normalize, stats, structural
from .classify import AuditFinding, Label
from .corpus import Corpus
from .errors import IndeterminateExpansion, UnknownId

VERSION = "1.0.0"


@dataclass(frozen=True)
class AuditReport:
    version: str
    corpus_fingerprint: str
    pipeline_fingerprint: str
    capability_fingerprint: str  # fingerprint of the raw pipeline used for rows
    findings: tuple[AuditFinding, ...]
    profile: stats.ContributionProfile
    overlap: stats.OverlapStats | None
    set_a: tuple[str, ...] | None
    bypass_ids: tuple[str, ...]
    category_counts: dict
    notes: tuple[str, ...]

    def to_dict(self) -> dict:
        findings = []
        for f in self.findings:
            row = f.to_dict()
            row["corpus_fingerprint"] = self.corpus_fingerprint
            row["pipeline_fingerprint"] = self.pipeline_fingerprint
            findings.append(row)
        return {
            "version": self.version,
            "corpus_fingerprint": self.corpus_fingerprint,
            "pipeline_fingerprint": self.pipeline_fingerprint,
            "capability_fingerprint": self.capability_fingerprint,
            "findings": findings,
            "profile": self.profile.to_dict(),
            "overlap": self.overlap.to_dict() if self.overlap else None,
            "set_a": list(self.set_a) if self.set_a else None,
            "bypass": {"count": len(self.bypass_ids), "vector_ids": list(self.bypass_ids)},
            "category_counts": self.category_counts,
            "notes": list(self.notes),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "AuditReport":
        doc = json.loads(text)
        findings = tuple(
            AuditFinding(
                signature_id=row["signature"],
                label=Label(row["label"]),
                evidence=row["evidence"],
            )
            for row in doc["findings"]
        )
        profile = stats.ContributionProfile(
            entries=tuple(
                stats.ContributionEntry(
                    signature_id=row["signature"],
                    count=row["count"],
                    share_pct=row["share_pct"],
                )
                for row in doc["profile"]["ranking"]
            ),
            total_vectors=doc["profile"]["total_vectors"],
        )
        overlap = (
            stats.OverlapStats(**doc["overlap"]) if doc.get("overlap") else None
        )
        return cls(
            version=doc["version"],
            corpus_fingerprint=doc["corpus_fingerprint"],
            pipeline_fingerprint=doc["pipeline_fingerprint"],
            capability_fingerprint=doc["capability_fingerprint"],
            findings=findings,
            profile=profile,
            overlap=overlap,
            set_a=tuple(doc["set_a"]) if doc.get("set_a") else None,
            bypass_ids=tuple(doc["bypass"]["vector_ids"]),
            category_counts=doc["category_counts"],
            notes=tuple(doc["notes"]),
        )

    # rendering ------------------------------------------------------------

    def _finding_detail(self, f: AuditFinding) -> str:
        ev = f.evidence
        if f.label is Label.REDUNDANT:
            return ev.get("superseded_by") or ev.get("duplicate_of", "")
        if f.label is Label.INCOMPLETE:
            missing = sorted({m for v in ev["violations"] for m in v["missing"]})
            return "missing " + " ".join(missing)
        if f.label is Label.SEMI_RELEVANT:
            return "dead subrules " + " ".join(str(d["index"]) for d in ev["dead_subrules"])
        if f.label is Label.SUSCEPTIBLE:
            return ev["witnesses"][0]["mutant"] if ev["witnesses"] else ""
        if f.label is Label.INCONSISTENT:
            return " ".join(v["id"] for v in ev["vectors"])
        if f.label is Label.IRRELEVANT:
            return f"detects {ev['detected_count']} vectors, none logical"
        return ""

    def to_csv(self) -> str:
        lines = ["signature,label,detail"]
        for f in self.findings:
            detail = self._finding_detail(f).replace(",", ";")
            lines.append(f"{f.signature_id},{f.label.value},{detail}")
        return "\n".join(lines) + "\n"

    def to_text(self) -> str:
        out = []
        out.append(f"signature audit report (tool {self.version})")
        out.append(f"corpus   {self.corpus_fingerprint[:16]}")
        out.append(f"pipeline {self.pipeline_fingerprint[:16]}")
        out.append("")
        out.append("category counts")
        for label in Label:
            out.append(f"  {label.value:<13} {self.category_counts.get(label.value, 0)}")
        out.append("")
        top = self.profile.top() if self.profile.entries else None
        if top:
            out.append(
                f"top contributor: {top.signature_id} "
                f"({top.count}/{self.profile.total_vectors}, {top.share_pct}%)"
            )
        if self.overlap:
            o = self.overlap
            out.append(
                f"overlap A/B: both={o.both} only_a={o.only_a} "
                f"only_b={o.only_b} neither={o.neither}"
            )
        out.append(f"bypassed vectors: {len(self.bypass_ids)}")
        for label in Label:
            group = [f for f in self.findings if f.label is label]
            if not group:
                continue
            out.append("")
            out.append(f"{label.value} ({len(group)})")
            for f in group:
                out.append(f"  {f.signature_id:<6} {self._finding_detail(f)}")
        if self.notes:
            out.append("")
            out.append("notes")
            for note in self.notes:
                out.append(f"  - {note}")
        return "\n".join(out) + "\n"


def render(report: AuditReport, format: str = "json") -> bytes:
    """Serialize a report; json output is canonical (sorted keys)."""
    if format == "json":
        return report.to_json().encode("utf-8")
    if format == "text":
        return report.to_text().encode("utf-8")
    if format == "csv":
        return report.to_csv().encode("utf-8")
    raise ValueError(f"unknown format: {format!r}")


def _lexicon_covering(families) -> structural.OperatorLexicon:
    """The default lexicon extended with every family member, so custom
    families can actually be found in pattern sources."""
    base = structural.default_lexicon()
    members = {m for fam in families for m in fam.members}
    words = {m for m in members if all(ch.isalnum() or ch == "_" for ch in m)}
    return structural.OperatorLexicon(
        word_ops=base.word_ops | words,
        symbol_ops=base.symbol_ops | (members - words),
    )


def _load_pipeline(pipeline_path, raw: bool) -> tuple[normalize.Pipeline, list[str]]:
    notes = []
    if raw:
        return normalize.RAW_PIPELINE, notes
    if pipeline_path is None:
        notes.append(
            "default pipeline and prefilter approximate the IDS pre-processing; "
            "they are reverse engineered from observed bypasses, not vendor source"
        )
        return normalize.default_pipeline(), notes
    return normalize.Pipeline.from_json(Path(pipeline_path).read_text(encoding="utf-8")), notes


def run_audit(
    sig_path=None,
    vec_path=None,
    pipeline_path=None,
    raw: bool = False,
    set_a_path=None,
    families=None,
    seed: int = 0,
    jobs: int = 1,
    case_sensitive: bool = False,
    corpus: Corpus | None = None,
) -> AuditReport:
    """Run the full audit and return a deterministic report.

    Falls back to the bundled corpus when no paths are given. ``jobs``
    only bounds matrix workers; output is identical for any value.
    """
    if corpus is None:
        if sig_path is None or vec_path is None:
            corpus = corpus_mod.bundled_corpus()
        else:
            corpus = corpus_mod.load_corpus(sig_path, vec_path)

    pipeline, notes = _load_pipeline(pipeline_path, raw)
    families = families if families is not None else classify.default_families()
    lexicon = _lexicon_covering(families)
    config = mutate.MutationConfig(seed=seed)

    raw_matrix = matcher.detection_matrix(
        corpus, normalize.RAW_PIPELINE, case_sensitive=case_sensitive, jobs=jobs
    )
    logical = corpus_mod.logical_subset(corpus)
    if not corpus.vectors:
        notes.append("WARNING: empty vector corpus, every signature is vacuously irrelevant")

    findings: list[AuditFinding] = []
    irrelevant_ids = set()
    for sig in corpus.signatures:
        detected_ids = raw_matrix.detected_ids(sig.id)

        tokenized = structural.extract_operators(sig, lexicon)
        finding = classify.classify_incomplete(tokenized, families)
        if finding:
            findings.append(finding)

        finding = classify.classify_irrelevant(sig.id, detected_ids, logical)
        if finding:
            findings.append(finding)
            irrelevant_ids.add(sig.id)
            continue  # dead rules are not probed or expanded further

        try:
            subs = structural.expand_subrules(sig)
            finding = classify.classify_semirelevant(subs, corpus, logical)
            if finding:
                findings.append(finding)
        except IndeterminateExpansion:
            notes.append(f"{sig.id}: sub-rule expansion hit caps, semi-relevance not classified")

        bounds = structural.bounded_specials(sig)
        if bounds:
            ordered = [v for v in corpus.vectors if v.id in detected_ids]
            finding = classify.probe_susceptible(
                sig, ordered, bounds, config, case_sensitive=case_sensitive
            )
            if finding:
                findings.append(finding)

    for finding in classify.classify_redundant(raw_matrix):
        if finding.signature_id not in irrelevant_ids:
            findings.append(finding)

    findings.extend(classify.classify_inconsistent(corpus, pipeline, case_sensitive))
    findings.sort(key=AuditFinding.sort_key)

    profile = stats.contribution(raw_matrix)

    set_a = None
    overlap = None
    if set_a_path is not None:
        text = Path(set_a_path).read_text(encoding="utf-8")
        set_a = tuple(l.strip() for l in text.splitlines() if l.strip() and not l.startswith("#"))
    else:
        candidate = tuple(corpus_mod.bundled_set_a())
        if set(candidate) <= set(raw_matrix.signature_ids):
            set_a = candidate
    if set_a:
        try:
            a, b = stats.partition(raw_matrix, ids=list(set_a))
            overlap = stats.overlap(raw_matrix, a, b)
        except UnknownId:
            notes.append("set A list does not match this corpus, overlap skipped")
            set_a = None

    bypass_ids = tuple(sorted(matcher.full_pipeline_bypass(corpus, pipeline, case_sensitive)))

    category_counts = {label.value: 0 for label in Label}
    for f in findings:
        category_counts[f.label.value] += 1

    return AuditReport(
        version=VERSION,
        corpus_fingerprint=corpus.fingerprint,
        pipeline_fingerprint=pipeline.fingerprint,
        capability_fingerprint=normalize.RAW_PIPELINE.fingerprint,
        findings=tuple(findings),
        profile=profile,
        overlap=overlap,
        set_a=set_a,
        bypass_ids=bypass_ids,
        category_counts=category_counts,
        notes=tuple(notes),
    )
