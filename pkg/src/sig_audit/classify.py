"""The six weakness classifiers.

Five are set-theoretic over corpus-relative detection sets (incomplete,
irrelevant, semi-relevant, redundant, inconsistent); susceptibility is
probed by mutation. Coverage sets are corpus-relative by construction:
"what a rule detects" means detected vectors of the supplied corpus,
so findings always travel with the corpus fingerprint.

Capability questions (irrelevant, semi-relevant, redundant, probing)
are answered against raw payloads; only the inconsistency check brings
in the deployed pipeline, since it measures the gap between what rules
could detect and what the deployed stack lets through.
"""

from __future__ import annotations

import enum
import json
import re
from dataclasses import dataclass

from . import matcher, mutate, normalize
from .corpus import AttackVector, Corpus
from .errors import IndeterminateExpansion, ParseError
from .matcher import DetectionMatrix, compile_signature
from .structural import QuantifierBound, SubRuleSet, TokenizedSignature


class Label(str, enum.Enum):
    INCOMPLETE = "Incomplete"
    IRRELEVANT = "Irrelevant"
    SEMI_RELEVANT = "SemiRelevant"
    SUSCEPTIBLE = "Susceptible"
    REDUNDANT = "Redundant"
    INCONSISTENT = "Inconsistent"


@dataclass(frozen=True)
class RelatedOperatorFamily:
    """Operators interchangeable in an attack; a rule matching some but
    not all members can be evaded with the missing ones."""

    name: str
    members: frozenset[str]

    def __post_init__(self):
        if len(self.members) < 2:
            raise ValueError("a related-operator family needs at least 2 members")


def default_families() -> list[RelatedOperatorFamily]:
    return [
        RelatedOperatorFamily("logical_words", frozenset({"and", "or", "xor"})),
        RelatedOperatorFamily("logical_symbols", frozenset({"||", "&&", "^", "|", "&"})),
    ]


def load_families(source) -> list[RelatedOperatorFamily]:
    """Load extra families from a JSON array of {name, members} objects."""
    if hasattr(source, "read"):
        text = source.read()
    else:
        text = source.read_text(encoding="utf-8") if hasattr(source, "read_text") else str(source)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid families JSON: {exc}") from exc
    return [
        RelatedOperatorFamily(row["name"], frozenset(row["members"])) for row in doc
    ]


@dataclass(frozen=True)
class AuditFinding:
    """One weakness classification with re-checkable evidence."""

    signature_id: str
    label: Label
    evidence: dict

    def sort_key(self):
        return (self.signature_id, self.label.value, json.dumps(self.evidence, sort_keys=True))

    def to_dict(self) -> dict:
        return {
            "signature": self.signature_id,
            "label": self.label.value,
            "evidence": self.evidence,
        }


# ---------------------------------------------------------------------------
# incomplete (related-operator families)

def classify_incomplete(
    tokenized: TokenizedSignature,
    families: list[RelatedOperatorFamily] | None = None,
) -> AuditFinding | None:
    """Flag a rule that names some but not all members of a family."""
    families = families if families is not None else default_families()
    violations = []
    ops = tokenized.operators
    for fam in families:
        if fam.members & ops and not fam.members <= ops:
            violations.append(
                {
                    "family": fam.name,
                    "present": sorted(fam.members & ops),
                    "missing": sorted(fam.members - ops),
                }
            )
    if not violations:
        return None
    return AuditFinding(
        signature_id=tokenized.signature_id,
        label=Label.INCOMPLETE,
        evidence={"violations": violations},
    )


# ---------------------------------------------------------------------------
# irrelevant (no logical vector detected)

def classify_irrelevant(
    signature_id: str,
    detected_ids: frozenset[str],
    logical_ids: frozenset[str],
) -> AuditFinding | None:
    """Flag a rule whose detected set misses the logical class entirely.

    The detected set must come from the raw (empty) pipeline: this is a
    statement about rule capability, not deployment behavior.
    """
    hits = detected_ids & logical_ids
    if hits:
        return None
    return AuditFinding(
        signature_id=signature_id,
        label=Label.IRRELEVANT,
        evidence={"detected_count": len(detected_ids), "logical_hits": []},
    )


# ---------------------------------------------------------------------------
# semi-relevant (dead sub-rules)

def classify_semirelevant(
    subs: SubRuleSet,
    corpus: Corpus,
    logical_ids: frozenset[str],
    pipeline: normalize.Pipeline = normalize.RAW_PIPELINE,
    case_sensitive: bool = False,
) -> AuditFinding | None:
    """Flag a rule where some criteria never fire on logical vectors.

    Needs a complete expansion; a rule whose every sub-rule is dead is
    the irrelevant case and is not reported here.
    """
    if not subs.expansion_complete:
        raise IndeterminateExpansion(subs.signature_id)
    if len(subs.subrules) < 2:
        return None

    logical_payloads = [
        (v.id, normalize.apply(pipeline, v.payload))
        for v in corpus.vectors
        if v.id in logical_ids
    ]
    flags = 0 if case_sensitive else re.IGNORECASE
    dead = []
    live = 0
    for idx, source in enumerate(subs.subrules):
        pat = re.compile(source, flags)
        if any(pat.search(text) for _, text in logical_payloads):
            live += 1
        else:
            dead.append({"index": idx, "source": source})
    if not dead or not live:
        return None
    return AuditFinding(
        signature_id=subs.signature_id,
        label=Label.SEMI_RELEVANT,
        evidence={"dead_subrules": dead, "live_count": live},
    )


# ---------------------------------------------------------------------------
# susceptible (bounded quantifier beaten by repetition)

def probe_susceptible(
    signature,
    detected: list[AttackVector],
    bounds: list[QuantifierBound],
    config: mutate.MutationConfig | None = None,
    pipeline: normalize.Pipeline = normalize.RAW_PIPELINE,
    case_sensitive: bool = False,
) -> AuditFinding | None:
    """Probe each bound with repetition mutants of detected seeds.

    A rule is susceptible when a semantics-preserving mutant that only
    repeats a freely repeatable character escapes it. One witness is
    kept per (bound, first escaping seed).
    """
    if not detected or not bounds:
        return None
    config = config or mutate.MutationConfig()
    compiled = compile_signature(signature, case_sensitive)
    witnesses = []
    exploited = []
    for bound in bounds:
        found = None
        for seed in detected:
            mutants = mutate.targeted_repeats(seed.payload, bound)[: config.budget]
            for mutant, scheme in mutants:
                if not scheme.semantics_preserving:
                    continue
                if not matcher.matches(compiled, normalize.apply(pipeline, mutant)):
                    found = {
                        "seed_vector": seed.id,
                        "seed_payload": seed.payload,
                        "mutant": mutant,
                        "scheme": scheme.name,
                    }
                    break
            if found:
                break
        if found:
            witnesses.append(found)
            exploited.append(
                {
                    "position": bound.position,
                    "char_class": bound.char_class,
                    "max_occurrences": bound.max_occurrences,
                }
            )
    if not witnesses:
        return None
    return AuditFinding(
        signature_id=signature.id,
        label=Label.SUSCEPTIBLE,
        evidence={"bounds": exploited, "witnesses": witnesses},
    )


# ---------------------------------------------------------------------------
# redundant (row strictly inside another row)

def classify_redundant(matrix: DetectionMatrix) -> list[AuditFinding]:
    """Rules whose detected set sits strictly inside another rule's.

    Empty rows are the irrelevant case and are excluded. Equal non-empty
    rows are reported once, on the lexicographically larger id, tagged
    as duplicates.
    """
    findings = []
    ids = matrix.signature_ids
    rows = matrix.rows
    n = len(ids)
    for i in range(n):
        if rows[i] == 0:
            continue
        for j in range(n):
            if i == j or rows[j] == 0:
                continue
            if rows[i] == rows[j]:
                if ids[i] > ids[j]:
                    findings.append(
                        AuditFinding(
                            signature_id=ids[i],
                            label=Label.REDUNDANT,
                            evidence={"duplicate_of": ids[j]},
                        )
                    )
            elif rows[i] & ~rows[j] == 0:
                findings.append(
                    AuditFinding(
                        signature_id=ids[i],
                        label=Label.REDUNDANT,
                        evidence={"superseded_by": ids[j]},
                    )
                )
    findings.sort(key=AuditFinding.sort_key)
    return findings


# ---------------------------------------------------------------------------
# inconsistent (deployed stack passes vectors the rules can detect)

def classify_inconsistent(
    corpus: Corpus,
    pipeline: normalize.Pipeline,
    case_sensitive: bool = False,
) -> list[AuditFinding]:
    """Rules that raw-match vectors the deployed pipeline lets through.

    Evidence names the stage responsible per vector, found by replaying
    the stages: a prefilter skip or a transform that mangles the payload
    out of the rule's reach.
    """
    bypassed = matcher.full_pipeline_bypass(corpus, pipeline, case_sensitive)
    if not bypassed:
        return []
    raw = matcher.detection_matrix(corpus, normalize.RAW_PIPELINE, case_sensitive)
    payloads = {v.id: v.payload for v in corpus.vectors}
    findings = []
    for sid in raw.signature_ids:
        hits = sorted(raw.detected_ids(sid) & bypassed)
        if not hits:
            continue
        detail = []
        for vid in hits:
            transformed = normalize.apply(pipeline, payloads[vid])
            if not normalize.prefilter_pass(pipeline, transformed):
                stage = "prefilter-skip"
            else:
                stage = "transform-mangle"
            detail.append({"id": vid, "stage": stage})
        findings.append(
            AuditFinding(
                signature_id=sid,
                label=Label.INCONSISTENT,
                evidence={"vectors": detail},
            )
        )
    findings.sort(key=AuditFinding.sort_key)
    return findings
