"""Signature sets and attack-vector corpora.

Loads, validates and queries the rule/vector data an audit runs over,
including the bundled PHPIDS SQL-injection set (83 signatures, 5 crafted
vectors each). Payloads are stored exactly as submitted, still
URL-encoded; decoding is the pipeline's job, never the loader's.

File formats:
  signature TSV: id<TAB>pattern[<TAB>note]   '#' comment lines ignored
  vector TSV:    id<TAB>target<TAB>intent<TAB>dialects<TAB>payload
  JSON mirrors:  arrays of objects with the same field names
"""

from __future__ import annotations

import enum
import hashlib
import json
import os
from dataclasses import dataclass, field
from pathlib import Path

from .errors import DuplicateId, ParseError, UnknownIntent, UnknownSignatureRef

FREE_FLOATING = "none"  # sentinel target for probes not tied to a rule


class Intent(enum.Enum):
    """What a vector is built to achieve on the target database."""

    EXEC_UNAUTHORIZED = "exec"
    LOGIC_ERROR = "error"
    PROBE = "probe"

    @property
    def is_logical(self) -> bool:
        # Executing a forged query and raising a semantic error are the
        # "logical" outcomes; syntax-error probes are not.
        return self is not Intent.PROBE

    @classmethod
    def from_token(cls, token: str) -> "Intent":
        try:
            return cls(token.strip().lower())
        except ValueError:
            raise UnknownIntent(token) from None


class Dialect(enum.Enum):
    """Database system a payload is valid under."""

    MYSQL = "mysql"
    MSSQL = "mssql"
    GENERIC = "generic"  # valid under both systems

    @classmethod
    def from_token(cls, token: str) -> "Dialect":
        try:
            return cls(token.strip().lower())
        except ValueError:
            raise ParseError(f"unknown dialect token: {token!r}") from None


@dataclass(frozen=True)
class Signature:
    """One detection rule: an id plus its regex source."""

    id: str
    pattern_source: str
    note: str | None = None

    @property
    def reconstructed(self) -> bool:
        """True for rules repaired from a damaged printed listing rather
        than transcribed verbatim."""
        return bool(self.note) and "reconstructed" in self.note


@dataclass(frozen=True)
class AttackVector:
    """A payload with its intent, dialect tags and designed target."""

    id: str
    target_signature_id: str
    payload: str
    intent: Intent
    dialects: frozenset[Dialect]


@dataclass(frozen=True)
class Corpus:
    signatures: tuple[Signature, ...]
    vectors: tuple[AttackVector, ...]
    _sig_index: dict = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        sig_ids = set()
        for sig in self.signatures:
            if sig.id in sig_ids:
                raise DuplicateId(sig.id)
            sig_ids.add(sig.id)
        vec_ids = set()
        for vec in self.vectors:
            if vec.id in vec_ids:
                raise DuplicateId(vec.id)
            vec_ids.add(vec.id)
            if vec.target_signature_id != FREE_FLOATING and vec.target_signature_id not in sig_ids:
                raise UnknownSignatureRef(vec.target_signature_id)
        object.__setattr__(self, "_sig_index", {s.id: s for s in self.signatures})

    def signature(self, signature_id: str) -> Signature:
        return self._sig_index[signature_id]

    def vector(self, vector_id: str) -> AttackVector:
        for vec in self.vectors:
            if vec.id == vector_id:
                return vec
        raise KeyError(vector_id)

    @property
    def fingerprint(self) -> str:
        blob = signatures_to_json(self.signatures) + vectors_to_json(self.vectors)
        return hashlib.sha256(blob.encode("utf-8")).hexdigest()


# ---------------------------------------------------------------------------
# loading

def _read_text(source) -> str:
    if isinstance(source, bytes):
        return source.decode("utf-8")
    if isinstance(source, str):
        return source
    if isinstance(source, Path):
        return source.read_text(encoding="utf-8")
    data = source.read()
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    return data


def load_signatures(source, format: str = "tsv") -> list[Signature]:
    """Load signatures from a TSV or JSON stream.

    Every pattern is compiled once as a validity check, so a bad rule
    fails at load time, not in the middle of an audit.
    """
    text = _read_text(source)
    if format == "tsv":
        sigs = _signatures_from_tsv(text)
    elif format == "json":
        sigs = _signatures_from_json(text)
    else:
        raise ParseError(f"unknown format: {format!r}")

    from .matcher import validate_dialect

    seen = set()
    for sig in sigs:
        if sig.id in seen:
            raise DuplicateId(sig.id)
        seen.add(sig.id)
        if not sig.pattern_source:
            raise ParseError(f"empty pattern for {sig.id}")
        validate_dialect(sig.pattern_source, sig.id)
    return sigs


def _signatures_from_tsv(text: str) -> list[Signature]:
    sigs = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) not in (2, 3):
            raise ParseError("expected id<TAB>pattern[<TAB>note]", lineno)
        note = parts[2] if len(parts) == 3 and parts[2] else None
        sigs.append(Signature(id=parts[0], pattern_source=parts[1], note=note))
    return sigs


def _signatures_from_json(text: str) -> list[Signature]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    sigs = []
    for i, row in enumerate(doc):
        try:
            sigs.append(
                Signature(
                    id=row["id"],
                    pattern_source=row["pattern"],
                    note=row.get("note"),
                )
            )
        except (TypeError, KeyError) as exc:
            raise ParseError(f"bad signature object at index {i}: {exc}") from exc
    return sigs


def load_vectors(source, signatures, format: str = "tsv") -> list[AttackVector]:
    """Load vectors, validating signature references against ``signatures``.

    Payloads are kept byte for byte as read (still URL-encoded).
    """
    text = _read_text(source)
    if format == "tsv":
        vecs = _vectors_from_tsv(text)
    elif format == "json":
        vecs = _vectors_from_json(text)
    else:
        raise ParseError(f"unknown format: {format!r}")

    sig_ids = {s.id for s in signatures}
    seen = set()
    for vec in vecs:
        if vec.id in seen:
            raise DuplicateId(vec.id)
        seen.add(vec.id)
        if not vec.payload:
            raise ParseError(f"empty payload for {vec.id}")
        if vec.target_signature_id != FREE_FLOATING and vec.target_signature_id not in sig_ids:
            raise UnknownSignatureRef(vec.target_signature_id)
    return vecs


def _vectors_from_tsv(text: str) -> list[AttackVector]:
    vecs = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 5:
            raise ParseError(
                "expected id<TAB>target<TAB>intent<TAB>dialects<TAB>payload", lineno
            )
        vid, target, intent_tok, dialect_toks, payload = parts
        dialects = frozenset(
            Dialect.from_token(tok) for tok in dialect_toks.split(",") if tok.strip()
        )
        if not dialects:
            raise ParseError(f"vector {vid} has no dialect tags", lineno)
        vecs.append(
            AttackVector(
                id=vid,
                target_signature_id=target,
                payload=payload,
                intent=Intent.from_token(intent_tok),
                dialects=dialects,
            )
        )
    return vecs


def _vectors_from_json(text: str) -> list[AttackVector]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    vecs = []
    for i, row in enumerate(doc):
        try:
            vecs.append(
                AttackVector(
                    id=row["id"],
                    target_signature_id=row["target"],
                    payload=row["payload"],
                    intent=Intent.from_token(row["intent"]),
                    dialects=frozenset(
                        Dialect.from_token(tok) for tok in row["dialects"]
                    ),
                )
            )
        except (TypeError, KeyError) as exc:
            raise ParseError(f"bad vector object at index {i}: {exc}") from exc
    return vecs


def load_corpus(signature_source, vector_source, format: str = "tsv") -> Corpus:
    sigs = load_signatures(signature_source, format=format)
    vecs = load_vectors(vector_source, sigs, format=format)
    return Corpus(signatures=tuple(sigs), vectors=tuple(vecs))


# ---------------------------------------------------------------------------
# serialization

def _dialect_field(dialects) -> str:
    return ",".join(sorted(d.value for d in dialects))


def signatures_to_tsv(signatures) -> str:
    lines = []
    for sig in signatures:
        if sig.note:
            lines.append(f"{sig.id}\t{sig.pattern_source}\t{sig.note}")
        else:
            lines.append(f"{sig.id}\t{sig.pattern_source}")
    return "\n".join(lines) + "\n"


def vectors_to_tsv(vectors) -> str:
    lines = []
    for vec in vectors:
        if "\t" in vec.payload:
            raise ParseError(
                f"payload of {vec.id} contains a tab, use the JSON format"
            )
        lines.append(
            f"{vec.id}\t{vec.target_signature_id}\t{vec.intent.value}"
            f"\t{_dialect_field(vec.dialects)}\t{vec.payload}"
        )
    return "\n".join(lines) + "\n"


def signatures_to_json(signatures) -> str:
    rows = []
    for sig in signatures:
        row = {"id": sig.id, "pattern": sig.pattern_source}
        if sig.note:
            row["note"] = sig.note
        rows.append(row)
    return json.dumps(rows, sort_keys=True)


def vectors_to_json(vectors) -> str:
    rows = [
        {
            "id": vec.id,
            "target": vec.target_signature_id,
            "intent": vec.intent.value,
            "dialects": sorted(d.value for d in vec.dialects),
            "payload": vec.payload,
        }
        for vec in vectors
    ]
    return json.dumps(rows, sort_keys=True)


# ---------------------------------------------------------------------------
# queries

def logical_subset(corpus: Corpus) -> frozenset[str]:
    """Ids of the logical vectors: the ones that execute a forged query
    or raise a semantic error, as opposed to syntax-error probes."""
    return frozenset(v.id for v in corpus.vectors if v.intent.is_logical)


def filter_by_dialect(corpus: Corpus, dialect: Dialect) -> Corpus:
    """Keep vectors valid under ``dialect``; generic vectors always stay.
    The signature list is unchanged."""
    kept = tuple(
        v
        for v in corpus.vectors
        if dialect in v.dialects or Dialect.GENERIC in v.dialects
    )
    return Corpus(signatures=corpus.signatures, vectors=kept)


# ---------------------------------------------------------------------------
# bundled data

def data_dir() -> Path:
    """Directory holding the bundled data files. SIG_AUDIT_DATA overrides."""
    override = os.environ.get("SIG_AUDIT_DATA")
    if override:
        return Path(override)
    return Path(__file__).parent / "data"


def bundled_corpus() -> Corpus:
    """The bundled PHPIDS SQL-injection set: 83 signatures, 415 vectors."""
    base = data_dir()
    return load_corpus(
        base / "phpids_sqli_signatures.tsv",
        base / "phpids_sqli_vectors.tsv",
    )


def bundled_set_a() -> list[str]:
    """Ids of the ten high-contribution signatures (the generic set)."""
    path = data_dir() / "set_a.txt"
    return [
        line.strip()
        for line in path.read_text(encoding="utf-8").splitlines()
        if line.strip() and not line.startswith("#")
    ]
