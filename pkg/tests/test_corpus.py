import json

import pytest
from hypothesis import given, strategies as st

from sig_audit.corpus import (
    AttackVector,
    Corpus,
    Dialect,
    Intent,
    Signature,
    filter_by_dialect,
    load_corpus,
    load_signatures,
    load_vectors,
    logical_subset,
    signatures_to_json,
    signatures_to_tsv,
    vectors_to_json,
    vectors_to_tsv,
)
from sig_audit.errors import (
    DuplicateId,
    ParseError,
    RegexDialectError,
    UnknownIntent,
    UnknownSignatureRef,
)


def test_load_signatures_single_row():
    sigs = load_signatures("S_79\t(?:--[^\\n]*$)\n")
    assert len(sigs) == 1
    assert sigs[0].id == "S_79"
    assert sigs[0].pattern_source == r"(?:--[^\n]*$)"


def test_load_signatures_empty_stream():
    assert load_signatures(b"") == []


def test_load_signatures_duplicate_id():
    with pytest.raises(DuplicateId):
        load_signatures("S_1\ta\nS_1\tb\n")


def test_load_signatures_comments_and_notes():
    sigs = load_signatures("# header\nS_1\tabc\treconstructed: guessed\n")
    assert sigs[0].note == "reconstructed: guessed"
    assert sigs[0].reconstructed


def test_load_signatures_bad_pattern():
    with pytest.raises(RegexDialectError):
        load_signatures("S_1\t(a)\\1\n")


def test_load_signatures_malformed_row_has_line_number():
    with pytest.raises(ParseError) as exc:
        load_signatures("S_1\ta\njust-one-field\n")
    assert exc.value.line == 2


def test_load_vectors_basic():
    sigs = load_signatures("S_79\t(?:--[^\\n]*$)\n")
    vecs = load_vectors(
        "v1\tS_79\texec\tgeneric\t1%20--%20h\n", sigs
    )
    assert vecs[0].payload == "1%20--%20h"  # stored still url-encoded
    assert vecs[0].intent is Intent.EXEC_UNAUTHORIZED
    assert vecs[0].dialects == frozenset({Dialect.GENERIC})


def test_load_vectors_probe_token():
    sigs = load_signatures("S_1\tabc\n")
    vecs = load_vectors("v1\tnone\tprobe\tgeneric\txyz'\n", sigs)
    assert vecs[0].intent is Intent.PROBE


def test_load_vectors_unknown_ref():
    sigs = load_signatures("S_1\tabc\n")
    with pytest.raises(UnknownSignatureRef):
        load_vectors("v1\tS_999\texec\tgeneric\tx\n", sigs)


def test_load_vectors_unknown_intent():
    sigs = load_signatures("S_1\tabc\n")
    with pytest.raises(UnknownIntent):
        load_vectors("v1\tS_1\tbogus\tgeneric\tx\n", sigs)


def test_logical_subset_mixed_intents():
    sigs = (Signature("S_1", "a"),)
    vecs = tuple(
        AttackVector(f"v{i}", "none", "p", intent, frozenset({Dialect.GENERIC}))
        for i, intent in enumerate(
            [Intent.EXEC_UNAUTHORIZED, Intent.PROBE, Intent.LOGIC_ERROR]
        )
    )
    c = Corpus(sigs, vecs)
    assert logical_subset(c) == {"v0", "v2"}


def test_logical_subset_all_probe():
    sigs = (Signature("S_1", "a"),)
    vecs = (AttackVector("v1", "none", "p", Intent.PROBE, frozenset({Dialect.GENERIC})),)
    assert logical_subset(Corpus(sigs, vecs)) == frozenset()


def test_logical_subset_bundled_is_everything(corpus):
    assert logical_subset(corpus) == {v.id for v in corpus.vectors}
    assert len(corpus.vectors) == 415


def test_filter_by_dialect():
    sigs = (Signature("S_1", "select"),)
    mk = lambda vid, payload, d: AttackVector(
        vid, "S_1", payload, Intent.EXEC_UNAUTHORIZED, frozenset({d})
    )
    c = Corpus(
        sigs,
        (
            mk("v1", "select * from customers limit 3", Dialect.MYSQL),
            mk("v2", "select top 3 * from customers", Dialect.MSSQL),
            mk("v3", "select 1", Dialect.GENERIC),
        ),
    )
    mysql = filter_by_dialect(c, Dialect.MYSQL)
    assert [v.id for v in mysql.vectors] == ["v1", "v3"]
    assert mysql.signatures == c.signatures
    mssql = filter_by_dialect(c, Dialect.MSSQL)
    assert [v.id for v in mssql.vectors] == ["v2", "v3"]


def test_filter_never_returns_untagged(corpus):
    for d in (Dialect.MYSQL, Dialect.MSSQL):
        sub = filter_by_dialect(corpus, d)
        for v in sub.vectors:
            assert d in v.dialects or Dialect.GENERIC in v.dialects


def test_round_trip_bundled(corpus):
    sig_tsv = signatures_to_tsv(corpus.signatures)
    vec_tsv = vectors_to_tsv(corpus.vectors)
    again = load_corpus(sig_tsv, vec_tsv)
    assert again == corpus
    assert again.fingerprint == corpus.fingerprint


def test_round_trip_json(corpus):
    again = load_corpus(
        signatures_to_json(corpus.signatures),
        vectors_to_json(corpus.vectors),
        format="json",
    )
    assert again == corpus


def test_json_serialization_is_canonical(corpus):
    blob = vectors_to_json(corpus.vectors)
    assert blob == json.dumps(json.loads(blob), sort_keys=True)


def test_tab_payload_rejected_by_tsv_but_fine_in_json():
    sigs = (Signature("S_1", "a"),)
    vec = AttackVector("v1", "S_1", "a\tb", Intent.EXEC_UNAUTHORIZED,
                       frozenset({Dialect.GENERIC}))
    with pytest.raises(ParseError):
        vectors_to_tsv((vec,))
    again = load_vectors(vectors_to_json((vec,)), sigs, format="json")
    assert again[0].payload == "a\tb"


_ident = st.text(alphabet="abcdefgh123", min_size=1, max_size=6)
_payload = st.text(
    alphabet="abcdef0123 ;'\"()=<>#-/%", min_size=1, max_size=20
).filter(lambda s: "\t" not in s)


@given(
    payloads=st.lists(_payload, min_size=1, max_size=8, unique=True),
    intents=st.lists(st.sampled_from(["exec", "error", "probe"]), min_size=8, max_size=8),
)
def test_round_trip_random_vectors(payloads, intents):
    sigs = (Signature("S_1", "select"),)
    vecs = tuple(
        AttackVector(
            f"v{i}", "S_1", p, Intent.from_token(intents[i]),
            frozenset({Dialect.GENERIC, Dialect.MYSQL}) if i % 2 else frozenset({Dialect.MSSQL}),
        )
        for i, p in enumerate(payloads)
    )
    c = Corpus(sigs, vecs)
    again = load_corpus(signatures_to_tsv(sigs), vectors_to_tsv(vecs))
    assert again == c
    # logical ids and probe ids partition the corpus
    logical = logical_subset(c)
    probes = {v.id for v in c.vectors if v.intent is Intent.PROBE}
    assert logical | probes == {v.id for v in c.vectors}
    assert not logical & probes
