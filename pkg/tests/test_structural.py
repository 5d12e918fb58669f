import random
import re

import pytest

from sig_audit.corpus import Signature
from sig_audit.structural import (
    OperatorLexicon,
    bounded_specials,
    default_lexicon,
    expand_subrules,
    extract_operators,
)


def sig(pattern, sid="S_x"):
    return Signature(sid, pattern)


# ---------------------------------------------------------------------------
# operator extraction

def test_quote_or_digit_rule():
    t = extract_operators(sig(r'(?:"\s*or\s*"?\d)', "S_6"))
    assert t.operators == {"or"}


def test_boolean_function_rule():
    t = extract_operators(sig(r"(?:(?:(n?and|x?or|not)\s+|\|\||\&\&)\s*\w+\()", "S_5"))
    assert t.operators == {"nand", "and", "or", "xor", "not", "||", "&&"}


def test_no_lexicon_tokens():
    assert extract_operators(sig(r"(?:select\s+from)")).operators == frozenset()


@pytest.mark.parametrize("pattern", [r"projector", r"actor", r"preorder", r"\w+or\w+"])
def test_embedded_words_do_not_count(pattern):
    assert "or" not in extract_operators(sig(pattern)).operators


def test_double_pipe_does_not_imply_single_pipe():
    t = extract_operators(sig(r"(?:\|\|\s*\w)"))
    assert "||" in t.operators
    assert "|" not in t.operators


def test_single_pipe_in_class_counts():
    t = extract_operators(sig(r'(?:"\s*[|&^]\s*\w)'))
    assert {"|", "&", "^"} <= t.operators


def test_caret_anchor_is_not_an_operator():
    assert "^" not in extract_operators(sig(r"^\d+or\s")).operators


def test_lexicon_monotonicity():
    small = OperatorLexicon(word_ops=frozenset({"or"}), symbol_ops=frozenset())
    big = default_lexicon()
    rng = random.Random(7)
    from oracles import random_pattern

    for _ in range(40):
        pat = random_pattern(rng)
        try:
            a = extract_operators(sig(pat), small).operators
            b = extract_operators(sig(pat), big).operators
        except Exception:
            continue
        assert a <= b, pat


# ---------------------------------------------------------------------------
# sub-rule expansion

def test_stacked_command_rule_expands_to_six():
    subs = expand_subrules(sig(r"(?:(?:;|#|--)\s*(?:drop|alter))", "S_52"))
    assert subs.expansion_complete
    assert subs.subrules == (
        r"(?:;\s*drop)",
        r"(?:;\s*alter)",
        r"(?:#\s*drop)",
        r"(?:#\s*alter)",
        r"(?:--\s*drop)",
        r"(?:--\s*alter)",
    )


def test_alternation_free_pattern_is_single_subrule():
    subs = expand_subrules(sig(r"abc\d+\s*"))
    assert subs.subrules == (r"abc\d+\s*",)
    assert subs.expansion_complete


def test_metadata_keyword_rule_expands_to_two():
    subs = expand_subrules(sig(r"(?:\Winformation_schema|table_name\W)", "S_12"))
    assert len(subs.subrules) == 2
    assert subs.expansion_complete


def test_quantified_groups_are_not_expanded():
    subs = expand_subrules(sig(r"(?:union\s*(?:all|distinct)?\s*select)"))
    assert len(subs.subrules) == 1


def test_caps_stop_expansion():
    branch = "(?:" + "|".join("abcdefghij") + ")"
    pat = branch * 3  # 10^3 combinations
    subs = expand_subrules(sig(pat), max_product=64)
    assert not subs.expansion_complete


def test_depth_cap_marks_incomplete():
    pat = r"(?:a(?:b(?:c(?:d|e)f)g)h)"
    subs = expand_subrules(sig(pat), max_depth=2)
    assert not subs.expansion_complete
    assert subs.subrules == (pat,)


def test_subrule_soundness_on_bundled_rules(corpus):
    rng = random.Random(99)
    alphabet = "abcdehinorstux 0129;'\"()=<>#-/*"
    payloads = [v.payload for v in corpus.vectors]
    for s in corpus.signatures:
        subs = expand_subrules(s)
        assert subs.expansion_complete, s.id
        whole = re.compile(s.pattern_source, re.IGNORECASE)
        parts = [re.compile(src, re.IGNORECASE) for src in subs.subrules]
        texts = [
            "".join(rng.choice(alphabet) for _ in range(rng.randint(0, 25)))
            for _ in range(15)
        ] + rng.sample(payloads, 10)
        for text in texts:
            assert bool(whole.search(text)) == any(p.search(text) for p in parts), (
                s.id,
                text,
            )


# ---------------------------------------------------------------------------
# bounded quantifiers

def test_paren_class_bound_reported():
    bounds = bounded_specials(
        sig(r"(?:;\s*(?:select|drop)\s*[\(]?\w{2,})", "S_63")
    )
    assert len(bounds) == 1
    b = bounds[0]
    assert b.char_class == r"[\(]"
    assert b.max_occurrences == 1


def test_optional_space_bound_reported():
    bounds = bounded_specials(sig(r"(?:waitfor\s*delay\s?['\"]+\s?\d)", "S_68"))
    assert [b.char_class for b in bounds] == [r"\s", r"\s"]
    assert all(b.max_occurrences == 1 for b in bounds)


def test_unbounded_atoms_not_reported():
    assert bounded_specials(sig(r"a\s*b\s+c[(]{2,}")) == []


def test_exact_and_lazy_brace_bounds():
    bounds = bounded_specials(sig(r"union\s{1}?all\s{2,3}select"))
    assert [(b.char_class, b.max_occurrences) for b in bounds] == [(r"\s", 1), (r"\s", 3)]


def test_non_repeatable_classes_ignored():
    assert bounded_specials(sig(r"\d?\w?[abc]?")) == []


def test_positions_are_valid_and_atoms_reparse(corpus):
    for s in corpus.signatures:
        for b in bounded_specials(s):
            assert s.pattern_source[b.position : b.position + len(b.char_class)] == b.char_class
            re.compile(b.char_class)


def test_custom_repeatable_set():
    bounds = bounded_specials(sig(r"x[%]?y"), repeatable=frozenset("%"))
    assert len(bounds) == 1
    assert bounds[0].char_class == "[%]"
