"""Structural analysis of signature patterns.

Three views of a rule's source:

* operator extraction: which SQL operators the rule can actually match
  as standalone tokens (word operators only count where the pattern
  admits a word boundary on both sides, so ``or`` buried in a longer
  literal like ``preorder`` never counts);
* sub-rule expansion: cross product of the alternations inside
  unquantified groups, giving the individual criteria a rule ORs
  together;
* quantifier bounds: finitely capped atoms over characters an attacker
  may repeat freely (whitespace, parentheses, quotes).
"""

from __future__ import annotations

from dataclasses import dataclass

try:
    from re import _constants as sre_constants
    from re import _parser as sre_parse
except ImportError:  # pragma: no cover
    import sre_constants
    import sre_parse

from .errors import RegexDialectError
from .matcher import parse_pattern

# Characters usable an unbounded number of times in an attack payload
# without changing what the query does.
DEFAULT_REPEATABLE = frozenset(" \t()'\"")


@dataclass(frozen=True)
class OperatorLexicon:
    """Operator tokens split by how they are located in a pattern.

    Word operators need token boundaries; symbol operators are matched
    verbatim as maximal runs (a literal ``\\|\\|`` yields ``||``, not
    two ``|``).
    """

    word_ops: frozenset[str]
    symbol_ops: frozenset[str]

    @property
    def tokens(self) -> frozenset[str]:
        return self.word_ops | self.symbol_ops


def default_lexicon() -> OperatorLexicon:
    return OperatorLexicon(
        word_ops=frozenset({"and", "or", "xor", "nand", "not"}),
        symbol_ops=frozenset({"||", "&&", "^", "|", "&"}),
    )


# Keyword list used for reporting only; not part of operator analysis.
REPORT_KEYWORDS = (
    "union", "select", "insert", "update", "delete", "drop", "alter",
    "create", "rename", "truncate", "load", "having", "where", "like", "from",
)


@dataclass(frozen=True)
class TokenizedSignature:
    signature_id: str
    operators: frozenset[str]


@dataclass(frozen=True)
class SubRuleSet:
    signature_id: str
    subrules: tuple[str, ...]
    expansion_complete: bool


@dataclass(frozen=True)
class QuantifierBound:
    signature_id: str
    position: int
    char_class: str
    max_occurrences: int


# ---------------------------------------------------------------------------
# character set abstraction over parsed class nodes

_PROBE_CHARS = [chr(c) for c in range(32, 127)] + ["\t", "\n", "\xa0"]


def _is_word(ch: str) -> bool:
    return ch.isalnum() or ch == "_"


class _CharSet:
    """Membership predicate for one parsed atom (literal, class, dot)."""

    # atoms realizing more probe characters than this are treated as
    # wildcards: they can carry a boundary but never spell an operator
    _NARROW = 16

    def __init__(self, predicate):
        self._pred = predicate
        self._narrow = None

    def contains(self, ch: str) -> bool:
        return self._pred(ch)

    def contains_ci(self, ch: str) -> bool:
        return self._pred(ch) or self._pred(ch.swapcase())

    def is_narrow(self) -> bool:
        if self._narrow is None:
            self._narrow = sum(1 for c in _PROBE_CHARS if self._pred(c)) <= self._NARROW
        return self._narrow

    def can_word(self) -> bool:
        return any(self._pred(c) for c in _PROBE_CHARS if _is_word(c))

    def can_nonword(self) -> bool:
        return any(self._pred(c) for c in _PROBE_CHARS if not _is_word(c))

    def can_other_than(self, ch: str) -> bool:
        return any(self._pred(c) for c in _PROBE_CHARS if c != ch)


def _category_pred(category):
    C = sre_constants
    if category == C.CATEGORY_DIGIT:
        return lambda ch: ch.isdigit()
    if category == C.CATEGORY_NOT_DIGIT:
        return lambda ch: not ch.isdigit()
    if category == C.CATEGORY_SPACE:
        return lambda ch: ch.isspace()
    if category == C.CATEGORY_NOT_SPACE:
        return lambda ch: not ch.isspace()
    if category == C.CATEGORY_WORD:
        return _is_word
    if category == C.CATEGORY_NOT_WORD:
        return lambda ch: not _is_word(ch)
    raise RegexDialectError(None, f"unsupported category: {category}")


def _in_pred(items):
    C = sre_constants
    negate = bool(items) and items[0][0] is C.NEGATE
    if negate:
        items = items[1:]
    preds = []
    for op, arg in items:
        if op is C.LITERAL:
            preds.append(lambda ch, c=chr(arg): ch == c)
        elif op is C.RANGE:
            lo, hi = arg
            preds.append(lambda ch, lo=lo, hi=hi: lo <= ord(ch) <= hi)
        elif op is C.CATEGORY:
            preds.append(_category_pred(arg))
        else:
            raise RegexDialectError(None, f"unsupported class item: {op}")

    def pred(ch):
        hit = any(p(ch) for p in preds)
        return not hit if negate else hit

    return pred


def _node_charset(op, arg) -> _CharSet:
    C = sre_constants
    if op is C.LITERAL:
        return _CharSet(lambda ch, c=chr(arg): ch == c)
    if op is C.NOT_LITERAL:
        return _CharSet(lambda ch, c=chr(arg): ch != c)
    if op is C.ANY:
        return _CharSet(lambda ch: ch != "\n")
    if op is C.IN:
        return _CharSet(_in_pred(arg))
    raise RegexDialectError(None, f"not a character atom: {op}")


# ---------------------------------------------------------------------------
# operator extraction via a small NFA over abstract character edges

_EPS = "eps"
_CHAR = "char"
_ANCHOR = "anchor"


class _Nfa:
    def __init__(self):
        self.edges: dict[int, list[tuple[str, object, int]]] = {}
        self._next = 0

    def state(self) -> int:
        s = self._next
        self._next += 1
        self.edges[s] = []
        return s

    def add(self, src: int, kind: str, payload, dst: int) -> None:
        self.edges[src].append((kind, payload, dst))


def _build_nfa(nodes, nfa: _Nfa, entry: int, repeat_cap: int) -> int:
    """Thompson-style construction; returns the exit state."""
    C = sre_constants
    cur = entry
    for op, arg in nodes:
        if op in (C.LITERAL, C.NOT_LITERAL, C.ANY, C.IN):
            nxt = nfa.state()
            nfa.add(cur, _CHAR, _node_charset(op, arg), nxt)
            cur = nxt
        elif op is C.AT:
            nxt = nfa.state()
            nfa.add(cur, _ANCHOR, arg, nxt)
            cur = nxt
        elif op is C.SUBPATTERN:
            cur = _build_nfa(arg[3], nfa, cur, repeat_cap)
        elif op is C.BRANCH:
            exits = []
            for branch in arg[1]:
                b_entry = nfa.state()
                nfa.add(cur, _EPS, None, b_entry)
                exits.append(_build_nfa(branch, nfa, b_entry, repeat_cap))
            nxt = nfa.state()
            for e in exits:
                nfa.add(e, _EPS, None, nxt)
            cur = nxt
        elif op in (C.MAX_REPEAT, C.MIN_REPEAT):
            lo, hi, body = arg
            lo = min(lo, repeat_cap)
            hi = repeat_cap if hi is C.MAXREPEAT or hi > repeat_cap else hi
            for _ in range(lo):
                cur = _build_nfa(body, nfa, cur, repeat_cap)
            for _ in range(hi - lo):
                skip_from = cur
                cur = _build_nfa(body, nfa, cur, repeat_cap)
                nfa.add(skip_from, _EPS, None, cur)
        else:
            raise RegexDialectError(None, f"unsupported construct: {op}")
    return cur


def _token_realizable(nfa: _Nfa, start: int, accept: int, token: str, word_token: bool) -> bool:
    """Can the pattern spell ``token`` as a standalone occurrence?

    Standalone means: for word tokens, non-word characters (or the match
    edge) on both sides; for symbol tokens, the occurrence is a maximal
    run (not extendable with the token's own characters). Token
    characters must come from narrow atoms; a wildcard like ``[^\\n]``
    admits every operator and says nothing about what the rule was
    written to catch.
    """

    def boundary_ok(cs: _CharSet, edge_char: str) -> bool:
        if word_token:
            return cs.can_nonword()
        return cs.can_other_than(edge_char)

    def boundary_bad(cs: _CharSet, edge_char: str) -> bool:
        if word_token:
            return cs.can_word()
        return cs.contains(edge_char)

    done = ("done",)
    start_state = (start, ("search", True))
    seen = {start_state}
    queue = [start_state]
    while queue:
        state, tstate = queue.pop()
        if state == accept and (tstate == done or tstate == ("match", len(token))):
            return True
        for kind, payload, dst in nfa.edges[state]:
            succ: list = []
            if kind == _EPS:
                succ.append(tstate)
            elif kind == _ANCHOR:
                if tstate[0] == "search":
                    succ.append(("search", True))
                elif tstate == ("match", len(token)):
                    succ.append(done)
                elif tstate == done:
                    succ.append(done)
                # an anchor mid-token means that path never realizes it
            else:
                cs: _CharSet = payload
                if tstate == done:
                    succ.append(done)
                elif tstate[0] == "search":
                    ok = tstate[1]
                    if boundary_ok(cs, token[0]):
                        succ.append(("search", True))
                    if boundary_bad(cs, token[0]):
                        succ.append(("search", False))
                    if ok and cs.is_narrow() and cs.contains_ci(token[0]):
                        succ.append(("match", 1))
                elif tstate[0] == "match":
                    k = tstate[1]
                    if k < len(token):
                        if cs.is_narrow() and cs.contains_ci(token[k]):
                            succ.append(("match", k + 1))
                    else:
                        if boundary_ok(cs, token[-1]):
                            succ.append(done)
            for ts in succ:
                nxt = (dst, ts)
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
    return False


def extract_operators(signature, lexicon: OperatorLexicon | None = None) -> TokenizedSignature:
    """Every lexicon operator the pattern can match as a standalone token."""
    lexicon = lexicon or default_lexicon()
    tree = parse_pattern(signature.pattern_source, signature.id)
    cap = max((len(t) for t in lexicon.tokens), default=1) + 2
    nfa = _Nfa()
    entry = nfa.state()
    accept = _build_nfa(tree, nfa, entry, cap)
    found = set()
    for token in lexicon.word_ops:
        if _token_realizable(nfa, entry, accept, token, word_token=True):
            found.add(token)
    for token in lexicon.symbol_ops:
        if _token_realizable(nfa, entry, accept, token, word_token=False):
            found.add(token)
    return TokenizedSignature(signature_id=signature.id, operators=frozenset(found))


# ---------------------------------------------------------------------------
# source-level scanning shared by expansion and bound analysis

def _scan_class(src: str, i: int) -> int:
    """Return the index one past the closing ']' of a class starting at i."""
    j = i + 1
    if j < len(src) and src[j] == "^":
        j += 1
    if j < len(src) and src[j] == "]":
        j += 1
    while j < len(src):
        if src[j] == "\\":
            j += 2
        elif src[j] == "]":
            return j + 1
        else:
            j += 1
    raise RegexDialectError(None, f"unterminated class at offset {i}")


def _scan_quantifier(src: str, i: int) -> tuple[int, int | None, int]:
    """Parse a quantifier at i. Returns (min, max, next_index); max None
    means unbounded. next_index == i when there is no quantifier."""
    if i >= len(src):
        return 1, 1, i
    ch = src[i]
    if ch == "?":
        lo, hi, j = 0, 1, i + 1
    elif ch == "*":
        lo, hi, j = 0, None, i + 1
    elif ch == "+":
        lo, hi, j = 1, None, i + 1
    elif ch == "{":
        j = src.find("}", i)
        if j < 0:
            return 1, 1, i
        inner = src[i + 1 : j]
        if "," in inner:
            lo_s, hi_s = inner.split(",", 1)
            if not lo_s.isdigit() or (hi_s and not hi_s.isdigit()):
                return 1, 1, i
            lo = int(lo_s)
            hi = int(hi_s) if hi_s else None
        elif inner.isdigit():
            lo = hi = int(inner)
        else:
            return 1, 1, i
        j += 1
    else:
        return 1, 1, i
    if j < len(src) and src[j] == "?":  # lazy variant, same bounds
        j += 1
    return lo, hi, j


@dataclass
class _Group:
    start: int          # index of '('
    end: int            # index one past ')'
    body_start: int
    body_end: int
    branches: list[tuple[int, int]]
    children: list["_Group"]
    quantified: bool
    depth: int


def _parse_groups(src: str, lo: int, hi: int, depth: int) -> tuple[list[tuple[int, int]], list[_Group]]:
    """Split src[lo:hi] into top-level branch spans and collect direct
    child groups (with their own subtrees)."""
    branches = []
    children = []
    branch_start = lo
    i = lo
    while i < hi:
        ch = src[i]
        if ch == "\\":
            i += 2
        elif ch == "[":
            i = _scan_class(src, i)
        elif ch == "(":
            body = i + 1
            if src.startswith("?:", body):
                body += 2
            elif src[body] == "?":
                raise RegexDialectError(None, f"unsupported group at offset {i}")
            inner_branches, inner_children = _parse_groups(src, body, _match_paren(src, i), depth + 1)
            gend = _match_paren(src, i) + 1
            _, qhi, qend = _scan_quantifier(src, gend)
            group = _Group(
                start=i,
                end=gend,
                body_start=body,
                body_end=gend - 1,
                branches=inner_branches,
                children=inner_children,
                quantified=qend != gend,
                depth=depth + 1,
            )
            children.append(group)
            i = qend
        elif ch == "|":
            branches.append((branch_start, i))
            branch_start = i + 1
            i += 1
        elif ch == ")":
            raise RegexDialectError(None, f"unbalanced ')' at offset {i}")
        else:
            i += 1
    branches.append((branch_start, hi))
    return branches, children


def _match_paren(src: str, open_idx: int) -> int:
    depth = 0
    i = open_idx
    while i < len(src):
        ch = src[i]
        if ch == "\\":
            i += 2
            continue
        if ch == "[":
            i = _scan_class(src, i)
            continue
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth == 0:
                return i
        i += 1
    raise RegexDialectError(None, f"unbalanced '(' at offset {open_idx}")


def _first_expandable(src: str, max_depth: int) -> tuple[tuple[int, int, list[str]] | None, bool]:
    """Locate the leftmost expandable alternation.

    Returns ((span_start, span_end, branch_texts) or None, hit_depth_cap).
    Pattern-level alternation expands as the whole source; group-level
    alternation expands by substituting the branch for the group,
    parentheses included. Quantified groups are never entered: splitting
    them would change what the rule matches.
    """
    branches, children = _parse_groups(src, 0, len(src), 0)
    if len(branches) > 1:
        return (0, len(src), [src[a:b] for a, b in branches]), False

    capped = False

    def walk(groups) -> tuple[int, int, list[str]] | None:
        nonlocal capped
        for g in groups:
            if g.quantified:
                continue
            if len(g.branches) > 1:
                if g.depth > max_depth:
                    capped = True
                else:
                    return (g.start, g.end, [src[a:b] for a, b in g.branches])
            found = walk(g.children)
            if found:
                return found
        return None

    found = walk(children)
    return found, capped


def expand_subrules(signature, max_depth: int = 3, max_product: int = 64) -> SubRuleSet:
    """Cross-product expansion of a rule's alternations into sub-rules.

    Expansion is leftmost-first and recursive, so a rule like
    ``(?:(?:;|#|--)\\s*(?:drop|alter))`` yields its six criteria in
    reading order. When the product would exceed ``max_product`` or an
    alternation sits deeper than ``max_depth``, the remaining groups are
    left intact and ``expansion_complete`` is False.
    """
    if max_depth < 1 or max_product < 1:
        raise ValueError("caps must be positive")
    src = signature.pattern_source
    parse_pattern(src, signature.id)

    sources = [src]
    complete = True
    i = 0
    while i < len(sources):
        found, capped = _first_expandable(sources[i], max_depth)
        if capped:
            complete = False
        if found is None:
            i += 1
            continue
        gstart, gend, branch_texts = found
        if len(sources) - 1 + len(branch_texts) > max_product:
            complete = False
            i += 1
            continue
        s = sources[i]
        sources[i : i + 1] = [s[:gstart] + bt + s[gend:] for bt in branch_texts]

    for sub in sources:
        parse_pattern(sub, signature.id)
    return SubRuleSet(
        signature_id=signature.id,
        subrules=tuple(sources),
        expansion_complete=complete,
    )


# ---------------------------------------------------------------------------
# bounded quantifiers on freely repeatable characters

def _atom_charset(atom_src: str) -> _CharSet | None:
    try:
        tree = sre_parse.parse(atom_src)
    except Exception:
        return None
    if len(tree) != 1:
        return None
    op, arg = tree[0]
    C = sre_constants
    if op in (C.LITERAL, C.NOT_LITERAL, C.ANY, C.IN):
        return _node_charset(op, arg)
    return None


def bounded_specials(
    signature, repeatable: frozenset[str] | None = None
) -> list[QuantifierBound]:
    """Finitely bounded atoms whose class covers a repeatable character.

    An attacker can exceed any finite cap on whitespace, parentheses or
    quotes without changing the query, so each such bound is a candidate
    bypass point. Unbounded atoms are never reported.
    """
    repeatable = DEFAULT_REPEATABLE if repeatable is None else repeatable
    src = signature.pattern_source
    parse_pattern(src, signature.id)

    bounds: list[QuantifierBound] = []
    i = 0
    while i < len(src):
        ch = src[i]
        if ch == "(":
            # step inside the group; atoms within it are still scanned
            i += 3 if src.startswith("(?:", i) else 1
            continue
        if ch == ")":
            # group quantifiers attach to the group, not to an atom
            _, _, i = _scan_quantifier(src, i + 1)
            continue
        if ch in "|^$":
            i += 1
            continue
        start = i
        if ch == "\\":
            i += 2
        elif ch == "[":
            i = _scan_class(src, i)
        else:
            i += 1
        atom_src = src[start:i]
        lo, hi, qend = _scan_quantifier(src, i)
        if qend == i:
            continue
        i = qend
        if hi is None:
            continue
        cs = _atom_charset(atom_src)
        if cs is None:
            continue
        if any(cs.contains(c) for c in repeatable):
            bounds.append(
                QuantifierBound(
                    signature_id=signature.id,
                    position=start,
                    char_class=atom_src,
                    max_occurrences=hi,
                )
            )
    return bounds
