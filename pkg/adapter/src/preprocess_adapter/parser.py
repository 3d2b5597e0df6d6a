"""Deterministic rule-based dependency parser for short commands.

The pipeline is tokenize, tag, attach. Tagging is lexicon-first with
two context rules for the genuinely ambiguous classes; attachment walks
the tags with head rules (imperative root, noun-phrase chunks, case
marking, nearest-verb obliques). Output is always a single-rooted tree
over contiguous token ids.
"""

import re
from dataclasses import dataclass

from . import lexicon
from .errors import ParserUnavailable

PARSER_MODEL = "rules-en-1"

CONTENT_POS = frozenset({"NOUN", "PROPN", "VERB", "ADJ", "ADV", "NUM"})
NOMINAL = frozenset({"NOUN", "PROPN", "NUM", "PRON"})
_TOKEN_RE = re.compile(r"[A-Za-z]+(?:'[A-Za-z]+)?|\d+(?:\.\d+)?|[^\sA-Za-z\d]")


@dataclass(frozen=True)
class ParsedToken:
    index: int          # 1-based
    surface: str
    lemma: str
    pos: str
    head: int           # 0 for the root
    deprel: str


def check_parser_model(model: str) -> None:
    if model != PARSER_MODEL:
        raise ParserUnavailable(
            f"parser model {model!r} is not available in this "
            f"environment; the only local model is {PARSER_MODEL!r}")


def tokenize(text: str) -> list[str]:
    return _TOKEN_RE.findall(text)


def _tag_one(word: str, prev_pos: str | None, position: int) -> str | None:
    """Context-free part of tagging; ambiguous words return None."""
    low = word.lower()
    if re.fullmatch(r"\d+(?:\.\d+)?", word) or low in lexicon.NUMBER_WORDS:
        return "NUM"
    if not any(ch.isalnum() for ch in word):
        return "PUNCT"
    if low in lexicon.DETERMINERS:
        return "DET"
    if low in lexicon.ADPOSITIONS:
        return "ADP"
    if low in lexicon.PRONOUNS:
        return "PRON"
    if low in lexicon.AUXILIARIES:
        return "AUX"
    if low in lexicon.COORDINATORS:
        return "CCONJ"
    if low in lexicon.INTERJECTIONS:
        return "INTJ"
    if low in lexicon.POSITION_WORDS or low in lexicon.NOUN_VERB_WORDS:
        return None
    if low in lexicon.VERBS:
        return "VERB"
    if low in lexicon.ADJECTIVES:
        return "ADJ"
    if low in lexicon.ADVERBS or low.endswith("ly"):
        return "ADV"
    if low in lexicon.NOUNS:
        return "NOUN"
    if word[0].isupper() and position > 0:
        return "PROPN"
    return "NOUN"


def tag(words: list[str]) -> list[str]:
    provisional: list[str | None] = [
        _tag_one(w, None, i) for i, w in enumerate(words)]
    tags: list[str] = []
    for i, word in enumerate(words):
        known = provisional[i]
        if known is not None:
            tags.append(known)
            continue
        low = word.lower()
        if low in lexicon.POSITION_WORDS:
            # adjectival when the nominal run continues, nominal at its end
            nxt = provisional[i + 1] if i + 1 < len(words) else "END"
            cont = nxt in (None, "NOUN", "PROPN", "NUM", "ADJ")
            tags.append("ADJ" if cont else "NOUN")
        else:
            # noun/verb words read as nominal inside a determiner phrase
            prev = tags[i - 1] if i > 0 else "START"
            nominal_ctx = prev in ("NOUN", "PROPN", "NUM", "ADJ", "DET")
            tags.append("NOUN" if nominal_ctx else "VERB")
    return tags


def _noun_runs(tags: list[str], claimed: set[int]) -> list[tuple[int, int, int]]:
    """(start, end, head) spans of unclaimed nominal chunks."""
    runs = []
    i = 0
    n = len(tags)
    chunkable = {"DET", "ADJ", "NOUN", "PROPN", "NUM", "PRON"}
    while i < n:
        if i in claimed or tags[i] not in chunkable:
            i += 1
            continue
        j = i
        while j < n and j not in claimed and tags[j] in chunkable:
            j += 1
        nominals = [k for k in range(i, j) if tags[k] in NOMINAL]
        if nominals:
            runs.append((i, j - 1, nominals[-1]))
        i = j
    return runs


def attach(words: list[str], tags: list[str]) -> list[ParsedToken]:
    n = len(words)
    heads = [None] * n
    deprels = [None] * n

    verbs = [i for i, t in enumerate(tags) if t == "VERB"]
    if verbs:
        root = verbs[0]
    else:
        # verbless input: root the head of the first noun phrase
        first_runs = _noun_runs(tags, set())
        if first_runs:
            root = first_runs[0][2]
        else:
            content = [i for i, t in enumerate(tags) if t in CONTENT_POS]
            root = content[0] if content else 0
    heads[root] = -1
    deprels[root] = "root"

    claimed = {root}

    # particles: adposition directly after a phrasal verb
    for i in range(1, n):
        if (tags[i] == "ADP" and tags[i - 1] == "VERB"
                and words[i - 1].lower() in lexicon.PHRASAL_VERBS):
            heads[i] = i - 1
            deprels[i] = "compound:prt"
            claimed.add(i)

    # preverbal material: subjects, auxiliaries, politeness markers
    for i in range(root):
        if tags[i] == "AUX":
            heads[i], deprels[i] = root, "aux"
        elif tags[i] == "PRON":
            heads[i], deprels[i] = root, "nsubj"
        elif tags[i] == "INTJ":
            heads[i], deprels[i] = root, "discourse"
        elif tags[i] == "ADV":
            heads[i], deprels[i] = root, "advmod"
        else:
            continue
        claimed.add(i)

    # secondary verbs: coordinated with the root, or noun modifiers
    for i in verbs:
        if i == root:
            continue
        prev_cc = [k for k in range(i) if tags[k] == "CCONJ"
                   and k not in claimed]
        if prev_cc:
            cc = prev_cc[-1]
            heads[cc], deprels[cc] = i, "cc"
            claimed.add(cc)
            heads[i], deprels[i] = root, "conj"
        else:
            prev_nominal = [k for k in range(i)
                            if tags[k] in ("NOUN", "PROPN")]
            if prev_nominal:
                heads[i], deprels[i] = prev_nominal[-1], "acl"
            else:
                heads[i], deprels[i] = root, "dep"
        claimed.add(i)

    # the root may itself head a noun phrase; keep that chunk whole
    runs = _noun_runs(tags, claimed - {root})
    run_heads = [h for _, _, h in runs]

    # within each chunk, everything leans on the final nominal
    for start, end, h in runs:
        for k in range(start, end + 1):
            if k == h:
                continue
            if tags[k] == "DET":
                deprels[k] = "det"
            elif tags[k] == "ADJ":
                deprels[k] = "amod"
            elif tags[k] == "NUM":
                deprels[k] = "nummod"
            else:
                deprels[k] = "compound"
            heads[k] = h
            claimed.add(k)

    # case markers cling to the next chunk head
    case_of = {}
    for i in range(n):
        if tags[i] == "ADP" and i not in claimed:
            later = [h for _, _, h in runs if h > i]
            if later:
                heads[i], deprels[i] = later[0], "case"
                case_of[later[0]] = i
                claimed.add(i)

    # chunk heads: objects when bare, obliques or noun modifiers when
    # case-marked ("of" restricts to the previous nominal)
    verb_obj = {}
    for pos_in_runs, (start, end, h) in enumerate(runs):
        if h == root:
            continue
        marker = case_of.get(h)
        earlier_heads = [x for x in run_heads[:pos_in_runs] if x != h]
        if marker is not None:
            if words[marker].lower() == "of" and earlier_heads:
                heads[h], deprels[h] = earlier_heads[-1], "nmod"
            else:
                prior_verbs = [v for v in verbs if v < marker]
                target = prior_verbs[-1] if prior_verbs else root
                heads[h], deprels[h] = target, "obl"
        else:
            prior_verbs = [v for v in verbs if v < start]
            target = prior_verbs[-1] if prior_verbs else root
            if target not in verb_obj:
                verb_obj[target] = h
                heads[h], deprels[h] = target, "obj"
            elif earlier_heads:
                heads[h], deprels[h] = earlier_heads[-1], "nmod"
            else:
                heads[h], deprels[h] = target, "obl"
        claimed.add(h)

    # leftovers hang off the root rather than dangling
    for i in range(n):
        if heads[i] is None:
            if tags[i] == "PUNCT":
                heads[i], deprels[i] = root, "punct"
            elif tags[i] == "ADV":
                heads[i], deprels[i] = root, "advmod"
            else:
                heads[i], deprels[i] = root, "dep"

    tokens = [ParsedToken(index=i + 1, surface=words[i],
                          lemma=words[i].lower(), pos=tags[i],
                          head=heads[i] + 1 if heads[i] >= 0 else 0,
                          deprel=deprels[i])
              for i in range(n)]
    _assert_single_rooted_tree(tokens)
    return tokens


def _assert_single_rooted_tree(tokens: list[ParsedToken]) -> None:
    n = len(tokens)
    roots = [t.index for t in tokens if t.head == 0]
    if len(roots) != 1:
        raise ValueError(f"expected one root, built {len(roots)}")
    children = {}
    for t in tokens:
        children.setdefault(t.head, []).append(t.index)
    seen = set()
    stack = [roots[0]]
    while stack:
        node = stack.pop()
        if node in seen:
            raise ValueError("head links contain a cycle")
        seen.add(node)
        stack.extend(children.get(node, []))
    if len(seen) != n:
        raise ValueError("head links contain a cycle")


def parse(text: str) -> list[ParsedToken]:
    """Full pipeline; raises ValueError for unparseable input."""
    words = tokenize(text)
    if not words:
        raise ValueError("no tokens")
    return attach(words, tag(words))
