"""
Static definition patterns over tagged sentences.

This file is part of mlp.
"""

from dataclasses import dataclass

from .nlp import SentenceToken, WORD, IDENTIFIER

import logging
logger = logging.getLogger('mlplib.patterns')


@dataclass(frozen=True)
class PatternRelation:
    doc_id: str
    identifier: str
    description: str
    pattern_id: int
    sentence_index: int
    position: int = 0


# Pattern skeletons. 'ID' and 'DESC' are the two entities, 'DT' any
# determiner, a tuple is a set of alternative literal words.
PATTERNS = {
    1: ('DESC', 'ID'),
    2: ('ID', 'is', 'DESC'),
    3: ('ID', 'is', 'the', 'DESC'),
    4: ('let', 'ID', 'be', 'the', 'DESC'),
    5: ('DESC', ('is', 'are'), 'denoted', 'by', 'ID'),
    6: ('ID', 'denotes', 'DT', 'DESC'),
}

# Patterns tried at an anchor.
_by_anchor = {
    'let': (4,),
    'ID': (6, 3, 2),
    'DESC': (5, 1),
}

# Overlapping matches are resolved by rank, lower wins.
_rank = {4: 0, 6: 1, 5: 1, 3: 2, 2: 3, 1: 4}


def _expand(tokens):
    """Split absorbed determiners back out of noun phrases.

    Return a list of (token, index in the original list).
    """
    rv = []
    for i, t in enumerate(tokens):
        if t.determiner:
            rv.append((SentenceToken(t.determiner, 'DT', WORD), i))
        rv.append((t, i))
    return rv


def _slot_matches(slot, token):
    if slot == 'ID':
        return token.kind == IDENTIFIER
    if slot == 'DESC':
        return token.is_term
    if slot == 'DT':
        return token.pos == 'DT'
    if token.kind != WORD:
        return False
    words = slot if isinstance(slot, tuple) else (slot,)
    return token.text.lower() in words


def _anchor_of(token):
    if token.kind == IDENTIFIER:
        return 'ID'
    if token.is_term:
        return 'DESC'
    if token.kind == WORD and token.text.lower() == 'let':
        return 'let'
    return None


def _match_at(expanded, i, pattern_id):
    """Return the matched tokens if *pattern_id* matches at *i*, else None."""
    skeleton = PATTERNS[pattern_id]
    if i + len(skeleton) > len(expanded):
        return None
    window = expanded[i:i + len(skeleton)]
    for slot, (token, _) in zip(skeleton, window):
        if not _slot_matches(slot, token):
            return None
    return window


def match_patterns(sentence):
    """Return every non-overlapping pattern occurrence in *sentence*.

    All the matches at every position are collected first; where two
    overlap, the one with the better `_rank` is kept (the earlier one on
    equal rank). The result is in text order.
    """
    expanded = _expand(sentence.tokens)
    matches = []
    for i, (token, _) in enumerate(expanded):
        for pid in _by_anchor.get(_anchor_of(token), ()):
            window = _match_at(expanded, i, pid)
            if window is not None:
                matches.append((_rank[pid], i, pid, window))

    taken = set()
    kept = []
    for _, i, pid, window in sorted(matches, key=lambda m: m[:2]):
        span = set(range(i, i + len(window)))
        if span & taken:
            continue
        taken |= span
        kept.append((i, pid, window))

    rv = []
    for i, pid, window in sorted(kept, key=lambda m: m[0]):
        skeleton = PATTERNS[pid]
        ident = window[skeleton.index('ID')][0]
        desc = window[skeleton.index('DESC')][0]
        rv.append(PatternRelation(sentence.doc_id, ident.symbol, desc.text,
            pid, sentence.index_in_doc, expanded[i][1]))

    return rv


def match_document(sentences):
    """Return the pattern relations of all the sentences of a document."""
    rv = []
    for s in sentences:
        rv.extend(match_patterns(s))
    return rv
