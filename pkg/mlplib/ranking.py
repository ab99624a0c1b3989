"""
Statistical ranking of definition candidates.

Every noun phrase or link sharing a sentence with an identifier is a
candidate description, scored by its distance from the identifier, by how
early the sentence comes among the identifier's sentences and by its
frequency in those sentences.

This file is part of mlp.
"""

import math
from dataclasses import dataclass, replace
from itertools import groupby

from .error import ParamError

import logging
logger = logging.getLogger('mlplib.ranking')

# R(1) == 2 R(5) for the token distance
SIGMA_D = math.sqrt(12 / math.log(2))

# halves within three sentences
SIGMA_S = 2 * math.log(2) ** -0.5

AGGREGATES = ('max', 'rsum')


@dataclass(frozen=True)
class RankingParams:
    alpha: float = 1.0
    beta: float = 1.0
    gamma: float = 0.1
    sigma_d: float = SIGMA_D
    sigma_s: float = SIGMA_S
    k: int = 1
    aggregate: str = 'max'

    def __post_init__(self):
        if self.aggregate == 'r_sigma_sum':
            object.__setattr__(self, 'aggregate', 'rsum')

        for name in ('alpha', 'beta', 'gamma'):
            if getattr(self, name) < 0:
                raise ParamError("%s must not be negative: %s"
                    % (name, getattr(self, name)))
        if self.alpha + self.beta + self.gamma <= 0:
            raise ParamError("alpha, beta and gamma can't be all zero")
        for name in ('sigma_d', 'sigma_s'):
            if getattr(self, name) <= 0:
                raise ParamError("%s must be positive: %s"
                    % (name, getattr(self, name)))
        if not isinstance(self.k, int) or self.k < 1:
            raise ParamError("k must be a positive integer: %s" % self.k)
        if self.aggregate not in AGGREGATES:
            raise ParamError("unknown aggregate: %s" % self.aggregate)

    @property
    def weights(self):
        return self.alpha + self.beta + self.gamma


@dataclass(frozen=True)
class DefinitionCandidate:
    identifier: str
    term: str
    delta: int
    n: int
    tf: float = 0.0
    score: float = 0.0
    doc_id: str = ''
    sentence_index: int = 0


def gaussian_decay(x, sigma):
    """Return exp(-(x^2 - 1) / (2 sigma^2)), exactly 1 for x = 1."""
    if sigma <= 0:
        raise ParamError("sigma must be positive: %s" % sigma)
    return math.exp(-(x * x - 1) / (2.0 * sigma * sigma))


def distance(id_pos, term_pos, term):
    """Token distance between an identifier and a candidate term.

    A determiner absorbed by a term following the identifier stands
    between the two and counts one token.
    """
    if term_pos > id_pos and term.determiner:
        return term_pos - id_pos + 1
    return abs(term_pos - id_pos)


def identifier_sentences(sentences, symbol):
    """The sentences where *symbol* occurs in prose, in article order."""
    return [s for s in sentences if s.positions(symbol)]


def generate_candidates(doc_sentences, idents):
    """Return the unscored candidates of every identifier.

    A term occurring more than once in the same sentence gives a single
    candidate, at its minimum distance.
    """
    symbols = set()
    for ident in idents:
        symbols.update(ident.variants())

    rv = []
    for ident in idents:
        for n, s in enumerate(
                identifier_sentences(doc_sentences, ident.symbol), 1):
            positions = s.positions(ident.symbol)
            best = {}
            for j, t in enumerate(s.tokens):
                if not t.is_term or t.text in symbols:
                    continue
                d = min(distance(p, j, t) for p in positions)
                if t.text not in best or d < best[t.text]:
                    best[t.text] = d

            for term, d in best.items():
                rv.append(DefinitionCandidate(ident.symbol, term, d, n,
                    doc_id=s.doc_id, sentence_index=s.index_in_doc))

    return rv


def term_frequency(term, ident_sentences):
    """Relative frequency of *term* among the terms of *ident_sentences*."""
    total = 0
    count = 0
    for s in ident_sentences:
        for t in s.terms():
            total += 1
            if t.text == term:
                count += 1
    return count / total if total else 0.0


def score(delta, n, tf, params):
    """Weighted score in [0, 1] of a candidate's features."""
    return (params.alpha * gaussian_decay(delta, params.sigma_d)
        + params.beta * gaussian_decay(n, params.sigma_s)
        + params.gamma * tf) / params.weights


def rank_document(sentences, idents, params):
    """Return the scored candidates of a document."""
    rv = []
    tfs = {}
    for c in generate_candidates(sentences, idents):
        key = c.identifier, c.term
        if key not in tfs:
            tfs[key] = term_frequency(c.term,
                identifier_sentences(sentences, c.identifier))
        tf = tfs[key]
        rv.append(replace(c, tf=tf, score=score(c.delta, c.n, tf, params)))
    return rv


def r_sigma_sum(scores):
    """Sum of the scores sorted descending, the i-th weighted 2^-i."""
    return sum(s / 2.0 ** i
        for i, s in enumerate(sorted(scores, reverse=True), 1))


def _best_first(c):
    return (-c.score, c.delta, c.n, c.sentence_index)


def aggregate(candidates, params):
    """Merge the candidates of each (doc, identifier, term) tuple.

    Return one candidate per tuple: the best scoring occurrence, carrying
    the aggregated score.
    """
    def key(c):
        return c.doc_id, c.identifier, c.term

    rv = []
    for _, group in groupby(sorted(candidates, key=key), key=key):
        group = sorted(group, key=_best_first)
        if params.aggregate == 'rsum':
            agg = r_sigma_sum([c.score for c in group])
        else:
            agg = group[0].score
        rv.append(replace(group[0], score=agg))

    return rv


def select_top(candidates, params):
    """Return the top-k terms of every (doc, identifier).

    The result is sorted by doc, identifier and rank; ties are broken by
    smaller distance, then earlier sentence, then term.
    """
    def key(c):
        return c.doc_id, c.identifier

    rv = []
    for _, group in groupby(
            sorted(aggregate(candidates, params), key=key), key=key):
        group = sorted(group,
            key=lambda c: (-c.score, c.delta, c.n, c.term))
        rv.extend(group[:params.k])

    return rv
