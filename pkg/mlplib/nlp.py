"""
Sentence splitting, tagging and chunking of article prose.

Produces the token stream both extractors work on: every noun phrase and
every link is collapsed into a single token, identifiers found in the
document formulas are marked in the prose.

This file is part of mlp.
"""

import re
import pkgutil
from dataclasses import dataclass, field, replace

from nltk import RegexpParser, Tree
from nltk.tag import DefaultTagger, RegexpTagger, UnigramTagger

from . import consts
from .error import ConfigError

import logging
logger = logging.getLogger('mlplib.nlp')

WORD = 'word'
IDENTIFIER = 'identifier'
LINK = 'link'
NOUN_PHRASE = 'noun_phrase'
FORMULA = 'formula_placeholder'
PUNCTUATION = 'punctuation'

KINDS = (WORD, IDENTIFIER, LINK, NOUN_PHRASE, FORMULA, PUNCTUATION)

# candidate descriptions
TERM_KINDS = (NOUN_PHRASE, LINK)


@dataclass(frozen=True)
class SentenceToken:
    text: str
    pos: str
    kind: str = WORD
    determiner: str = None
    symbol: str = None
    math_index: int = None
    target: str = None

    @property
    def is_term(self):
        return self.kind in TERM_KINDS


@dataclass(frozen=True)
class Sentence:
    doc_id: str
    index_in_doc: int
    tokens: tuple
    text: str = field(default='', compare=False)

    def positions(self, symbol):
        """Indexes of the tokens standing for identifier *symbol*."""
        return [i for i, t in enumerate(self.tokens)
            if t.kind == IDENTIFIER and t.symbol == symbol]

    def terms(self):
        return [t for t in self.tokens if t.is_term]


@dataclass(frozen=True)
class SentenceSpan:
    """A sentence as a slice of one prose segment."""
    segment: int
    start: int
    end: int
    text: str


class TaggerLexicon(object):
    """Deterministic tagger: lexicon, then suffix rules, then a default.

    Ahead of the suffix rules, numbers are tagged CD and symbol-like tokens
    (single letters, TeX control words, ``x_0``) SYM, so that an identifier
    is never swallowed by a noun phrase.
    """

    builtin_rules = [
        (r'^[-+]?\d+(?:[.,]\d+)*$', 'CD'),
        (r'^\\[A-Za-z]+(?:_\w)?$', 'SYM'),
        (r'^[^\W\d_](?:_\w)?$', 'SYM'),
        (r'^[^\W\d_]_\w+$', 'SYM'),
    ]

    def __init__(self, words, suffixes, default='NN', capitalized='NNP'):
        self.words = dict(words)
        self.suffixes = list(suffixes)
        self.default = default
        self.capitalized = capitalized
        self._chain = None

    @classmethod
    def load(cls, path=None):
        """Load a lexicon file; the shipped default if *path* is None."""
        if path is None:
            data = pkgutil.get_data('mlplib', 'data/lexicon.tsv')
            return cls.parse(data.decode('utf-8'))

        try:
            with open(path, encoding='utf-8') as f:
                return cls.parse(f.read(), path)
        except OSError as e:
            raise ConfigError("can't read lexicon %s: %s" % (path, e))

    @classmethod
    def parse(cls, text, name='lexicon'):
        words = {}
        suffixes = []
        in_suffixes = False
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.rstrip('\r\n')
            if line.strip() == '#SUFFIX':
                in_suffixes = True
                continue
            if not line.strip() or line.startswith('#'):
                continue
            try:
                entry, tag = line.split('\t')
            except ValueError:
                raise ConfigError("%s, line %d: expected 'entry<TAB>tag'"
                    % (name, lineno))
            entry, tag = entry.strip(), tag.strip()
            if in_suffixes:
                suffixes.append((entry, tag))
            else:
                words[entry] = tag

        return cls(words, suffixes)

    def __getstate__(self):
        state = self.__dict__.copy()
        state['_chain'] = None
        return state

    def _tagger(self):
        if self._chain is None:
            rules = list(self.builtin_rules)
            rules.extend(('.*%s$' % re.escape(s), tag)
                for s, tag in self.suffixes)
            rules.append(('^[A-Z]', self.capitalized))
            self._chain = UnigramTagger(model=self.words,
                backoff=RegexpTagger(rules,
                    backoff=DefaultTagger(self.default)))
        return self._chain

    def _key(self, word):
        if word in self.words:
            return word
        lower = word.lower()
        if lower in self.words:
            return lower
        return word

    def tag(self, words):
        """Return the tags of a list of words."""
        if not words:
            return []
        keys = [self._key(w) for w in words]
        return [tag for (_, tag) in self._tagger().tag(keys)]


_placeholder_re = re.compile(consts.MATH_PLACEHOLDER_RE)

_piece_re = re.compile(r"""
      (?P<math>%s)
    | (?P<word>\\[A-Za-z]+(?:_\w)?|\w+(?:['’-]\w+)*)
    | (?P<punct>[^\w\s])
    | (?P<space>\s+)
    """ % consts.MATH_PLACEHOLDER_RE, re.X)

_end_re = re.compile(r'[.!?]+["\'”’)\]]*')
_gap_re = re.compile(r'\s+["\'“‘(\[]*')

abbreviations = ('e.g.', 'i.e.', 'fig.', 'figs.', 'eq.', 'eqs.', 'et al.',
    'dr.', 'vs.', 'cf.', 'resp.', 'approx.', 'prof.', 'ref.', 'no.')


def _is_abbreviation(text, end):
    head = text[:end].lower()
    for abbr in abbreviations:
        if head.endswith(abbr):
            before = len(head) - len(abbr) - 1
            if before < 0 or not head[before].isalnum():
                return True
    return False


def split_sentences(text):
    """Return the (start, end) spans of the sentences of a paragraph."""
    spans = []
    start = 0
    for m in _end_re.finditer(text):
        gap = _gap_re.match(text, m.end())
        if gap is None or gap.end() >= len(text):
            continue
        if not text[gap.end()].isupper():
            continue
        if m.group().startswith('.') and _is_abbreviation(
                text, m.start() + 1):
            continue

        spans.append((start, m.end()))
        start = m.end() + len(text[m.end():gap.end()]) \
            - len(text[m.end():gap.end()].lstrip())

    rest = text[start:].rstrip()
    if rest.strip():
        spans.append((start, start + len(rest)))
    return spans


def segment_sentences(parsed):
    """Return the `SentenceSpan` of every sentence of a parsed document."""
    rv = []
    for seg, text in enumerate(parsed.prose):
        for start, end in split_sentences(text):
            rv.append(SentenceSpan(seg, start, end, text[start:end]))
    return rv


def tokenize_and_tag(span, links, lexicon):
    """Tokenize and tag a sentence.

    Each link fully inside the span becomes one token of kind 'link'.
    """
    inside = sorted((l for l in links if l.segment == span.segment
            and l.start >= span.start and l.end <= span.end),
        key=lambda l: l.start)

    tokens = []
    pos = span.start
    for l in inside:
        if l.start < pos:
            continue    # overlapping spans: first one wins
        tokens.extend(_plain_tokens(span.text[pos - span.start:
            l.start - span.start]))
        tokens.append(SentenceToken(l.surface, 'NN', LINK, target=l.target))
        pos = l.end
    tokens.extend(_plain_tokens(span.text[pos - span.start:]))

    words = [t.text for t in tokens if t.pos is None]
    tags = iter(lexicon.tag(words))
    return [replace(t, pos=next(tags)) if t.pos is None else t
        for t in tokens]


def prose_pieces(text):
    """Split prose into (kind, text) pieces covering all of *text*.

    kind is one of 'math', 'word', 'punct', 'space'.
    """
    return [(m.lastgroup, m.group()) for m in _piece_re.finditer(text)]


def _plain_tokens(text):
    rv = []
    for kind, piece in prose_pieces(text):
        if kind == 'math':
            rv.append(SentenceToken(piece, 'SYM', FORMULA,
                math_index=int(_placeholder_re.match(piece).group(1))))
        elif kind == 'word':
            rv.append(SentenceToken(piece, None, WORD))
        elif kind == 'punct':
            rv.append(SentenceToken(piece, 'PUNCT', PUNCTUATION))
    return rv


_chunker = RegexpParser('NP: {<DT>?<JJ>*<NN|NNS|NNP>+}')


def chunk_noun_phrases(tokens):
    """Collapse noun phrases into single tokens of kind 'noun_phrase'.

    The leading determiner is dropped from the phrase text and kept in the
    token `determiner` field.
    """
    if not tokens:
        return []

    tagged = [(i, t.pos if t.kind == WORD else 'X')
        for (i, t) in enumerate(tokens)]
    rv = []
    for node in _chunker.parse(tagged):
        if not isinstance(node, Tree):
            rv.append(tokens[node[0]])
            continue

        words = [tokens[i] for (i, _) in node.leaves()]
        det = None
        if words[0].pos == 'DT':
            det = words[0].text
            words = words[1:]
        rv.append(SentenceToken(' '.join(w.text for w in words),
            words[-1].pos, NOUN_PHRASE, determiner=det))

    return rv


def annotate_identifiers(tokens, idents, formulas=()):
    """Mark the tokens standing for a document identifier.

    Words equal to an identifier (symbol, TeX or unicode spelling) and
    placeholders of formulas with exactly one identifier become tokens of
    kind 'identifier'.
    """
    lookup = {}
    for ident in idents:
        for v in ident.variants():
            lookup.setdefault(v, ident)

    single = dict((f.block_index, f.identifiers[0])
        for f in formulas if len(f.identifiers) == 1)

    rv = []
    for t in tokens:
        if t.kind == WORD and t.text in lookup:
            ident = lookup[t.text]
        elif t.kind == FORMULA and t.math_index in single:
            ident = single[t.math_index]
        else:
            rv.append(t)
            continue
        rv.append(replace(t, text=ident.symbol, kind=IDENTIFIER,
            symbol=ident.symbol))

    return rv


def tokenize_document(parsed, lexicon):
    """Return the tagged tokens of every sentence, before chunking.

    The result is a list of (sentence text, tokens); sentences without
    tokens are dropped.
    """
    rv = []
    for span in segment_sentences(parsed):
        tokens = tokenize_and_tag(span, parsed.links, lexicon)
        if tokens:
            rv.append((span.text, tokens))
    return rv


def tag_document(parsed, formulas, idents, lexicon):
    """Return the tagged, chunked and annotated sentences of a document."""
    return [make_sentence(parsed.doc_id, i, tokens, formulas, idents, text)
        for i, (text, tokens) in enumerate(
            tokenize_document(parsed, lexicon))]


def make_sentence(doc_id, index, tokens, formulas, idents, text=''):
    """Chunk and annotate tagged tokens into a `Sentence`."""
    tokens = chunk_noun_phrases(tokens)
    tokens = annotate_identifiers(tokens, idents, formulas)
    return Sentence(doc_id, index, tuple(tokens), text)
