"""
On-disk formats: relation records and tagged sentences.

Relations are stored one JSON object per line, keys in a fixed order.
Tagged sentences are stored one per line as::

    doc_id <TAB> sentence_index <TAB> text|POS|kind text|POS|kind ...

with backslash, pipe and space escaped by a backslash in the fields.

This file is part of mlp.
"""

import re
import json
from dataclasses import dataclass

from . import consts
from .error import CorpusError
from .nlp import SentenceToken, FORMULA, KINDS

import logging
logger = logging.getLogger('mlplib.records')

MLP = 'mlp'


@dataclass(frozen=True)
class RelationRecord:
    doc_id: str
    identifier: str
    description: str
    method: str
    sentence_index: int
    score: float = None
    delta: int = None
    n: int = None

    @property
    def is_pattern(self):
        return self.method.startswith('pattern')

    @property
    def pattern_id(self):
        if self.is_pattern:
            return int(self.method.split(':', 1)[1])

    def to_json(self):
        rv = {
            'doc_id': self.doc_id,
            'identifier': self.identifier,
            'description': self.description,
            'method': self.method,
        }
        if self.score is not None:
            rv['score'] = round(self.score, 6)
        rv['sentence_index'] = self.sentence_index
        if self.delta is not None:
            rv['delta'] = self.delta
        if self.n is not None:
            rv['n'] = self.n
        return json.dumps(rv, ensure_ascii=False)

    @classmethod
    def from_json(cls, line):
        data = json.loads(line)
        return cls(doc_id=data['doc_id'], identifier=data['identifier'],
            description=data['description'], method=data['method'],
            sentence_index=data['sentence_index'], score=data.get('score'),
            delta=data.get('delta'), n=data.get('n'))


def from_pattern(rel):
    return RelationRecord(rel.doc_id, rel.identifier, rel.description,
        'pattern:%d' % rel.pattern_id, rel.sentence_index)


def from_candidate(c):
    return RelationRecord(c.doc_id, c.identifier, c.term, MLP,
        c.sentence_index, score=c.score, delta=c.delta, n=c.n)


def write_records(records, f):
    for r in records:
        f.write(r.to_json())
        f.write('\n')


def read_records(path):
    """Load a relation file into a list of `RelationRecord`."""
    rv = []
    try:
        with open(path, encoding='utf-8') as f:
            for lineno, line in enumerate(f, 1):
                if not line.strip():
                    continue
                try:
                    rv.append(RelationRecord.from_json(line))
                except (ValueError, KeyError, TypeError) as e:
                    raise CorpusError("%s, line %d: bad relation record: %s"
                        % (path, lineno, e))
    except OSError as e:
        raise CorpusError("can't read %s: %s" % (path, e))
    return rv


_escape_re = re.compile(r'([\\| ])')
_unescape_re = re.compile(r'\\(.)')
_field_re = re.compile(r'(?:\\.|[^ ])+')
_triple_re = re.compile(r'^((?:\\.|[^|])*)\|((?:\\.|[^|])*)\|(.*)$')
_placeholder_re = re.compile(consts.MATH_PLACEHOLDER_RE)


def _escape(s):
    return _escape_re.sub(r'\\\1', s)


def _unescape(s):
    return _unescape_re.sub(r'\1', s)


def format_tagged(doc_id, index, tokens):
    """Return the interchange line of a sentence's tagged tokens."""
    return '%s\t%d\t%s' % (doc_id, index, ' '.join(
        '%s|%s|%s' % (_escape(t.text), _escape(t.pos), t.kind)
        for t in tokens))


def parse_tagged(line, name='tagged', lineno=0):
    """Parse an interchange line into (doc_id, index, tokens)."""
    try:
        doc_id, index, body = line.rstrip('\r\n').split('\t')
        index = int(index)
    except ValueError:
        raise CorpusError("%s, line %d: expected 3 tab-separated fields"
            % (name, lineno))

    tokens = []
    for field in _field_re.findall(body):
        m = _triple_re.match(field)
        if m is None or m.group(3) not in KINDS:
            raise CorpusError("%s, line %d: bad token: %s"
                % (name, lineno, field))
        text, pos, kind = _unescape(m.group(1)), _unescape(m.group(2)), \
            m.group(3)
        math_index = None
        if kind == FORMULA:
            pm = _placeholder_re.match(text)
            if pm is None:
                raise CorpusError("%s, line %d: bad placeholder: %s"
                    % (name, lineno, text))
            math_index = int(pm.group(1))
        tokens.append(SentenceToken(text, pos, kind, math_index=math_index))

    return doc_id, index, tokens


def read_tagged(path):
    """Load an interchange file into {doc_id: [tokens, ...]}.

    Sentences of a document are returned in index order.
    """
    rv = {}
    try:
        with open(path, encoding='utf-8') as f:
            for lineno, line in enumerate(f, 1):
                if not line.strip():
                    continue
                doc_id, index, tokens = parse_tagged(line, path, lineno)
                rv.setdefault(doc_id, []).append((index, tokens))
    except OSError as e:
        raise CorpusError("can't read %s: %s" % (path, e))

    return dict((k, [t for (_, t) in sorted(v, key=lambda s: s[0])])
        for k, v in rv.items())
