"""
Evaluation against a gold dataset: precision and recall at k.

The gold file is a UTF-8 TSV with columns::

    doc_id  revision_id  identifier  descriptions  retrievable

where descriptions are separated by ``;`` and retrievable is ``yes`` or
``no``. Lines starting with ``#`` are comments.

This file is part of mlp.
"""

import re
from dataclasses import dataclass, field

from .error import ConfigError, GoldFormatError

import logging
logger = logging.getLogger('mlplib.evaluation')

_determiner_re = re.compile(r'^(?:the|a|an)\s+')


def normalize_description(s):
    """Lowercase, collapse blanks and strip a leading article."""
    s = ' '.join(s.lower().split())
    return _determiner_re.sub('', s)


@dataclass(frozen=True)
class GoldEntry:
    doc_id: str
    revision_id: str
    identifier: str
    descriptions: tuple
    retrievable: bool = True

    def accepts(self, description):
        return normalize_description(description) in self.descriptions


@dataclass
class EvalReport:
    k: int
    tp: int = 0
    retrieved: int = 0
    relevant: int = 0
    excluded: int = 0
    method: str = None
    warnings: list = field(default_factory=list)

    @property
    def precision(self):
        return self.tp / self.retrieved if self.retrieved else 0.0

    @property
    def recall(self):
        return self.tp / self.relevant if self.relevant else 0.0


@dataclass
class IdentifierReport:
    found: int = 0
    expected: int = 0
    correct: int = 0

    @property
    def precision(self):
        return self.correct / self.found if self.found else 0.0

    @property
    def recall(self):
        return self.correct / self.expected if self.expected else 0.0


def load_gold(path):
    """Read and validate a gold file. Return a list of `GoldEntry`."""
    try:
        with open(path, encoding='utf-8') as f:
            return parse_gold(f, path)
    except OSError as e:
        raise GoldFormatError("can't read %s: %s" % (path, e))


def parse_gold(lines, name='gold'):
    rv = []
    seen = {}
    for lineno, line in enumerate(lines, 1):
        line = line.rstrip('\r\n')
        if not line.strip() or line.lstrip().startswith('#'):
            continue

        def error(msg, *args):
            raise GoldFormatError("%s, line %d: %s"
                % (name, lineno, msg % args))

        cols = line.split('\t')
        if len(cols) != 5:
            error("expected 5 tab-separated columns, found %d", len(cols))

        doc_id, revision_id, ident, descs, retrievable = \
            [c.strip() for c in cols]
        if not doc_id:
            error("empty doc_id")
        if not ident:
            error("empty identifier")
        if retrievable.lower() not in ('yes', 'no'):
            error("retrievable must be 'yes' or 'no': %s", retrievable)
        retrievable = retrievable.lower() == 'yes'

        descs = tuple(normalize_description(d)
            for d in descs.split(';') if d.strip())
        if retrievable and not descs:
            error("no accepted description for %s", ident)

        key = doc_id, ident
        if key in seen:
            error("duplicate identifier %s in %s (first at line %d)",
                ident, doc_id, seen[key])
        seen[key] = lineno

        rv.append(GoldEntry(doc_id, revision_id or None, ident, descs,
            retrievable))

    return rv


def _method_filter(method):
    if method is None:
        return lambda r: True
    if method == 'mlp':
        return lambda r: not r.is_pattern
    if method == 'pattern':
        return lambda r: r.is_pattern
    raise ConfigError("unknown method: %s" % method)


def top_descriptions(relations, k):
    """Return {(doc_id, identifier): [up to k normalized descriptions]}.

    Descriptions are taken in record order, duplicates skipped.
    """
    rv = {}
    for r in relations:
        descs = rv.setdefault((r.doc_id, r.identifier), [])
        d = normalize_description(r.description)
        if len(descs) < k and d not in descs:
            descs.append(d)
    return rv


def evaluate(gold, relations, k, method=None):
    """Score *relations* against *gold* entries. Return an `EvalReport`."""
    if k < 1:
        raise ConfigError("k must be positive: %s" % k)
    report = EvalReport(k=k, method=method)
    docs = set(r.doc_id for r in relations)
    keep = _method_filter(method)
    guesses = top_descriptions([r for r in relations if keep(r)], k)

    missing = set()
    for entry in gold:
        if not entry.retrievable:
            report.excluded += 1
            continue

        report.relevant += 1
        if entry.doc_id not in docs and entry.doc_id not in missing:
            missing.add(entry.doc_id)
            msg = "no relation found for document %s" % entry.doc_id
            logger.warning(msg)
            report.warnings.append(msg)

        descs = guesses.get((entry.doc_id, entry.identifier), ())
        report.retrieved += len(descs)
        if any(d in entry.descriptions for d in descs):
            report.tp += 1

    return report


def evaluate_identifiers(expected, found):
    """Compare the identifiers found per document with the expected ones.

    Both arguments map doc_id to a collection of identifier symbols.
    """
    report = IdentifierReport()
    for doc_id in set(expected) | set(found):
        exp = set(expected.get(doc_id, ()))
        got = set(found.get(doc_id, ()))
        report.expected += len(exp)
        report.found += len(got)
        report.correct += len(exp & got)
    return report


def format_report(report):
    """Return the report as an aligned table and a key=value line."""
    rows = [
        ('method', report.method or 'all'),
        ('k', str(report.k)),
        ('precision', '%.3f' % report.precision),
        ('recall', '%.3f' % report.recall),
        ('true positives', str(report.tp)),
        ('retrieved', str(report.retrieved)),
        ('relevant', str(report.relevant)),
        ('excluded', str(report.excluded)),
    ]
    width = max(len(name) for name, _ in rows)
    lines = ['%-*s  %s' % (width, name, value) for name, value in rows]
    lines.append(' '.join([
        'method=%s' % (report.method or 'all'),
        'k=%d' % report.k,
        'precision=%.6f' % report.precision,
        'recall=%.6f' % report.recall,
        'tp=%d' % report.tp,
        'retrieved=%d' % report.retrieved,
        'relevant=%d' % report.relevant,
        'excluded=%d' % report.excluded,
    ]))
    return '\n'.join(lines)
