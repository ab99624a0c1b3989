"""
The extraction dataflow: parser, tagger, kernel and filter stages.

Documents are processed independently, in the calling process or in a
pool of worker processes. Results are written sorted by document id, so
the output depends neither on the number of workers nor on the order of
the pages in the corpus.

This file is part of mlp.
"""

import sys
import heapq
import io
import json
import tempfile
from collections import Counter, deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from tqdm import tqdm

from .error import ConfigError, CorpusError
from .nlp import TaggerLexicon, make_sentence, tokenize_document
from .patterns import match_document
from .ranking import RankingParams, rank_document, select_top
from .records import (from_candidate, from_pattern, format_tagged,
    read_tagged, write_records)
from .texvc import Blacklist, analyze_formulas, document_identifiers
from .wikitext import FORMATS, parse_document, read_corpus

import logging
logger = logging.getLogger('mlplib.pipeline')

EXTRACTORS = ('pattern', 'statistical', 'both')


@dataclass
class PipelineConfig:
    input: str
    output: str = '-'
    format: str = 'wikitext-dir'
    workers: int = 1
    extractor: str = 'statistical'
    ranking: RankingParams = field(default_factory=RankingParams)
    blacklist: str = None
    lexicon: str = None
    tagged_out: str = None
    tagged_in: str = None
    progress: bool = False
    window: int = None
    sort_buffer: int = 1000

    def __post_init__(self):
        if not isinstance(self.workers, int) or self.workers < 1:
            raise ConfigError("workers must be at least 1: %s"
                % self.workers)
        if self.extractor not in EXTRACTORS:
            raise ConfigError("unknown extractor: %s" % self.extractor)
        if self.format not in FORMATS:
            raise ConfigError("unknown corpus format: %s" % self.format)
        if self.window is None:
            self.window = 4 * self.workers
        elif self.window < 1:
            raise ConfigError("window must be at least 1: %s" % self.window)
        if not isinstance(self.sort_buffer, int) or self.sort_buffer < 1:
            raise ConfigError("sort buffer must be at least 1: %s"
                % self.sort_buffer)


@dataclass
class DocumentResult:
    doc_id: str
    has_math: bool = False
    identifiers: tuple = ()
    records: list = field(default_factory=list)
    tagged: list = field(default_factory=list)
    warnings: list = field(default_factory=list)
    failed: bool = False


@dataclass
class RunSummary:
    documents: int = 0
    math_documents: int = 0
    identifiers: int = 0
    relations: int = 0
    skipped: int = 0
    warnings: list = field(default_factory=list)
    outputs: list = field(default_factory=list)

    def add(self, result):
        self.documents += 1
        self.warnings.extend(result.warnings)
        if result.failed:
            self.skipped += 1
            return
        if result.has_math:
            self.math_documents += 1
        self.identifiers += len(result.identifiers)
        self.relations += len(result.records)


@dataclass
class Context:
    """Read-only state shared by all the documents of a run."""
    blacklist: Blacklist
    lexicon: TaggerLexicon
    params: RankingParams = field(default_factory=RankingParams)
    extractor: str = 'statistical'
    tagged: dict = None
    keep_tagged: bool = False

    @classmethod
    def from_config(cls, config):
        return cls(
            blacklist=Blacklist.load(config.blacklist),
            lexicon=TaggerLexicon.load(config.lexicon),
            params=config.ranking,
            extractor=config.extractor,
            tagged=read_tagged(config.tagged_in)
                if config.tagged_in else None,
            keep_tagged=bool(config.tagged_out))


def map_parser(doc, blacklist):
    """Parse a document and analyze its formulas.

    Return (parsed document, formulas, document identifiers).
    """
    parsed = parse_document(doc)
    formulas = analyze_formulas(parsed, blacklist)
    return parsed, formulas, document_identifiers(parsed, blacklist, formulas)


def map_tagger(parsed, formulas, idents, lexicon, tagged=None):
    """Return (sentences, tagged tokens of each sentence) of a document.

    If *tagged* is given it is the list of the tagged tokens of the document
    sentences, as read from an interchange file, and replaces the built-in
    tagger.
    """
    if tagged is None:
        raw = tokenize_document(parsed, lexicon)
    else:
        raw = [('', tokens) for tokens in tagged if tokens]
    sentences = [make_sentence(parsed.doc_id, i, tokens, formulas, idents,
            text) for i, (text, tokens) in enumerate(raw)]
    return sentences, [tokens for (_, tokens) in raw]


def cogroup_kernel(sentences, idents, extractor, params):
    """Join the identifiers of a document with its sentences.

    Return (pattern relations, scored candidates).
    """
    patterns = candidates = ()
    if extractor in ('pattern', 'both'):
        patterns = match_document(sentences)
    if extractor in ('statistical', 'both'):
        candidates = rank_document(sentences, idents, params)
    return patterns, candidates


def reduce_filter(patterns, candidates, params):
    """Return the `RelationRecord` of a document, in output order.

    Records are grouped by identifier; statistical records come first, by
    rank, then pattern records, in text order.
    """
    records = [from_candidate(c) for c in select_top(candidates, params)]
    records.extend(from_pattern(p) for p in sorted(patterns,
        key=lambda p: (p.sentence_index, p.position, p.pattern_id)))
    records.sort(key=lambda r: (r.identifier, r.is_pattern))
    return records


def process_document(doc, ctx):
    """Run all the stages on a document.

    Never raise: a failure skips the document with a warning.
    """
    try:
        parsed, formulas, idents = map_parser(doc, ctx.blacklist)

        tagged = None
        if ctx.tagged is not None:
            tagged = ctx.tagged.get(doc.doc_id)
            if tagged is None:
                msg = "%s: no tagged sentences found" % doc.doc_id
                logger.warning(msg)
                parsed.warnings.append(msg)
                tagged = []

        sentences, raw = map_tagger(parsed, formulas, idents, ctx.lexicon,
            tagged)
        patterns, candidates = cogroup_kernel(sentences, idents,
            ctx.extractor, ctx.params)
        records = reduce_filter(patterns, candidates, ctx.params)

    except Exception as e:
        msg = "%s: document skipped: %s: %s" % (
            doc.doc_id, e.__class__.__name__, e)
        logger.warning(msg)
        return DocumentResult(doc.doc_id, warnings=list(doc.warnings) + [msg],
            failed=True)

    rv = DocumentResult(doc.doc_id, has_math=bool(parsed.math_blocks),
        identifiers=idents, records=records, warnings=parsed.warnings)
    if ctx.keep_tagged:
        rv.tagged = [format_tagged(doc.doc_id, i, tokens)
            for i, tokens in enumerate(raw)]
    return rv


# context of the worker processes
_worker_ctx = None


def _init_worker(ctx):
    global _worker_ctx
    _worker_ctx = ctx


def _process_in_worker(doc):
    return process_document(doc, _worker_ctx)


def process_corpus(docs, ctx, workers=1, window=None):
    """Generate the `DocumentResult` of *docs*, in input order.

    With more than one worker at most *window* documents are in flight.
    """
    if workers == 1:
        for doc in docs:
            yield process_document(doc, ctx)
        return

    if window is None:
        window = 4 * workers
    with ProcessPoolExecutor(max_workers=workers,
            initializer=_init_worker, initargs=(ctx,)) as executor:
        pending = deque()
        for doc in docs:
            pending.append(executor.submit(_process_in_worker, doc))
            if len(pending) >= window:
                yield pending.popleft().result()
        while pending:
            yield pending.popleft().result()


def _open_output(path):
    if path == '-':
        return _Unclosed(sys.stdout)
    try:
        return open(path, 'w', encoding='utf-8', newline='\n')
    except OSError as e:
        raise CorpusError("can't write %s: %s" % (path, e))


class _Unclosed(object):
    def __init__(self, f):
        self.f = f

    def __enter__(self):
        return self.f

    def __exit__(self, *args):
        self.f.flush()


class _SortedResults(object):
    """Sort the output of the documents by id with a bounded memory.

    At most *size* entries are kept in memory: beyond that they are sorted
    and spilled to temporary files, merged back on `merged()`.
    """
    def __init__(self, size):
        self.size = size
        self.buffer = []
        self.runs = []

    def add(self, doc_id, records, tagged):
        self.buffer.append((doc_id, records, tagged))
        if len(self.buffer) >= self.size:
            self._spill()

    def _spill(self):
        self.buffer.sort(key=_entry_key)
        f = tempfile.TemporaryFile('w+', encoding='utf-8')
        for entry in self.buffer:
            f.write(json.dumps(entry))
            f.write('\n')
        f.seek(0)
        self.runs.append(f)
        self.buffer = []
        logger.debug("spilled sorted run %d", len(self.runs))

    def merged(self):
        """Generate (doc_id, records text, tagged lines) sorted by doc_id."""
        if not self.runs:
            return iter(sorted(self.buffer, key=_entry_key))
        if self.buffer:
            self._spill()
        return heapq.merge(*(map(json.loads, f) for f in self.runs),
            key=_entry_key)

    def close(self):
        for f in self.runs:
            f.close()
        self.runs = []

    def __enter__(self):
        return self

    def __exit__(self, *args):
        self.close()


def _entry_key(entry):
    return entry[0]


def run_pipeline(config):
    """Process a corpus and write its relations. Return a `RunSummary`.

    Corpus pages skipped by the reader are counted in the summary warnings.
    """
    ctx = Context.from_config(config)
    corpus_warnings = []
    docs = read_corpus(config.input, config.format, corpus_warnings)
    summary = RunSummary()

    with _SortedResults(config.sort_buffer) as results:
        processed = process_corpus(docs, ctx, config.workers, config.window)
        for result in tqdm(processed, disable=not config.progress,
                unit='doc', desc='extracting'):
            buf = io.StringIO()
            write_records(result.records, buf)
            results.add(result.doc_id, buf.getvalue(), result.tagged)
            summary.add(result)

        with _open_output(config.output) as out:
            tagged = _open_output(config.tagged_out) if config.tagged_out \
                else None
            try:
                for _, records, lines in results.merged():
                    out.write(records)
                    if tagged is not None:
                        for line in lines:
                            tagged.write(line)
                            tagged.write('\n')
            finally:
                if tagged is not None:
                    tagged.close()

    summary.warnings.extend(corpus_warnings)
    summary.outputs = [p for p in (config.output, config.tagged_out)
        if p and p != '-']
    logger.info("%d documents processed, %d with math, %d identifiers, "
        "%d relations", summary.documents, summary.math_documents,
        summary.identifiers, summary.relations)
    if summary.skipped:
        logger.warning("%d documents skipped", summary.skipped)
    return summary


def aggregate_statistics(relations, top=None):
    """Count the documents where each (identifier, description) occurs.

    Return a list of ((identifier, description), count), most common first,
    ties in identifier and description order.
    """
    seen = set((r.doc_id, r.identifier, r.description) for r in relations)
    counts = Counter((ident, desc) for (_, ident, desc) in seen)
    rv = sorted(counts.items(), key=lambda i: (-i[1], i[0]))
    if top is not None:
        rv = rv[:top]
    return rv
