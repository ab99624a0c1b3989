"""
MediaWiki wikitext ingestion: corpus readers and the article parser.

The parser turns an article into prose segments (one per paragraph) where
every ``<math>`` block is replaced by a ``⟨MATH:k⟩`` placeholder and internal
links are remembered as character spans.

This file is part of mlp.
"""

import re
import bz2
from pathlib import Path
from dataclasses import dataclass, field

import mwparserfromhell
from mwparserfromhell.nodes import (
    Argument, Comment, ExternalLink, Heading, HTMLEntity, Tag, Template,
    Text, Wikilink)
from lxml import etree

from . import consts
from .error import ConfigError, CorpusError

import logging
logger = logging.getLogger('mlplib.wikitext')

FORMATS = ('xml-dump', 'wikitext-dir')


@dataclass
class Document:
    doc_id: str
    title: str
    source: str
    revision_id: str = None
    warnings: list = field(default_factory=list, compare=False)

    def __post_init__(self):
        if not self.doc_id:
            raise ValueError("a document needs a non-empty id")


@dataclass(frozen=True)
class Link:
    """An internal link: span of its surface inside one prose segment."""
    segment: int
    start: int
    end: int
    target: str
    surface: str


@dataclass
class ParsedDocument:
    doc_id: str
    prose: list
    math_blocks: list
    links: list
    warnings: list = field(default_factory=list, compare=False)

    def links_in(self, segment):
        return [l for l in self.links if l.segment == segment]

    def tex(self, index):
        return self.math_blocks[index][1]

    def render_plain(self):
        """Return the prose as plain text, math blocks back in their tags."""
        def unmask(m):
            return '<math>%s</math>' % self.tex(int(m.group(1)))

        return '\n\n'.join(
            placeholder_re.sub(unmask, seg) for seg in self.prose)


placeholder_re = re.compile(consts.MATH_PLACEHOLDER_RE)

_math_open_re = re.compile(r'<math(?:\s[^<>]*?)?\s*(/?)>', re.I)
_math_close_re = re.compile(r'</math\s*>', re.I)
_para_re = re.compile(r'\n[ \t\r]*\n')
_sentinel_re = re.compile(u'\ue000(\\d+)\ue001')
_trail_re = re.compile(r'^[a-z]+')
_interwiki_re = re.compile(r'^[a-z]{2,3}(-[a-z]+)?$')


def decode_source(data, warnings, name):
    """Decode UTF-8 input, replacing invalid sequences with a warning."""
    if isinstance(data, str):
        return data
    try:
        return data.decode('utf-8')
    except UnicodeDecodeError as e:
        msg = "%s: invalid utf-8 replaced (%s)" % (name, e.reason)
        logger.warning(msg)
        warnings.append(msg)
        return data.decode('utf-8', 'replace')


class _ProseBuilder(object):
    """Accumulate prose text and link spans, split into paragraphs."""

    def __init__(self):
        self.segments = []
        self.links = []
        self._buf = []
        self._len = 0
        self._pending = []
        self._after_link = False

    def text(self, s):
        if self._after_link and self._pending:
            # link trail: [[electron]]s renders as one word
            m = _trail_re.match(s)
            if m:
                start, end, target, surface = self._pending[-1]
                trail = m.group()
                self._pending[-1] = (start, end + len(trail), target,
                    surface + trail)
                self._append(trail)
                s = s[len(trail):]
        self._after_link = False

        for i, part in enumerate(_para_re.split(s)):
            if i:
                self.flush()
            self._append(part.replace('\r', ' ').replace('\n', ' '))

    def link(self, target, surface):
        surface = ' '.join(surface.split())
        if not surface:
            return
        start = self._len
        self._append(surface)
        self._pending.append((start, self._len, target, surface))
        self._after_link = True

    def _append(self, s):
        self._buf.append(s)
        self._len += len(s)

    def flush(self):
        text = ''.join(self._buf)
        body = text.lstrip()
        shift = len(text) - len(body)
        body = body.rstrip()
        if body:
            seg = len(self.segments)
            self.segments.append(body)
            for start, end, target, surface in self._pending:
                start -= shift
                end -= shift
                if start >= 0 and end <= len(body):
                    self.links.append((seg, start, end, target, surface))

        self._buf = []
        self._len = 0
        self._pending = []
        self._after_link = False


class WikitextParser(object):
    """Parse a wiki article into prose, math blocks and links."""

    skip_namespaces = frozenset([
        'file', 'image', 'media', 'category', 'template', 'wikipedia',
        'wp', 'help', 'portal', 'special', 'user', 'talk', 'mediawiki',
        'module', 'draft'])

    drop_tags = frozenset([
        'ref', 'references', 'table', 'gallery', 'timeline', 'imagemap',
        'score', 'syntaxhighlight', 'source', 'pre', 'chem', 'ce',
        'hiero', 'graph', 'templatedata', 'math'])

    def parse(self, doc):
        warnings = list(doc.warnings)
        source = decode_source(doc.source, warnings, doc.doc_id)

        source, n = placeholder_re.subn('', source)
        if n:
            self._warn(warnings, "%s: removed %d literal math placeholders",
                doc.doc_id, n)
        source = source.replace(u'\ue000', '').replace(u'\ue001', '')

        masked, blocks = self._mask_math(source, warnings, doc.doc_id)

        out = _ProseBuilder()
        try:
            code = mwparserfromhell.parse(masked)
        except Exception as e:
            self._warn(warnings, "%s: markup parsing failed, keeping raw "
                "text: %s", doc.doc_id, e)
            out.text(masked)
        else:
            self._walk(code.nodes, out)
        out.flush()

        return self._number_blocks(doc.doc_id, out, blocks, warnings)

    def _warn(self, warnings, msg, *args):
        msg = msg % args
        logger.warning(msg)
        warnings.append(msg)

    def _mask_math(self, source, warnings, doc_id):
        """Cut out math blocks, leaving numbered sentinels behind."""
        blocks = []
        parts = []
        pos = 0
        while True:
            m = _math_open_re.search(source, pos)
            if m is None:
                break
            parts.append(source[pos:m.start()])
            if m.group(1):
                tex, pos = '', m.end()
            else:
                close = _math_close_re.search(source, m.end())
                reopen = _math_open_re.search(source, m.end())
                if close is not None and (reopen is None
                        or close.start() < reopen.start()):
                    tex, pos = source[m.end():close.start()], close.end()
                else:
                    brk = _para_re.search(source, m.end())
                    end = brk.start() if brk else len(source)
                    tex, pos = source[m.end():end], end
                    self._warn(warnings,
                        "%s: unterminated <math> tag at offset %d",
                        doc_id, m.start())

            parts.append(u'\ue000%d\ue001' % len(blocks))
            blocks.append(tex.strip())

        parts.append(source[pos:])
        return ''.join(parts), blocks

    def _walk(self, nodes, out):
        for node in nodes:
            if isinstance(node, Text):
                out.text(str(node.value))

            elif isinstance(node, Wikilink):
                self._wikilink(node, out)

            elif isinstance(node, Heading):
                out.flush()

            elif isinstance(node, Tag):
                name = str(node.tag).strip().lower()
                if name in self.drop_tags:
                    continue
                if name == 'br':
                    out.text(' ')
                elif node.contents is not None:
                    self._walk(node.contents.nodes, out)

            elif isinstance(node, ExternalLink):
                if node.title is not None:
                    self._walk(node.title.nodes, out)

            elif isinstance(node, HTMLEntity):
                out.text(node.normalize())

            elif isinstance(node, (Template, Comment, Argument)):
                continue

            else:
                out.text(str(node))

    def _wikilink(self, node, out):
        title = str(node.title).strip()
        if title.startswith(':'):
            title = title[1:].strip()
        else:
            prefix, sep, _ = title.partition(':')
            prefix = prefix.strip().lower()
            if sep and (prefix in self.skip_namespaces
                    or _interwiki_re.match(prefix)):
                return

        target = title.split('#', 1)[0].strip() or title
        if node.text is not None:
            surface = node.text.strip_code()
        else:
            surface = title
        out.link(target, surface)

    def _number_blocks(self, doc_id, out, blocks, warnings):
        """Replace sentinels with placeholders numbered in prose order."""
        order = {}
        prose = []
        links = []
        by_segment = {}
        for seg, start, end, target, surface in out.links:
            by_segment.setdefault(seg, []).append(
                (start, end, target, surface))

        for seg, text in enumerate(out.segments):
            edits = []
            pieces = []
            pos = 0
            for m in _sentinel_re.finditer(text):
                raw = int(m.group(1))
                k = order.setdefault(raw, len(order))
                mark = consts.MATH_PLACEHOLDER % k
                pieces.append(text[pos:m.start()])
                pieces.append(mark)
                edits.append((m.end(), len(mark) - len(m.group())))
                pos = m.end()
            pieces.append(text[pos:])
            prose.append(''.join(pieces))

            def shift(p):
                return p + sum(d for (at, d) in edits if at <= p)

            for start, end, target, surface in by_segment.get(seg, ()):
                surface = _sentinel_re.sub(
                    lambda m: consts.MATH_PLACEHOLDER
                        % order[int(m.group(1))], surface)
                links.append(
                    Link(seg, shift(start), shift(end), target, surface))

        dropped = len(blocks) - len(order)
        if dropped:
            logger.debug("%s: %d math blocks outside running prose ignored",
                doc_id, dropped)

        math_blocks = [(k, blocks[raw])
            for raw, k in sorted(order.items(), key=lambda i: i[1])]
        return ParsedDocument(doc_id=doc_id, prose=prose,
            math_blocks=math_blocks, links=links, warnings=warnings)


_parser = WikitextParser()


def parse_document(doc):
    """Parse a `Document` into a `ParsedDocument`."""
    return _parser.parse(doc)


def read_corpus(path, format='wikitext-dir', warnings=None):
    """Return a lazy stream of `Document` read from *path*.

    *format* is 'wikitext-dir' (a directory of ``<doc_id>.wiki`` files, read
    in file name order) or 'xml-dump' (a MediaWiki export, optionally
    bzip2-compressed, read in dump order).

    Pages skipped while reading a dump are reported in the *warnings* list,
    if given; problems of a single document go in its own `warnings`.
    """
    path = Path(path)
    if format not in FORMATS:
        raise ConfigError("unknown corpus format: %s" % format)
    if not path.exists():
        raise CorpusError("input not found: %s" % path)

    if format == 'wikitext-dir':
        if not path.is_dir():
            raise CorpusError("not a directory: %s" % path)
        return _read_wikitext_dir(path)
    else:
        return _read_xml_dump(path, warnings if warnings is not None else [])


def _read_wikitext_dir(path):
    for fn in sorted(path.glob('*.wiki'), key=lambda p: p.name):
        try:
            data = fn.read_bytes()
        except OSError as e:
            raise CorpusError("can't read %s: %s" % (fn, e))
        warnings = []
        source = decode_source(data, warnings, fn.stem)
        yield Document(doc_id=fn.stem, title=fn.stem.replace('_', ' '),
            source=source, warnings=warnings)


def _open_dump(path):
    try:
        if path.suffix == '.bz2':
            return bz2.open(str(path), 'rb')
        else:
            return open(str(path), 'rb')
    except OSError as e:
        raise CorpusError("can't read %s: %s" % (path, e))


def _read_xml_dump(path, warnings):
    seen = set()
    with _open_dump(path) as f:
        pages = etree.iterparse(f, events=('end',), tag='{*}page',
            recover=True, huge_tree=True)
        try:
            for _, page in pages:
                doc = _page_document(page, warnings)
                page.clear()
                while page.getprevious() is not None:
                    del page.getparent()[0]

                if doc is None:
                    continue
                if doc.doc_id in seen:
                    _skip(warnings, "duplicate page skipped: %s", doc.title)
                    continue
                seen.add(doc.doc_id)
                yield doc

        except etree.XMLSyntaxError as e:
            _skip(warnings, "%s: unrecoverable xml error, stopping: %s",
                path, e)
        except OSError as e:
            raise CorpusError("can't read %s: %s" % (path, e))


def _skip(warnings, msg, *args):
    msg = msg % args
    logger.warning("%s", msg)
    warnings.append(msg)


def _page_document(page, warnings):
    title = (page.findtext('{*}title') or '').strip()
    revision = page.find('{*}revision')
    text = revision.findtext('{*}text') if revision is not None else None
    if not title or text is None:
        _skip(warnings, "malformed page skipped: %s", title or '(no title)')
        return None

    revision_id = revision.findtext('{*}id')
    return Document(doc_id=title.replace(' ', '_'), title=title,
        source=text, revision_id=revision_id and revision_id.strip())
