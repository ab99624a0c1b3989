"""
Base annotated document renderer class.

A document is turned into a stream of pieces (title, paragraphs, plain
text, identifier occurrences, formulas) and every piece is dispatched to a
``handle_<Piece>`` method of the renderer.

This file is part of mlp.
"""

from dataclasses import dataclass

from .nlp import prose_pieces
from .texvc import analyze_formulas, document_identifiers, identifier_spans
from .wikitext import placeholder_re

import logging
logger = logging.getLogger("mlplib.render")


@dataclass(frozen=True)
class Piece:
    value: object = None

class Title(Piece): pass
class StartParagraph(Piece): pass
class EndParagraph(Piece): pass
class Text(Piece): pass


@dataclass(frozen=True)
class Occurrence(Piece):
    """An identifier in the prose; description None if unrelated."""
    symbol: str = None
    description: str = None


@dataclass(frozen=True)
class Math(Piece):
    """A formula; spans are (start, end, symbol, description) in its TeX."""
    spans: tuple = ()


def best_descriptions(relations):
    """Return {symbol: description} of the first relation of each identifier.

    Relation files list the best ranked relation of an identifier first.
    """
    rv = {}
    for r in relations:
        rv.setdefault(r.identifier, r.description)
    return rv


def document_pieces(doc, parsed, descriptions, blacklist):
    """Generate the pieces of a parsed document."""
    formulas = analyze_formulas(parsed, blacklist)
    lookup = {}
    for ident in document_identifiers(parsed, blacklist, formulas):
        for v in ident.variants():
            lookup.setdefault(v, ident.symbol)

    yield Title(doc.title)
    for seg in parsed.prose:
        yield StartParagraph()
        buf = []
        for kind, text in prose_pieces(seg):
            if kind == 'word' and text in lookup:
                if buf:
                    yield Text(''.join(buf))
                    buf = []
                symbol = lookup[text]
                yield Occurrence(text, symbol, descriptions.get(symbol))
            elif kind == 'math':
                if buf:
                    yield Text(''.join(buf))
                    buf = []
                tex = parsed.tex(int(placeholder_re.match(text).group(1)))
                spans = tuple((start, end, i.symbol, descriptions.get(i.symbol))
                    for (i, start, end) in identifier_spans(tex, blacklist))
                yield Math(tex, spans)
            else:
                buf.append(text)
        if buf:
            yield Text(''.join(buf))
        yield EndParagraph()


class AnnotationRenderer(object):
    """Handle rendering pieces of an annotated document"""

    def render(self, doc, parsed, relations, blacklist):
        self.new_document(doc)
        for piece in document_pieces(doc, parsed,
                best_descriptions(relations), blacklist):
            self.handle_piece(piece)
        self.end_of_input()

    def new_document(self, doc):
        pass

    def end_of_input(self):
        pass

    def handle_piece(self, piece):
        meth = 'handle_' + piece.__class__.__name__
        meth = getattr(self, meth, None)
        if meth is None:
            meth = self.handle_unknown
        meth(piece)

    def handle_unknown(self, piece):
        logger.warning("%s can't handle %r", self.__class__.__name__, piece)
