"""
Rendering of annotated articles as static html.

Every identifier occurrence, in the prose or inside a formula, is wrapped
in a span; identifiers with a known description carry it in the ``title``
attribute, shown by the browser when hovering.

This file is part of mlp.
"""

from html import escape

from .render import AnnotationRenderer
from .settings import get_base_settings
from .wikitext import parse_document

import logging
logger = logging.getLogger('mlplib.html')

page_head = """<!DOCTYPE html>
<html>
<head>
<meta charset="utf-8">
<title>%(title)s</title>
<style>
.%(ident)s { font-style: italic; }
.%(related)s { border-bottom: 1px dotted; cursor: help; }
.math { font-family: monospace; }
</style>
</head>
<body>
"""

page_foot = """</body>
</html>
"""


class HtmlRenderer(AnnotationRenderer):
    def __init__(self, settings=None):
        if settings is None:
            settings = get_base_settings()
        self.ident_class = settings['annotate'].identifier_class
        self.related_class = settings['annotate'].related_class
        self.parts = []

    def new_document(self, doc):
        self.parts = [page_head % {'title': escape(doc.title),
            'ident': self.ident_class, 'related': self.related_class}]

    def end_of_input(self):
        self.parts.append(page_foot)

    def getvalue(self):
        return ''.join(self.parts)

    def _identifier(self, text, description):
        if description is None:
            return '<span class="%s">%s</span>' % (
                self.ident_class, escape(text))
        return '<span class="%s %s" title="%s">%s</span>' % (
            self.ident_class, self.related_class,
            escape(description), escape(text))

    def handle_Title(self, piece):
        self.parts.append('<h1>%s</h1>\n' % escape(piece.value))

    def handle_StartParagraph(self, piece):
        self.parts.append('<p>')

    def handle_EndParagraph(self, piece):
        self.parts.append('</p>\n')

    def handle_Text(self, piece):
        self.parts.append(escape(piece.value))

    def handle_Occurrence(self, piece):
        self.parts.append(self._identifier(piece.value, piece.description))

    def handle_Math(self, piece):
        tex = piece.value
        out = ['<span class="math">']
        pos = 0
        for start, end, _, description in piece.spans:
            out.append(escape(tex[pos:start]))
            out.append(self._identifier(tex[start:end], description))
            pos = end
        out.append(escape(tex[pos:]))
        out.append('</span>')
        self.parts.append(''.join(out))


def annotate_html(doc, relations, blacklist, path=None, settings=None):
    """Render *doc* as html with its identifiers annotated.

    Return the page; also write it to *path* if given.
    """
    relations = [r for r in relations if r.doc_id == doc.doc_id]
    r = HtmlRenderer(settings)
    r.render(doc, parse_document(doc), relations, blacklist)
    rv = r.getvalue()
    if path is not None:
        with open(path, 'w', encoding='utf-8') as f:
            f.write(rv)
        logger.info("written %s", path)
    return rv
