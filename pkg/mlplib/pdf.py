"""
Rendering of annotated articles in pdf

This file is part of mlp.
"""

import re

from .render import AnnotationRenderer
from .canvas import CanvasAdapter
from .settings import get_base_settings
from .wikitext import parse_document

import logging
logger = logging.getLogger('mlplib.pdf')

_run_re = re.compile(r'\s+|\S+')


class PdfRenderer(AnnotationRenderer):
    """Lay out the article prose, identifiers coloured and annotated."""

    def __init__(self, canvas, settings=None):
        self.style = settings or get_base_settings()
        self.canvas = canvas
        self.xpos = self.ypos = None
        self.line = []
        self.pageno = 0
        self.annotations = 0

    def new_document(self, doc):
        self.new_page()

    def end_of_input(self):
        self.flush_line()
        self.canvas.showPage()
        self.canvas.save()

    def new_page(self):
        canvas = self.canvas
        if self.pageno > 0:
            canvas.showPage()
        self.pageno += 1

        page = self.style['page']
        canvas.set_margins(page.margin_left, page.margin_right,
            page.margin_top, page.margin_bottom)
        self.xpos, self.ypos = canvas.get_left(), canvas.get_top()

    def _width(self, text, style):
        return self.canvas.stringWidth(text, style.font, style.font_size)

    def add_run(self, text, section, description=None):
        for m in _run_re.finditer(text):
            word = m.group()
            style = self.style[section]
            width = self._width(word, style)
            if word.isspace():
                if not self.line:
                    continue
                word = ' '
                width = self._width(word, style)
            elif self.line and self.xpos + width > self.canvas.get_right():
                self.flush_line()

            self.line.append((word, section, description, width))
            self.xpos += width

    def flush_line(self):
        while self.line and self.line[-1][0].isspace():
            self.line.pop()
        if not self.line:
            return

        height = max(self.style[s].line_height for (_, s, _, _) in self.line)
        if self.ypos - height < self.canvas.get_bottom():
            self.new_page()
        self.ypos -= height

        x = self.canvas.get_left()
        for word, section, description, width in self.line:
            style = self.style[section]
            self.canvas.setFont(style.font, style.font_size)
            self.canvas.setFillColor(style.color)
            self.canvas.drawString(x, self.ypos, word)
            if description is not None:
                self.canvas.annotate_word(x, self.ypos, width,
                    style.font_size, description)
                self.annotations += 1
            x += width

        self.line = []
        self.xpos = self.canvas.get_left()

    def handle_Title(self, piece):
        self.add_run(piece.value, 'title')
        self.flush_line()
        self.ypos -= self.style['page'].paragraph_space

    def handle_StartParagraph(self, piece):
        pass

    def handle_EndParagraph(self, piece):
        self.flush_line()
        self.ypos -= self.style['page'].paragraph_space

    def handle_Text(self, piece):
        self.add_run(piece.value, 'prose')

    def handle_Occurrence(self, piece):
        self.add_run(piece.value, 'identifier', piece.description)

    def handle_Math(self, piece):
        tex = piece.value
        pos = 0
        for start, end, _, description in piece.spans:
            self.add_run(tex[pos:start], 'math')
            self.add_run(tex[start:end], 'identifier', description)
            pos = end
        self.add_run(tex[pos:], 'math')


def annotate_pdf(doc, relations, blacklist, path, settings=None):
    """Render *doc* as a pdf file with its identifiers annotated.

    Return the number of annotations placed.
    """
    relations = [r for r in relations if r.doc_id == doc.doc_id]
    c = CanvasAdapter(path, title=doc.title)
    r = PdfRenderer(c, settings)
    r.render(doc, parse_document(doc), relations, blacklist)
    logger.info("written %s", path)
    return r.annotations
