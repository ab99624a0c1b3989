"""
Customized reportlab canvas

This file is part of mlp.
"""

from reportlab.pdfgen import canvas
from reportlab.lib.pagesizes import A4

from mlplib import consts

import logging
logger = logging.getLogger('mlplib.canvas')


class CanvasAdapter(canvas.Canvas):
    "My convenience adapter for the reportlab canvas."

    def __init__(self, filename, pagesize=A4, title=None, author=None):
        canvas.Canvas.__init__(self, filename, pagesize=pagesize)

        self.setTitle(title or 'Annotated article')
        if author:
            self.setAuthor(author)

        # reportlab doesn't provide a nicer interface to this (yet)
        self._doc.info.producer = 'mlp ' + consts.version + '\n' \
            + consts.progurl

        self.pagesize = pagesize
        self.left = self.right = self.top = self.bottom = None

    def set_margins(self, left, right, top, bottom):
        self.left = left
        self.right = self.pagesize[0] - right
        self.top = self.pagesize[1] - top
        self.bottom = bottom

    def get_left(self):
        "Get left start of drawable area"
        return self.left

    def get_right(self):
        "Get right end of drawable area"
        return self.right

    def get_top(self):
        "Get top start of drawable area"
        return self.top

    def get_bottom(self):
        "Get bottom end of drawable area"
        return self.bottom

    def annotate_word(self, x, y, width, height, text):
        """Attach a pop-up note to the box of a word drawn at (x, y)."""
        self.textAnnotation(text, Rect=(x, y - 2, x + width, y + height),
            relative=0)
