from pathlib import Path

import pytest

from mlplib.nlp import TaggerLexicon, make_sentence, tokenize_and_tag
from mlplib.nlp import SentenceSpan
from mlplib.texvc import Blacklist, Identifier

DATA = Path(__file__).parent / 'data'


@pytest.fixture(scope='session')
def datadir():
    return DATA


@pytest.fixture(scope='session')
def corpus_dir():
    return DATA / 'corpus'


@pytest.fixture(scope='session')
def blacklist():
    return Blacklist.load()


@pytest.fixture(scope='session')
def lexicon():
    return TaggerLexicon.load()


@pytest.fixture
def tag(lexicon):
    """Return a function turning a text into a chunked, annotated sentence.

    Identifiers are given as symbols; the text has no math nor links.
    """
    def tag_(text, idents=(), doc_id='doc', index=0):
        idents = [Identifier(i) for i in idents]
        span = SentenceSpan(0, 0, len(text), text)
        tokens = tokenize_and_tag(span, [], lexicon)
        return make_sentence(doc_id, index, tokens, (), idents, text)

    return tag_

