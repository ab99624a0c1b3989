import pytest

from mlplib.canvas import CanvasAdapter
from mlplib.pdf import PdfRenderer, annotate_pdf
from mlplib.records import RelationRecord
from mlplib.wikitext import Document, parse_document, read_corpus


@pytest.fixture(scope='module')
def docs(corpus_dir):
    return {d.doc_id: d for d in read_corpus(corpus_dir, 'wikitext-dir')}


def test_annotations(docs, blacklist, tmp_path):
    fn = tmp_path / 'mass.pdf'
    doc = docs['Mass-energy_equivalence']
    n = annotate_pdf(doc, [RelationRecord(doc.doc_id, 'E', 'energy', 'mlp',
        0)], blacklist, str(fn))
    assert n == 3
    assert fn.read_bytes().startswith(b'%PDF')


def test_no_relations(docs, blacklist, tmp_path):
    fn = tmp_path / 'plain.pdf'
    assert annotate_pdf(docs['Wave'], [], blacklist, str(fn)) == 0
    assert fn.read_bytes().startswith(b'%PDF')


def test_long_document(blacklist, tmp_path):
    para = "The length <math>L</math> of the rope is measured. " * 20
    doc = Document('long', 'Long', '\n\n'.join([para] * 15))
    c = CanvasAdapter(str(tmp_path / 'long.pdf'), title='Long')
    r = PdfRenderer(c)
    r.render(doc, parse_document(doc),
        [RelationRecord('long', 'L', 'length', 'mlp', 0)], blacklist)
    assert r.pageno > 1
    assert r.annotations == 20 * 15
