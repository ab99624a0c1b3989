import pytest

from mlplib.nlp import (IDENTIFIER, LINK, NOUN_PHRASE, WORD, Sentence,
    SentenceToken)
from mlplib.patterns import PATTERNS, match_document, match_patterns


def found(sentence):
    return [(r.identifier, r.description, r.pattern_id)
        for r in match_patterns(sentence)]


@pytest.mark.parametrize('text, idents, expected', [
    ("the energy E", ['E'], [('E', 'energy', 1)]),
    ("let r be the radius", ['r'], [('r', 'radius', 4)]),
    ("m denotes the mass", ['m'], [('m', 'mass', 6)]),
    ("the mass is denoted by m", ['m'], [('m', 'mass', 5)]),
])
def test_examples(tag, text, idents, expected):
    assert found(tag(text, idents)) == expected


def test_let_wins(tag):
    # the inner "r be the radius" must not match anything else
    rels = match_patterns(tag("let r be the radius", ['r']))
    assert [r.pattern_id for r in rels] == [4]


def test_longest_copula(tag):
    assert found(tag("E is the energy", ['E'])) == [('E', 'energy', 3)]
    assert found(tag("E is energy", ['E'])) == [('E', 'energy', 2)]
    assert found(tag("E is an energy", ['E'])) == []


def test_overlap_precedence(tag):
    # a stronger pattern wins over an earlier overlapping one
    assert found(tag("the symbol m denotes the mass", ['m'])) \
        == [('m', 'mass', 6)]
    assert found(tag("In this case k is the spring constant", ['k'])) \
        == [('k', 'spring constant', 3)]
    assert found(tag("The Hamiltonian H is the total energy", ['H'])) \
        == [('H', 'total energy', 3)]
    # non overlapping matches are all kept, in text order
    assert found(tag("the energy E and let m be the mass", ['E', 'm'])) \
        == [('E', 'energy', 1), ('m', 'mass', 4)]


def test_case_insensitive(tag):
    assert found(tag("Let r Be The radius", ['r'])) == [('r', 'radius', 4)]
    assert found(tag("The mass IS DENOTED BY m", ['m'])) \
        == [('m', 'mass', 5)]


def test_denotes_any_determiner(tag):
    for det in ['the', 'a', 'an', 'this', 'some']:
        assert found(tag("m denotes %s mass" % det, ['m'])) \
            == [('m', 'mass', 6)]
    assert found(tag("m denotes mass", ['m'])) == []


def test_adjacency(tag):
    assert found(tag("the energy , E", ['E'])) == []
    assert found(tag("the energy of E", ['E'])) == []


def test_link_description():
    s = Sentence('doc', 3, (
        SentenceToken('special relativity', 'NN', LINK),
        SentenceToken('E', 'SYM', IDENTIFIER, symbol='E')))
    (rel,) = match_patterns(s)
    assert (rel.identifier, rel.description, rel.pattern_id) \
        == ('E', 'special relativity', 1)
    assert rel.sentence_index == 3
    assert rel.doc_id == 'doc'


def test_position(tag):
    rels = match_patterns(
        tag("Let p be the momentum and let E be the energy", ['p', 'E']))
    assert [(r.identifier, r.position) for r in rels] == [('p', 0), ('E', 5)]


def test_no_identifiers(tag):
    assert found(tag("the energy is the mass")) == []
    assert match_patterns(Sentence('doc', 0, ())) == []


def check_window(sentence, rel):
    """Re-scan the tokens from the match position against the skeleton."""
    expanded = []
    for t in sentence.tokens:
        if t.determiner:
            expanded.append(SentenceToken(t.determiner, 'DT', WORD))
        expanded.append(t)

    skeleton = PATTERNS[rel.pattern_id]
    starts = [i for i, t in enumerate(expanded)
        if t is sentence.tokens[rel.position]]
    for start in starts:
        window = expanded[start:start + len(skeleton)]
        if len(window) < len(skeleton):
            continue
        ident = window[skeleton.index('ID')]
        desc = window[skeleton.index('DESC')]
        if ident.kind == IDENTIFIER and ident.symbol == rel.identifier \
                and desc.kind in (NOUN_PHRASE, LINK) \
                and desc.text == rel.description:
            return True
    return False


def load_fixture(path):
    rv = []
    with open(path, encoding='utf-8') as f:
        for line in f:
            line = line.rstrip('\n')
            if not line or line.startswith('#'):
                continue
            cols = line.split('\t') + ['']
            text, idents, expected = cols[:3]
            expected = [tuple(rel.split('|'))
                for rel in expected.split(';') if rel]
            expected = [(i, d, int(p)) for (i, d, p) in expected]
            rv.append((text, idents.split(), expected))
    return rv


def test_fixture(tag, datadir):
    cases = load_fixture(datadir / 'patterns.tsv')
    assert len(cases) == 35
    assert sum(1 for c in cases if not c[2]) == 10
    assert set(p for c in cases for (_, _, p) in c[2]) == set(PATTERNS)

    for i, (text, idents, expected) in enumerate(cases):
        s = tag(text, idents, index=i)
        assert found(s) == expected, text
        for rel in match_patterns(s):
            assert check_window(s, rel), text


def test_match_document(tag, datadir):
    cases = load_fixture(datadir / 'patterns.tsv')
    sents = [tag(text, idents, index=i)
        for i, (text, idents, _) in enumerate(cases)]
    rels = match_document(sents)
    assert len(rels) == sum(len(c[2]) for c in cases)
    assert [r.sentence_index for r in rels] \
        == sorted(r.sentence_index for r in rels)
    keys = [(r.sentence_index, r.position) for r in rels]
    assert len(keys) == len(set(keys))
