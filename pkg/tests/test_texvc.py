import re

import pytest

from mlplib.error import ConfigError
from mlplib.texvc import (Blacklist, Command, Digit, Group, Identifier,
    Letter, Opaque, Sub, Sup, Symbol, document_identifiers,
    extract_identifiers, identifier_spans, tokenize_tex)
from mlplib.wikitext import Document, parse_document


def symbols(tex, blacklist):
    return [i.symbol for i in extract_identifiers(tex, blacklist)]


def test_tokenize_simple():
    assert tokenize_tex("E=mc^2") == [
        Letter('E'), Symbol('='), Letter('m'), Letter('c'), Sup('^'),
        Digit('2')]


def test_tokenize_opaque():
    assert tokenize_tex(r"\text{log} x") == [Opaque('log'), Letter('x')]
    assert tokenize_tex(r"\mathrm{d}t") == [Opaque('d'), Letter('t')]


def test_tokenize_group():
    assert tokenize_tex("T_{before}") == [
        Letter('T'), Sub('_'),
        Group([Letter(c) for c in 'before'])]


def test_tokenize_command():
    assert tokenize_tex(r"\frac{a}{\alpha}") == [
        Command(r'\frac'), Group([Letter('a')]),
        Group([Command(r'\alpha')])]


def test_tokenize_offsets():
    toks = tokenize_tex(r"x + \beta")
    assert [(t.start, t.end) for t in toks] == [(0, 1), (2, 3), (4, 9)]


def test_tokenize_unbalanced():
    warnings = []
    assert tokenize_tex("{x", warnings) == [Group([Letter('x')])]
    assert tokenize_tex("x}", warnings) == [Letter('x')]
    assert len(warnings) == 2


@pytest.mark.parametrize('tex, expected', [
    ("E=mc^2", ['E', 'm', 'c']),
    ("T_{before} - T_{after}", ['T']),
    (r"\text{log} x", ['x']),
    ("a A I", []),
    ("a I x", ['x']),
    (r"\sigma^{2} + x_0", [u'σ', 'x_0']),
    (r"\log x + \sin y", ['x', 'y']),
    (r"\sum_{i=1}^n x_i", ['x_i']),
    (r"\frac{1}{2} m v^2", ['m', 'v']),
    ("x' + y''", ['x', 'y']),
    ("x_{0}", ['x_0']),
    (r"\alpha_\beta", [u'α_β']),
    (r"F = G \frac{m_1 m_2}{r^2}", ['F', 'G', 'm_1', 'm_2', 'r']),
    ("I_{xx}", []),
    (u"λ = c / f", [u'λ', 'c', 'f']),
    (r"\pi r^2", ['r']),
    ("x_{ab}", ['x']),
    (r"\operatorname{tr} M", ['M']),
    ("", []),
])
def test_extract(tex, expected, blacklist):
    assert symbols(tex, blacklist) == expected


def test_extract_prime_display(blacklist):
    (x,) = extract_identifiers("x'", blacklist)
    assert x.symbol == 'x'
    assert x.display == "x'"


def test_identifier_equality():
    assert Identifier('x_0', 'x_{0}') == Identifier('x_0')
    assert Identifier(u'σ').tex_name == r'\sigma'
    assert Identifier(u'σ_x').tex_name == r'\sigma_x'
    assert Identifier('x').tex_name is None
    assert Identifier(u'σ', r'\sigma').variants() == set([u'σ', r'\sigma'])


def test_symbol_grammar(blacklist):
    grammar = re.compile(r'^[^\W\d_](?:_[^\W_]|_\d)?$')
    for tex in formulas:
        for i in extract_identifiers(tex, blacklist):
            assert grammar.match(i.symbol), i
            assert not blacklist.rejects(i)


def test_identifier_spans(blacklist):
    tex = r"E = m c^2 + \alpha_0"
    spans = identifier_spans(tex, blacklist)
    assert [(i.symbol, tex[s:e]) for (i, s, e) in spans] == [
        ('E', 'E'), ('m', 'm'), ('c', 'c'), (u'α_0', r'\alpha_0')]


def test_blacklist_load(tmp_path, blacklist):
    for s in ['a', 'A', 'I', 'e', 'log', 'sin', 'pi', 'd']:
        assert s in blacklist
    fn = tmp_path / 'bl.txt'
    fn.write_text("# mine\nk  # a constant\nE\n", encoding='utf-8')
    bl = Blacklist.load(str(fn))
    assert len(bl) == 2
    assert symbols("E = k x", bl) == ['x']


def test_blacklist_greek_name(blacklist):
    # pi is blacklisted by name, written either way
    assert symbols(r"\pi + x", blacklist) == ['x']
    assert symbols(u"π + x", blacklist) == ['x']


def test_blacklist_missing(tmp_path):
    with pytest.raises(ConfigError):
        Blacklist.load(str(tmp_path / 'nope.txt'))


def test_document_identifiers(blacklist):
    doc = Document('d', 'd', "<math>E=mc^2</math> and <math>m_0</math> "
        "and <math>E=mc^2</math>")
    idents = document_identifiers(parse_document(doc), blacklist)
    assert [i.symbol for i in idents] == ['E', 'm', 'c', 'm_0']

    doc = Document('d', 'd', "no math at all")
    assert document_identifiers(parse_document(doc), blacklist) == ()


def test_deterministic(blacklist):
    for tex in formulas:
        assert extract_identifiers(tex, blacklist) \
            == extract_identifiers(tex, blacklist)


_sup_re = re.compile(r'\^\{[^{}]*\}')


def test_superscripts_never_matter(blacklist):
    n = 0
    for tex in formulas:
        stripped = _sup_re.sub('', tex)
        if stripped != tex:
            n += 1
        assert symbols(tex, blacklist) == symbols(stripped, blacklist), tex
    assert n >= 30


formulas = [
    r"E = mc^{2}",
    r"x^{2} + y^{2} = r^{2}",
    r"F = m a^{1}",
    r"\sigma^{2} = \frac{1}{N} \sum_{i=1}^{N} (x_i - \mu)^{2}",
    r"e^{i \pi} + 1 = 0",
    r"p = m v^{n}",
    r"T_{before}^{2} - T_{after}",
    r"\alpha^{\beta} + \gamma",
    r"x_0^{k} + x_1",
    r"V = I R^{-1}",
    r"K = \frac{1}{2} m v^{2}",
    r"U = m g h^{t}",
    r"P V^{\gamma} = C",
    r"\lambda = \frac{h}{p^{x}}",
    r"f(x) = a x^{2} + b x + c",
    r"\nabla^{2} \phi = -\frac{\rho}{\epsilon_0}",
    r"A = \pi r^{2}",
    r"c^{2} = a^{2} + b^{2}",
    r"\omega = 2 \pi f^{1}",
    r"Q = C V^{2}",
    r"n \lambda = 2 d \sin\theta^{m}",
    r"F = G \frac{m_1 m_2}{r^{2}}",
    r"E_k = \frac{1}{2} m v^{2}",
    r"y = \mathrm{e}^{k t}",
    r"N(t) = N_0 e^{-\lambda t}",
    r"\Delta S \geq 0^{q}",
    r"\rho = \frac{m}{V^{z}}",
    r"I = \int_a^b f(x)^{2} dx",
    r"B^{\mu} = \mu_0 H",
    r"\tau = r \times F^{T}",
    r"z^{n} = w",
    r"x_{ij}^{2} + y_j",
    r"L = T^{2} - U",
    r"H = \sum_k p_k^{2} / 2 m",
    r"\Phi^{*} = \oint E \cdot dA",
    r"\text{log}^{2} x",
    r"g^{ab} R_{ab}",
    r"M^{2} + \Omega",
    r"u' = u^{2}",
    r"\kappa^{\kappa} s",
    r"\chi^{2} = \sum (O - E)^{2} / E",
    r"\psi^{*} \psi",
    r"Z = \sum_i e^{-\beta E_i}",
    r"W = F s^{\theta}",
    r"j^{\nu} = \sigma E",
    r"R = \frac{V}{I^{2}}",
    r"\vec{F}^{ext} = m \vec{a}",
    r"s = u t + \frac{1}{2} a t^{2}",
    r"{x}^{2}",
    r"\eta^{3} = 1 - \frac{T_c}{T_h}",
]
