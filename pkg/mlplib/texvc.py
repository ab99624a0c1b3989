"""
texvc formula analysis: tokenizer and identifier extraction.

This file is part of mlp.
"""

import re
import pkgutil
from dataclasses import dataclass, field

from .error import ConfigError

import logging
logger = logging.getLogger('mlplib.texvc')


@dataclass(frozen=True)
class Token:
    value: object
    start: int = field(default=0, compare=False)
    end: int = field(default=0, compare=False)

    def __repr__(self):
        return "%s(%r)" % (self.__class__.__name__, self.value)

class Command(Token): pass
class Letter(Token): pass
class Digit(Token): pass
class Symbol(Token): pass
class Sub(Token): pass
class Sup(Token): pass
class Group(Token): pass

class Opaque(Token):
    """Body of \\text{} and friends, kept verbatim and never analyzed."""


# Commands whose braced argument is text, not math.
opaque_commands = frozenset([
    'text', 'mathrm', 'textrm', 'mbox', 'operatorname', 'textit', 'textbf',
    'textsf', 'texttt', 'begin', 'end', 'label', 'color'])

greek = {
    'alpha': u'α', 'beta': u'β', 'gamma': u'γ', 'delta': u'δ',
    'epsilon': u'ϵ', 'varepsilon': u'ε', 'zeta': u'ζ', 'eta': u'η',
    'theta': u'θ', 'vartheta': u'ϑ', 'iota': u'ι', 'kappa': u'κ',
    'lambda': u'λ', 'mu': u'μ', 'nu': u'ν', 'xi': u'ξ', 'pi': u'π',
    'varpi': u'ϖ', 'rho': u'ρ', 'varrho': u'ϱ', 'sigma': u'σ',
    'varsigma': u'ς', 'tau': u'τ', 'upsilon': u'υ', 'phi': u'ϕ',
    'varphi': u'φ', 'chi': u'χ', 'psi': u'ψ', 'omega': u'ω',
    'Gamma': u'Γ', 'Delta': u'Δ', 'Theta': u'Θ', 'Lambda': u'Λ',
    'Xi': u'Ξ', 'Pi': u'Π', 'Sigma': u'Σ', 'Upsilon': u'Υ', 'Phi': u'Φ',
    'Psi': u'Ψ', 'Omega': u'Ω',
}
greek_names = dict((c, n) for (n, c) in greek.items())
# the upright phi is written \phi more often than \varphi
greek_names[u'φ'] = 'phi'

_token_re = re.compile(u"""
      (?P<command>\\\\(?:[A-Za-z]+|.))
    | (?P<open>\\{)
    | (?P<close>\\})
    | (?P<sub>_)
    | (?P<sup>\\^)
    | (?P<letter>[A-Za-zΑ-Ωα-ωϑϕϖϱϵ])
    | (?P<digit>[0-9])
    | (?P<space>\\s+)
    | (?P<symbol>.)
    """, re.X | re.S)

_kinds = {
    'command': Command, 'letter': Letter, 'digit': Digit,
    'symbol': Symbol, 'sub': Sub, 'sup': Sup,
}


def tokenize_tex(tex, warnings=None):
    """Split *tex* into a list of tokens, braces folded into `Group`s.

    Unbalanced braces are tolerated: a stray '}' is dropped, unclosed groups
    extend to the end of the input. Both cases log a warning, and append
    it to *warnings* if a list is given.
    """
    def warn(msg, *args):
        msg = msg % args
        logger.warning(msg)
        if warnings is not None:
            warnings.append(msg)

    stack = [[]]
    starts = []
    pos = 0
    while pos < len(tex):
        m = _token_re.match(tex, pos)
        kind = m.lastgroup
        value = m.group(kind)

        if kind == 'space':
            pass

        elif kind == 'open':
            stack.append([])
            starts.append(m.start())

        elif kind == 'close':
            if len(stack) > 1:
                tokens = stack.pop()
                stack[-1].append(Group(tokens, starts.pop(), m.end()))
            else:
                warn("unbalanced '}' at offset %d in formula: %s",
                    m.start(), tex)

        elif kind == 'command' and value[1:] in opaque_commands:
            body, end = _opaque_argument(tex, m.end())
            stack[-1].append(Opaque(body, m.start(), end))
            pos = end
            continue

        else:
            stack[-1].append(_kinds[kind](value, m.start(), m.end()))

        pos = m.end()

    if len(stack) > 1:
        warn("unbalanced '{' in formula: %s", tex)
        while len(stack) > 1:
            tokens = stack.pop()
            stack[-1].append(Group(tokens, starts.pop(), len(tex)))

    return stack[0]


def _opaque_argument(tex, pos):
    """Return the braced argument starting at *pos* and where it ends."""
    while pos < len(tex) and tex[pos].isspace():
        pos += 1
    if pos >= len(tex):
        return '', pos
    if tex[pos] == '\\':
        m = _token_re.match(tex, pos)
        return m.group(), m.end()
    if tex[pos] != '{':
        return tex[pos], pos + 1

    depth = 0
    i = pos
    while i < len(tex):
        c = tex[i]
        if c == '\\':
            i += 2
            continue
        if c == '{':
            depth += 1
        elif c == '}':
            depth -= 1
            if depth == 0:
                return tex[pos + 1:i], i + 1
        i += 1

    return tex[pos + 1:], len(tex)


@dataclass(frozen=True)
class Identifier:
    """A normalized identifier: one letter, optionally one subscript char."""
    symbol: str
    display: str = field(default=None, compare=False)

    def __post_init__(self):
        if self.display is None:
            object.__setattr__(self, 'display', self.symbol)

    def __str__(self):
        return self.symbol

    @property
    def base(self):
        return self.symbol.split('_', 1)[0]

    @property
    def subscript(self):
        parts = self.symbol.split('_', 1)
        return parts[1] if len(parts) > 1 else None

    @property
    def tex_name(self):
        """The TeX spelling for greek identifiers, else None."""
        name = greek_names.get(self.base)
        if name is None:
            return None
        if self.subscript:
            return '\\%s_%s' % (name, self.subscript)
        return '\\' + name

    def variants(self):
        """Surface forms under which the identifier may appear in prose."""
        rv = set([self.symbol, self.display])
        if self.tex_name:
            rv.add(self.tex_name)
        return rv


@dataclass(frozen=True)
class Formula:
    block_index: int
    tex: str
    identifiers: tuple


class Blacklist(object):
    """Symbols never taken for identifiers. Immutable once loaded."""

    def __init__(self, entries):
        self.entries = frozenset(entries)

    @classmethod
    def load(cls, path=None):
        """Load a blacklist file; the shipped default if *path* is None."""
        if path is None:
            data = pkgutil.get_data('mlplib', 'data/blacklist.txt')
            return cls.parse(data.decode('utf-8'))

        try:
            with open(path, encoding='utf-8') as f:
                return cls.parse(f.read())
        except OSError as e:
            raise ConfigError("can't read blacklist %s: %s" % (path, e))

    @classmethod
    def parse(cls, text):
        entries = []
        for line in text.splitlines():
            line = line.split('#', 1)[0].strip()
            if line:
                entries.extend(line.split())
        return cls(entries)

    def __contains__(self, symbol):
        return symbol in self.entries

    def __len__(self):
        return len(self.entries)

    def rejects(self, ident):
        if ident.symbol in self.entries:
            return True
        name = greek_names.get(ident.symbol)
        return name is not None and name in self.entries


def _base_of(token):
    """Return (symbol, display) if *token* can start an identifier."""
    if isinstance(token, Letter):
        return token.value, token.value
    if isinstance(token, Command) and token.value[1:] in greek:
        return greek[token.value[1:]], token.value
    return None


def _single_char(token):
    """Return the single character a subscript stands for, or None."""
    while isinstance(token, Group) and len(token.value) == 1:
        token = token.value[0]
    if isinstance(token, (Letter, Digit)):
        return token.value
    if isinstance(token, Command) and token.value[1:] in greek:
        return greek[token.value[1:]]
    return None


def _occurrences(tokens, tex):
    """Yield (symbol, display, start, end) for every candidate identifier."""
    i = 0
    n = len(tokens)
    while i < n:
        tok = tokens[i]

        if isinstance(tok, (Sub, Sup)):
            # script without a base: the argument is dropped
            i += 2
            continue

        if isinstance(tok, Group):
            for occ in _occurrences(tok.value, tex):
                yield occ
            i += 1
            continue

        base = _base_of(tok)
        if base is None:
            i += 1
            continue

        symbol, display = base
        end = tok.end
        j = i + 1
        while j < n:
            nxt = tokens[j]
            if isinstance(nxt, Symbol) and nxt.value == "'":
                display += "'"
                end = nxt.end
                j += 1
            elif isinstance(nxt, Sup):
                # superscripts are never part of the identifier
                j += 2
            elif isinstance(nxt, Sub):
                arg = tokens[j + 1] if j + 1 < n else None
                char = _single_char(arg) if arg is not None else None
                if char is not None and '_' not in symbol:
                    symbol += '_' + char
                    end = arg.end
                    display = tex[tok.start:end]
                j += 2
            else:
                break

        yield symbol, display, tok.start, end
        i = j


def identifier_spans(tex, blacklist, warnings=None):
    """Return every identifier occurrence in *tex* with its source span.

    The result is a list of (Identifier, start, end), in source order.
    """
    tokens = tokenize_tex(tex, warnings)
    rv = []
    for symbol, display, start, end in _occurrences(tokens, tex):
        ident = Identifier(symbol, display)
        if not blacklist.rejects(ident):
            rv.append((ident, start, end))
    return rv


def _unique(idents):
    seen = set()
    rv = []
    for ident in idents:
        if ident.symbol not in seen:
            seen.add(ident.symbol)
            rv.append(ident)
    return tuple(rv)


def extract_identifiers(tex, blacklist, warnings=None):
    """Return the identifiers of a formula, in order of first occurrence."""
    return _unique(i for (i, _, _) in identifier_spans(tex, blacklist, warnings))


def analyze_formulas(parsed, blacklist):
    """Return the `Formula` of every math block of a parsed document."""
    return [Formula(k, tex, extract_identifiers(tex, blacklist, parsed.warnings))
        for (k, tex) in parsed.math_blocks]


def document_identifiers(parsed, blacklist, formulas=None):
    """Return the union of the identifiers of all the document formulas."""
    if formulas is None:
        formulas = analyze_formulas(parsed, blacklist)
    return _unique(i for f in formulas for i in f.identifiers)
