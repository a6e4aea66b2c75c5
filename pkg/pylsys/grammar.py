# ******************************************************************************
# pylsys.grammar module
# ******************************************************************************
#
# deterministic context-free (D0L) L-systems: grammar files, expansion and
# lazy symbol streams
#
# ******************************************************************************
# License
# ******************************************************************************
# The MIT License (MIT)
#
# Copyright (c) 2016 Michael E. Fortunato, Coray M. Colina
#
# Permission is hereby granted, free of charge, to any person obtaining a copy
# of this software and associated documentation files (the "Software"), to deal
# in the Software without restriction, including without limitation the rights
# to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
# copies of the Software, and to permit persons to whom the Software is
# furnished to do so, subject to the following conditions:
#
# The above copyright notice and this permission notice shall be included in
# all copies or substantial portions of the Software.
#
# THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
# IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
# FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
# AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
# LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
# OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN
# THE SOFTWARE.

import os
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
import pandas as pd

from pylsys import verbose_print, warning_print, debug_print
from pylsys.utils import (PylsysError, GrammarError, ExpansionLimitError,
                          StreamExhaustedError, open_text)


def max_expansion_from_env(environ=None):
    """expansion cap from PYLSYS_MAX_EXPANSION, 2**26 when unset"""
    value = (os.environ if environ is None else environ).get('PYLSYS_MAX_EXPANSION')
    if value is None:
        return 2 ** 26
    try:
        cap = int(value)
    except ValueError:
        cap = 0
    if cap < 1:
        raise PylsysError("PYLSYS_MAX_EXPANSION must be a positive integer, got '{}'".format(value))
    return cap


MAX_EXPANSION = max_expansion_from_env()

REFERENCE_GRAMMAR = """\
# OR1D subfamily generator
alphabet: A C G T
axiom: C
A -> CTG
C -> CCA
T -> TGC
G -> GAC
"""


@dataclass(frozen=True)
class LSystemSpec:
    """pylsys.grammar.LSystemSpec

    Deterministic context-free L-system. Symbols are single characters.

    Attributes:
        alphabet: tuple of symbols in declaration order
        axiom: starting string
        productions: tuple of (symbol, replacement) pairs in alphabet order
    """
    alphabet: Tuple[str, ...]
    axiom: str
    productions: Tuple[Tuple[str, str], ...]

    def __post_init__(self):
        if not self.alphabet:
            raise GrammarError('empty alphabet')
        if len(set(self.alphabet)) != len(self.alphabet):
            raise GrammarError('duplicate symbol in alphabet')
        if not self.axiom:
            raise GrammarError('missing axiom')
        symbols = set(self.alphabet)
        for c in self.axiom:
            if c not in symbols:
                raise GrammarError("axiom symbol '{}' is not in the alphabet".format(c))
        lhs = [s for s, _ in self.productions]
        if sorted(lhs) != sorted(self.alphabet):
            missing = [s for s in self.alphabet if s not in lhs]
            raise GrammarError('productions are not total over the alphabet (missing {})'
                               .format(' '.join(missing) or 'none, duplicates present'))
        for s, r in self.productions:
            if not r:
                raise GrammarError("empty replacement for '{}'".format(s))
            for c in r:
                if c not in symbols:
                    raise GrammarError("symbol '{}' in production for '{}' is not in the alphabet"
                                       .format(c, s))

    @property
    def rules(self):
        return dict(self.productions)

    def production(self, symbol):
        return self.rules[symbol]

    def translation_table(self):
        return str.maketrans(self.rules)


@dataclass(frozen=True)
class ExpansionReport:
    iteration: int
    length: int
    sequence: Optional[str] = None


def _is_printable(c):
    return 32 <= ord(c) < 127


def parse_spec(text):
    """pylsys.grammar.parse_spec

    Parses grammar file content. Lines are an 'alphabet:' declaration, an 'axiom:'
    declaration and one 'X -> YZW' rule per symbol; '#' starts a comment and blank
    lines are ignored.

    Args:
        text: grammar file content

    Returns:
        :class:`~pylsys.grammar.LSystemSpec`
    """
    alphabet = None
    axiom = None
    rules = {}
    rule_lines = {}

    for lineno, raw in enumerate(text.splitlines(), 1):
        for col, c in enumerate(raw, 1):
            if c != '\t' and not _is_printable(c):
                raise GrammarError('non-printable character {!r}'.format(c), lineno, col)
        line = raw.split('#', 1)[0]
        if not line.strip():
            continue
        indent = len(line) - len(line.lstrip())
        key, sep, value = line.partition(':')
        key = key.strip().lower()

        if sep and key == 'alphabet':
            if alphabet is not None:
                raise GrammarError('alphabet declared twice', lineno, indent + 1)
            alphabet = []
            offset = len(line) - len(value)
            for token, col in _tokens(value, offset):
                if len(token) != 1:
                    raise GrammarError("symbol '{}' must be a single character".format(token),
                                       lineno, col)
                if token in alphabet:
                    raise GrammarError("symbol '{}' declared twice".format(token), lineno, col)
                alphabet.append(token)
            if not alphabet:
                raise GrammarError('empty alphabet', lineno, len(line) + 1)

        elif sep and key == 'axiom':
            if axiom is not None:
                raise GrammarError('axiom declared twice', lineno, indent + 1)
            offset = len(line) - len(value)
            tokens = list(_tokens(value, offset))
            if not tokens:
                raise GrammarError('empty axiom', lineno, len(line) + 1)
            if len(tokens) > 1:
                raise GrammarError('axiom must be a single word', lineno, tokens[1][1])
            axiom = (tokens[0][0], tokens[0][1], lineno)

        elif '->' in line:
            lhs, _, rhs = line.partition('->')
            lhs_tokens = list(_tokens(lhs, 0))
            rhs_offset = len(lhs) + 2
            rhs_tokens = list(_tokens(rhs, rhs_offset))
            if len(lhs_tokens) != 1 or len(lhs_tokens[0][0]) != 1:
                raise GrammarError('rule must rewrite exactly one symbol', lineno, indent + 1)
            if not rhs_tokens:
                raise GrammarError('empty replacement', lineno, len(line.rstrip()) + 1)
            if len(rhs_tokens) > 1:
                raise GrammarError('replacement must be a single word', lineno, rhs_tokens[1][1])
            symbol = lhs_tokens[0][0]
            if symbol in rules:
                raise GrammarError("duplicate rule for '{}' (first defined on line {})"
                                   .format(symbol, rule_lines[symbol][0]), lineno, lhs_tokens[0][1])
            rules[symbol] = rhs_tokens[0]
            rule_lines[symbol] = (lineno, lhs_tokens[0][1])

        else:
            raise GrammarError("expected 'alphabet:', 'axiom:' or a 'X -> Y' rule", lineno, indent + 1)

    if alphabet is None:
        raise GrammarError('missing alphabet')
    if axiom is None:
        raise GrammarError('missing axiom')

    symbols = set(alphabet)
    word, col, lineno = axiom
    for i, c in enumerate(word):
        if c not in symbols:
            raise GrammarError("axiom symbol '{}' is not in the alphabet".format(c), lineno, col + i)
    for symbol, (replacement, col) in rules.items():
        lineno, lhs_col = rule_lines[symbol]
        if symbol not in symbols:
            raise GrammarError("symbol '{}' is not in the alphabet".format(symbol), lineno, lhs_col)
        for i, c in enumerate(replacement):
            if c not in symbols:
                raise GrammarError("symbol '{}' is not in the alphabet".format(c), lineno, col + i)
    for symbol in alphabet:
        if symbol not in rules:
            raise GrammarError("no rule for symbol '{}'".format(symbol))

    return LSystemSpec(alphabet=tuple(alphabet), axiom=axiom[0],
                       productions=tuple((s, rules[s][0]) for s in alphabet))


def _tokens(text, offset):
    """yields (token, 1-based column) for whitespace separated words of text"""
    col = 0
    for word in text.split():
        col = text.index(word, col)
        yield word, offset + col + 1
        col += len(word)


def read_grammar(file_, **kwargs):
    """pylsys.grammar.read_grammar

    Reads a grammar file

    Args:
        file_: grammar file name or grammar text
        quiet (optional): if True, do not print status

    Returns:
        :class:`~pylsys.grammar.LSystemSpec`
    """
    f, is_file = open_text(file_)
    with f:
        text = f.read()
    if is_file and not kwargs.get('quiet'):
        verbose_print('reading grammar file "%s"' % file_)
    return parse_spec(text)


def format_spec(spec):
    """pylsys.grammar.format_spec

    Writes spec in grammar file format; parse_spec(format_spec(spec)) == spec
    """
    lines = ['alphabet: ' + ' '.join(spec.alphabet), 'axiom: ' + spec.axiom]
    lines += ['{} -> {}'.format(s, r) for s, r in spec.productions]
    return '\n'.join(lines) + '\n'


def reference_spec():
    """pylsys.grammar.reference_spec

    A -> CTG, C -> CCA, T -> TGC, G -> GAC with axiom C
    """
    return parse_spec(REFERENCE_GRAMMAR)


def growth_matrix(spec):
    """pylsys.grammar.growth_matrix

    Symbol count matrix M where M[i, j] is the number of alphabet[j] in the
    production of alphabet[i]. Python integers (object dtype) so counts never overflow.

    Returns:
        (M, axiom count vector)
    """
    index = {s: i for i, s in enumerate(spec.alphabet)}
    k = len(spec.alphabet)
    m = np.zeros((k, k), dtype=object)
    for s, r in spec.productions:
        for c in r:
            m[index[s], index[c]] += 1
    v = np.zeros(k, dtype=object)
    for c in spec.axiom:
        v[index[c]] += 1
    return m, v


def _lengths(spec):
    """yields (iteration, length, count vector) without building strings"""
    m, v = growth_matrix(spec)
    n = 0
    while True:
        yield n, int(v.sum()), v
        v = v.dot(m)
        n += 1


def expansion_lengths(spec, n_max):
    """pylsys.grammar.expansion_lengths

    Length of every expansion from the axiom up to n_max iterations

    Args:
        spec: :class:`~pylsys.grammar.LSystemSpec`
        n_max: last iteration

    Returns:
        pandas.Series of lengths indexed by iteration
    """
    if n_max < 0:
        raise PylsysError('iteration count must be non-negative')
    lengths = []
    for n, length, _ in _lengths(spec):
        if n > n_max:
            break
        lengths.append(length)
    return pd.Series(lengths, index=pd.RangeIndex(n_max + 1, name='iteration'), name='length')


def smallest_iteration(spec, min_length, **kwargs):
    """pylsys.grammar.smallest_iteration

    Finds the smallest iteration whose expansion has at least min_length symbols

    Args:
        spec: :class:`~pylsys.grammar.LSystemSpec`
        min_length: required number of symbols
        max_length (optional): expansion cap (MAX_EXPANSION)

    Returns:
        iteration count
    """
    max_length = kwargs.get('max_length', MAX_EXPANSION)
    seen = set()
    for n, length, v in _lengths(spec):
        if length >= min_length:
            if length > max_length:
                raise ExpansionLimitError(max_length, length)
            return n
        if length > max_length:
            raise ExpansionLimitError(max_length, length)
        key = tuple(v)
        if key in seen:
            raise StreamExhaustedError(
                'expansion is periodic at length {} and never reaches {} symbols'
                .format(length, min_length), consumed=0)
        seen.add(key)


def expand(spec, n, **kwargs):
    """pylsys.grammar.expand

    Rewrites every symbol of the axiom simultaneously, n times. Once a word
    recurs the remaining iterations are reduced modulo its period.

    Args:
        spec: :class:`~pylsys.grammar.LSystemSpec`
        n: number of iterations (0 returns the axiom)
        max_length (optional): expansion cap (MAX_EXPANSION)

    Returns:
        expanded string
    """
    max_length = kwargs.get('max_length', MAX_EXPANSION)
    if n < 0:
        raise PylsysError('iteration count must be non-negative, got {}'.format(n))
    seen, last = set(), None
    for i, length, v in _lengths(spec):
        if length > max_length:
            raise ExpansionLimitError(max_length, length)
        if i == n:
            break
        if length != last:
            seen, last = set(), length
        key = tuple(v)
        # counts repeat, so the length never grows again
        if key in seen:
            break
        seen.add(key)
    table = spec.translation_table()
    word = spec.axiom
    # words of the current length and the iteration they appeared at
    plateau = {word: 0}
    for i in range(1, n + 1):
        step = word.translate(table)
        if len(step) != len(word):
            plateau = {}
        if step in plateau:
            period = i - plateau[step]
            for _ in range((n - i) % period):
                step = step.translate(table)
            debug_print('expansion repeats with period %s after iteration %s' % (period, i))
            return step
        plateau[step] = i
        word = step
    return word


def expansion_report(spec, n, **kwargs):
    word = expand(spec, n, **kwargs)
    return ExpansionReport(iteration=n, length=len(word), sequence=word)


def _walk(rules, word, depth):
    # symbols taken from stack[k] belong to iteration k
    stack = [iter(word)]
    while stack:
        try:
            c = next(stack[-1])
        except StopIteration:
            stack.pop()
            continue
        if len(stack) - 1 == depth:
            yield c
        else:
            stack.append(iter(rules[c]))


def _exhausted(rules, word, depth, min_length):
    length = 0
    for c in _walk(rules, word, depth):
        length += 1
        yield c
    raise StreamExhaustedError(
        'symbol stream ended after {} symbols, {} were required'.format(length, min_length),
        consumed=length)


def expand_stream(spec, min_length, **kwargs):
    """pylsys.grammar.expand_stream

    Lazy source of the symbols of the smallest expansion with at least min_length
    symbols. Symbols are produced depth first, so only the path from the axiom to
    the current symbol is held in memory. When the system stops growing before
    min_length the axiom is streamed and StreamExhaustedError is raised
    at its end.

    Args:
        spec: :class:`~pylsys.grammar.LSystemSpec`
        min_length: minimum number of symbols required (>= 1)
        max_length (optional): expansion cap (MAX_EXPANSION)

    Returns:
        iterator of symbols
    """
    if min_length < 1:
        raise PylsysError('min_length must be positive, got {}'.format(min_length))
    rules = spec.rules
    try:
        n = smallest_iteration(spec, min_length, **kwargs)
    except StreamExhaustedError:
        debug_print('expansion cannot reach %s symbols, streaming the axiom' % min_length)
        return _exhausted(rules, spec.axiom, 0, min_length)
    debug_print('streaming iteration %s for %s symbols' % (n, min_length))
    return _walk(rules, spec.axiom, n)


def compare_transcription(spec, n, expected, **kwargs):
    """pylsys.grammar.compare_transcription

    Compares a transcribed expansion with the generator output; the generator is canonical

    Args:
        spec: :class:`~pylsys.grammar.LSystemSpec`
        n: iteration the transcription claims to show
        expected: transcribed string (whitespace is ignored)

    Returns:
        list of (0-based position, expected symbol or None, generated symbol or None)
    """
    generated = expand(spec, n, **kwargs)
    expected = ''.join(expected.split())
    diffs = []
    for i in range(max(len(expected), len(generated))):
        e = expected[i] if i < len(expected) else None
        g = generated[i] if i < len(generated) else None
        if e != g:
            diffs.append((i, e, g))
    if diffs:
        warning_print('transcription of iteration %s differs from the generator at %s positions, '
                      'first at %s' % (n, len(diffs), diffs[0][0]))
    return diffs
