# ******************************************************************************
# pylsys.rules.rules module
# ******************************************************************************
#
# context constraint rules for gap filling and their first-match tables
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

import re
from dataclasses import dataclass

from pylsys import verbose_print, debug_print
from pylsys.utils import FormatError, open_text, compare, NUCLEOTIDES

SINGLE = 'single'
MULTI = 'multi'
GAP_CLASSES = (SINGLE, MULTI)

WILDCARD = '.'
UNAVAILABLE = '$'

# rule ids starting with A apply to the last open column of a run, B to the others
APPLICABILITY = {'A': SINGLE, 'B': MULTI}

_TOKEN = re.compile(r'\(([ACGT](?:\|[ACGT])*)\)|([ACGT]|\.|\$)')
# '->' or the typeset arrow (U+2192) separates context and allowed bases
_RULE_LINE = re.compile(r'^\s*(?P<id>[A-Za-z]\w*)\s+(?P<context>[^\s\-\u2192]+)'
                        r'\s*(?:->|\u2192)\s*(?P<allowed>.+?)\s*$')
# typeset rule lists write the wildcard as a middle dot
MIDDLE_DOT = '\u00b7'


def canonical_bases(bases):
    """bases as a string in A, C, G, T order without repeats"""
    return ''.join(b for b in NUCLEOTIDES if b in bases)


@dataclass(frozen=True)
class ContextPattern:
    """pylsys.rules.ContextPattern

    Pattern over the two bases left of a gap column (prev2, prev1) and the two
    bases right of it (next1, next2). Each position is '.' (anything, including an
    unavailable position), '$' (only an unavailable position) or a string of
    accepted bases. Positions beyond the sequence ends and gap columns not yet
    filled are unavailable.
    """
    prev2: str = WILDCARD
    prev1: str = WILDCARD
    next1: str = WILDCARD
    next2: str = WILDCARD

    def as_tuple(self):
        return (self.prev2, self.prev1, self.next1, self.next2)

    @property
    def is_fallback(self):
        return all(p == WILDCARD for p in self.as_tuple())

    def matches(self, context):
        pattern = self.as_tuple()
        for q, p in zip(context, pattern):
            if p == UNAVAILABLE and q is not None:
                return False
        pattern = tuple(WILDCARD if p == UNAVAILABLE else p for p in pattern)
        return compare(tuple(context), pattern, item_wildcard=WILDCARD)

    @classmethod
    def parse(cls, text):
        """pylsys.rules.ContextPattern.parse

        Reads the transcription syntax: up to two positions, '_' for the gap, up to
        two positions, e.g. 'TA_A(A|G)', '.T_GA', 'TG_'. 'else' is all wildcards
        and a middle dot reads as '.'.
        """
        text = text.replace(MIDDLE_DOT, WILDCARD)
        if text == 'else':
            return cls()
        if text.count('_') != 1:
            raise FormatError("context '{}' must contain exactly one '_'".format(text))
        left, right = text.split('_')
        left = _parse_positions(left, text)
        right = _parse_positions(right, text)
        if len(left) > 2 or len(right) > 2:
            raise FormatError("context '{}' has more than two positions on one side".format(text))
        left = [WILDCARD] * (2 - len(left)) + left
        right = right + [WILDCARD] * (2 - len(right))
        return cls(*(left + right))

    def __str__(self):
        if self.is_fallback:
            return 'else'
        left = ''.join(_format_position(p) for p in (self.prev2, self.prev1))
        right = [_format_position(p) for p in (self.next1, self.next2)]
        while right and right[-1] == WILDCARD:
            right.pop()
        return left + '_' + ''.join(right)


def _parse_positions(text, context):
    positions = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise FormatError("cannot read context '{}' at '{}'".format(context, text[pos:]))
        if m.group(1):
            positions.append(canonical_bases(m.group(1).replace('|', '')))
        else:
            positions.append(m.group(2))
        pos = m.end()
    return positions


def _format_position(p):
    if len(p) > 1:
        return '(' + '|'.join(p) + ')'
    return p


@dataclass(frozen=True)
class ConstraintRule:
    """pylsys.rules.ConstraintRule

    Attributes:
        id: rule label, e.g. A1 or B2
        applicability: 'single' (last open column of a run) or 'multi'
        pattern: :class:`~pylsys.rules.ContextPattern`
        allowed: bases the rule permits, in A, C, G, T order
    """
    id: str
    applicability: str
    pattern: ContextPattern
    allowed: str

    def __post_init__(self):
        if self.applicability not in GAP_CLASSES:
            raise FormatError('rule {}: unknown applicability {}'.format(self.id, self.applicability))
        allowed = canonical_bases(self.allowed)
        if not allowed or len(allowed) != len(set(self.allowed)) or set(self.allowed) - set(NUCLEOTIDES):
            raise FormatError("rule {}: allowed set '{}' must be a non-empty subset of ACGT"
                              .format(self.id, self.allowed))
        object.__setattr__(self, 'allowed', allowed)

    def matches(self, context):
        return self.pattern.matches(context)

    @classmethod
    def parse(cls, line):
        """pylsys.rules.ConstraintRule.parse

        Reads one rule line 'ID CONTEXT -> BASES', e.g. 'A1 TA_A(A|G) -> C'.
        The set form 'A7 ·T_A(C|T)→{T,C}' is read as well.
        """
        m = _RULE_LINE.match(line)
        if not m:
            raise FormatError("cannot read rule '{}'".format(line.strip()))
        rule_id = m.group('id')
        applicability = APPLICABILITY.get(rule_id[0].upper())
        if applicability is None:
            raise FormatError("rule id '{}' must start with A (single gap) or B (multiple gaps)"
                              .format(rule_id))
        allowed = re.sub(r'[\s{},|]', '', m.group('allowed'))
        return cls(rule_id, applicability, ContextPattern.parse(m.group('context')), allowed)

    def __str__(self):
        return '{} {} -> {}'.format(self.id, self.pattern, self.allowed)


class ConstraintRuleTable(object):
    """pylsys.rules.ConstraintRuleTable

    Ordered constraint rules evaluated first match. Initialize with a rule file
    (one 'ID CONTEXT -> BASES' per line, '#' comments) or its text.

    Attributes:
        name: table name
        rules: tuple of :class:`~pylsys.rules.ConstraintRule` in evaluation order
    """
    def __init__(self, file_=None, rules=None, name=''):
        self.name = name
        self.rules = tuple(rules or ())
        if file_:
            self.rules = tuple(self.from_text(file_))
        if self.rules:
            self.check()

    @staticmethod
    def from_text(file_):
        f, is_file = open_text(file_)
        if is_file:
            verbose_print('reading rule table "%s"' % file_)
        rules = []
        with f:
            for lineno, line in enumerate(f, 1):
                line = line.split('#', 1)[0]
                if not line.strip():
                    continue
                try:
                    rules.append(ConstraintRule.parse(line))
                except FormatError as e:
                    raise FormatError('line {}: {}'.format(lineno, e))
        return rules

    def check(self):
        ids = [r.id for r in self.rules]
        if len(set(ids)) != len(ids):
            raise FormatError('duplicate rule ids in table {}'.format(self.name))
        for gap_class in GAP_CLASSES:
            if not any(r.pattern.is_fallback for r in self.select(gap_class)):
                raise FormatError("table {} has no 'else' rule for {} gaps".format(self.name, gap_class))

    def __len__(self):
        return len(self.rules)

    def __iter__(self):
        return iter(self.rules)

    def __getitem__(self, rule_id):
        for r in self.rules:
            if r.id == rule_id:
                return r
        raise KeyError(rule_id)

    def select(self, gap_class):
        return [r for r in self.rules if r.applicability == gap_class]

    def match(self, context, gap_class):
        """pylsys.rules.ConstraintRuleTable.match

        First rule of gap_class, in table order, whose pattern matches context

        Args:
            context: (prev2, prev1, next1, next2), None where unavailable
            gap_class: 'single' or 'multi'

        Returns:
            :class:`~pylsys.rules.ConstraintRule`
        """
        for r in self.select(gap_class):
            if r.matches(context):
                debug_print('rule %s matched context %s' % (r.id, context))
                return r
        raise FormatError('no {} rule matches {}'.format(gap_class, context))

    def to_text(self):
        return '\n'.join(str(r) for r in self.rules) + '\n'


def read_rule_table(file_):
    """pylsys.rules.read_rule_table

    Reads a rule table override file (or its text)
    """
    return ConstraintRuleTable(file_, name=file_ if '\n' not in file_ else 'custom')


def format_rule_table(table):
    return table.to_text()
