# ******************************************************************************
# pylsys.utils module
# ******************************************************************************
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
from io import StringIO

NUCLEOTIDES = 'ACGT'
GAP = '-'


class PylsysError(Exception):
    pass


class GrammarError(PylsysError):
    """pylsys.utils.GrammarError

    Syntax or consistency problem in a grammar file. line and column are 1-based.
    """
    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        if line is not None:
            message = 'line {}, column {}: {}'.format(line, column or 1, message)
        super(GrammarError, self).__init__(message)


class ExpansionLimitError(PylsysError):
    def __init__(self, limit, requested):
        self.limit = limit
        self.requested = requested
        super(ExpansionLimitError, self).__init__(
            'expansion of {} symbols exceeds the limit of {}'.format(requested, limit))


class StreamExhaustedError(PylsysError):
    def __init__(self, message, consumed=None, remaining_gaps=None):
        self.consumed = consumed
        self.remaining_gaps = remaining_gaps
        super(StreamExhaustedError, self).__init__(message)


class StarModelError(PylsysError):
    def __init__(self, message, offenders=None):
        self.offenders = offenders or []
        super(StarModelError, self).__init__(message)


class SequenceError(PylsysError):
    """pylsys.utils.SequenceError

    Invalid character in a nucleotide sequence. position is 1-based.
    """
    def __init__(self, record, position, char):
        self.record = record
        self.position = position
        self.char = char
        super(SequenceError, self).__init__(
            "invalid character '{}' in record {} at position {}".format(char, record, position))


class FillPolicyError(PylsysError):
    def __init__(self, column, context, symbol, allowed):
        self.column = column
        self.context = context
        self.symbol = symbol
        self.allowed = allowed
        super(FillPolicyError, self).__init__(
            'stream symbol {} not allowed at column {} (context {}, allowed {})'.format(
                symbol, column, format_context(context), ''.join(sorted(allowed))))


class FormatError(PylsysError):
    pass


class Item(object):
    """pylsys.utils.Item

    Attribute bag built from keyword arguments; missing attributes read as None
    """
    def __init__(self, **kwargs):
        for k, v in kwargs.items():
            setattr(self, k, v)

    def __getattr__(self, name):
        return None


def open_text(file_):
    """pylsys.utils.open_text

    Returns a readable text handle for either a file name or the file content itself

    Args:
        file_: path to an existing file, or text

    Returns:
        (handle, True if file_ was a path)
    """
    if isinstance(file_, str) and '\n' not in file_ and os.path.isfile(file_):
        return open(file_, encoding='utf-8'), True
    elif isinstance(file_, str):
        return StringIO(file_), False
    raise PylsysError('expected a file name or text, got {}'.format(type(file_).__name__))


def write_text(text, path=None):
    if path:
        with open(path, 'w', encoding='utf-8', newline='\n') as f:
            f.write(text)
    return text


def format_context(context):
    return ''.join(c if c else '.' for c in context)


def compare(query, item, item_wildcard='.'):
    """pylsys.utils.compare

    Positionwise match of a context against a pattern. A pattern position is either
    item_wildcard, which matches anything including an unavailable position, or a
    string of accepted bases. None in the query is an unavailable position and only
    matches the wildcard.

    Args:
        query: sequence of bases or None
        item: sequence of pattern strings, same length as query
        item_wildcard: wildcard token ('.')

    Returns:
        True if every position matches
    """
    if len(query) != len(item):
        raise PylsysError('cannot compare context of length {} with pattern of length {}'
                          .format(len(query), len(item)))
    match = []
    for q, i in zip(query, item):
        if i == item_wildcard:
            match.append(True)
        elif q is not None and q in i:
            match.append(True)
        else:
            match.append(False)
    return False not in match
