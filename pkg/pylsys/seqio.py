# ******************************************************************************
# pylsys.seqio module
# ******************************************************************************
#
# readers and writers for FASTA, star model, grammar, trace and report files
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
import re
import json
from dataclasses import dataclass
from io import StringIO

import pandas as pd
from Bio import SeqIO
from Bio.Seq import Seq
from Bio.SeqRecord import SeqRecord

from pylsys import verbose_print
from pylsys.utils import FormatError, open_text, write_text, GAP
from pylsys.starmodel import NucleotideSequence, StarModel
from pylsys.gapfill import FillTrace
from pylsys.grammar import read_grammar, format_spec

WRAP = 60

_STAR_HEADER = re.compile(r'^>star\s+n=(\d+)\s*$')
_STAR_COLUMNS = re.compile('[^ACGT-]')


@dataclass(frozen=True)
class FastaRecord:
    """pylsys.seqio.FastaRecord

    Attributes:
        header: text after '>'
        bases: uppercase A, C, G, T
    """
    header: str
    bases: str

    def __post_init__(self):
        if not self.header.strip():
            raise FormatError('FASTA header is empty')
        object.__setattr__(self, 'bases', NucleotideSequence(self.header, self.bases).bases)

    @property
    def sequence(self):
        return NucleotideSequence(self.header, self.bases)


def _read(file_):
    f, is_file = open_text(file_)
    with f:
        text = f.read()
    return text, is_file


def _wrap(text, width=WRAP):
    return [text[i:i + width] for i in range(0, len(text), width)]


def read_fasta(file_, **kwargs):
    """pylsys.seqio.read_fasta

    Reads FASTA records in file order. Line wrapping is free, lowercase bases are
    read as uppercase and anything outside A, C, G, T is an error.

    Args:
        file_: FASTA file name or FASTA text
        quiet (optional): if True, do not print status

    Returns:
        list of :class:`~pylsys.seqio.FastaRecord`
    """
    text, is_file = _read(file_)
    for lineno, line in enumerate(text.splitlines(), 1):
        if line.startswith('>'):
            break
        if line.strip() and not line.startswith(';'):
            raise FormatError('line {}: sequence data before the first FASTA header'.format(lineno))

    records = [FastaRecord(r.description, str(r.seq)) for r in SeqIO.parse(StringIO(text), 'fasta')]
    if not records:
        raise FormatError('no FASTA records found')
    if is_file and not kwargs.get('quiet'):
        verbose_print('read %s FASTA records from "%s"' % (len(records), file_))
    return records


def _as_seqrecord(r):
    if isinstance(r, SeqRecord):
        return r
    header = r.header if hasattr(r, 'header') else r.id
    return SeqRecord(Seq(r.bases), id=header, description='')


def write_fasta(records, path=None):
    """pylsys.seqio.write_fasta

    Writes records as FASTA wrapped at 60 columns

    Args:
        records: list of :class:`~pylsys.seqio.FastaRecord` or
            :class:`~pylsys.starmodel.NucleotideSequence`
        path (optional): file to write

    Returns:
        FASTA text
    """
    records = list(records)
    if not records:
        raise FormatError('no records to write')
    out = StringIO()
    SeqIO.write([_as_seqrecord(r) for r in records], out, 'fasta')
    return write_text(out.getvalue(), path)


def read_star(file_):
    """pylsys.seqio.read_star

    Reads the star model format: '>star n=<source count>' then the columns with
    '-' for gaps, wrapped at any width

    Returns:
        :class:`~pylsys.starmodel.StarModel`
    """
    text, _ = _read(file_)
    lines = [line.strip() for line in text.splitlines() if line.strip()]
    if not lines:
        raise FormatError('star model file is empty')
    m = _STAR_HEADER.match(lines[0])
    if not m:
        raise FormatError("star model must start with '>star n=<count>', got '{}'".format(lines[0]))
    source_count = int(m.group(1))
    if source_count < 1:
        raise FormatError('star model source count must be at least 1, got {}'.format(source_count))
    columns = ''.join(lines[1:])
    if not columns:
        raise FormatError('star model has no columns')
    bad = _STAR_COLUMNS.search(columns)
    if bad:
        c = columns[bad.start()]
        if c == 'N':
            raise FormatError("column {}: 'N' is not a gap character, use '{}'".format(bad.start(), GAP))
        raise FormatError("column {}: invalid star model character '{}'".format(bad.start(), c))
    return StarModel.from_columns(columns, source_count=source_count)


def write_star(model, path=None):
    lines = ['>star n={}'.format(model.source_count)] + _wrap(model.columns)
    return write_text('\n'.join(lines) + '\n', path)


def read_trace(file_):
    """pylsys.seqio.read_trace

    Reads a fill trace table (tab separated, header line, '.' for unavailable context)

    Returns:
        :class:`~pylsys.gapfill.FillTrace`
    """
    text, _ = _read(file_)
    if not text.strip():
        raise FormatError('trace file is empty')
    df = pd.read_csv(StringIO(text), sep='\t', dtype=str, keep_default_na=False)
    try:
        return FillTrace.from_dataframe(df)
    except ValueError as e:
        raise FormatError('cannot read trace: {}'.format(e))


def write_trace(trace, path=None):
    text = trace.to_dataframe().to_csv(sep='\t', index=False, lineterminator='\n')
    return write_text(text, path)


def write_grammar(spec, path=None):
    return write_text(format_spec(spec), path)


def _report_lines(report, indent=''):
    lines = []
    for key, value in report.items():
        if isinstance(value, dict):
            lines.append('{}{}:'.format(indent, key))
            lines += _report_lines(value, indent + '  ')
        elif isinstance(value, (list, tuple)):
            lines.append('{}{}: {}'.format(indent, key, ', '.join(str(v) for v in value) or 'none'))
        else:
            lines.append('{}{}: {}'.format(indent, key, value))
    return lines


def write_report(report, path=None):
    """pylsys.seqio.write_report

    Writes a report dictionary as indented 'key: value' lines. When path is given
    the same record is also written as JSON next to it (report.txt -> report.json).

    Args:
        report: dict of plain values, lists and nested dicts
        path (optional): text report file

    Returns:
        report text
    """
    text = '\n'.join(_report_lines(report)) + '\n'
    if path:
        write_text(json.dumps(report, indent=2) + '\n', os.path.splitext(path)[0] + '.json')
    return write_text(text, path)


__all__ = ['FastaRecord', 'read_fasta', 'write_fasta', 'read_star', 'write_star',
           'read_trace', 'write_trace', 'read_grammar', 'write_grammar', 'write_report']
