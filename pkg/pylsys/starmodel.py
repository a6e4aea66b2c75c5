# ******************************************************************************
# pylsys.starmodel module
# ******************************************************************************
#
# star model consensus of aligned subfamily genes: unanimous columns keep their
# base, every other column becomes a gap
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
from dataclasses import dataclass, field
from typing import Dict, Tuple

import numpy as np
import pandas as pd

from pylsys import verbose_print
from pylsys.utils import (PylsysError, StarModelError, SequenceError,
                          GAP)

_INVALID_BASE = re.compile('[^ACGT]')
_INVALID_COLUMN = re.compile('[^ACGT-]')


@dataclass(frozen=True)
class NucleotideSequence:
    """pylsys.starmodel.NucleotideSequence

    Labelled DNA sequence over A, C, G, T. Lowercase input is stored uppercase.
    """
    id: str
    bases: str

    def __post_init__(self):
        bases = self.bases.upper()
        if not bases:
            raise PylsysError('sequence {} is empty'.format(self.id))
        bad = _INVALID_BASE.search(bases)
        if bad:
            raise SequenceError(self.id, bad.start() + 1, self.bases[bad.start()])
        object.__setattr__(self, 'bases', bases)

    @classmethod
    def from_string(cls, id, text):
        return cls(id=id, bases=''.join(text.split()))

    def __len__(self):
        return len(self.bases)

    def __str__(self):
        return self.bases

    def codons(self, frame=0):
        """complete codons read from frame; a trailing partial codon is dropped"""
        end = frame + (len(self.bases) - frame) // 3 * 3
        return [self.bases[i:i + 3] for i in range(frame, end, 3)]


@dataclass(frozen=True)
class GapRun:
    start: int
    length: int

    @property
    def end(self):
        return self.start + self.length


def _as_codes(text):
    return np.frombuffer(text.encode('ascii', 'replace'), dtype=np.uint8)


def find_gap_runs(columns):
    """pylsys.starmodel.find_gap_runs

    Maximal runs of GAP in columns, left to right

    Args:
        columns: star model column string

    Returns:
        tuple of :class:`~pylsys.starmodel.GapRun`
    """
    is_gap = _as_codes(columns) == ord(GAP)
    padded = np.concatenate(([0], is_gap.astype(np.int8), [0]))
    edges = np.flatnonzero(np.diff(padded))
    return tuple(GapRun(int(s), int(e - s)) for s, e in zip(edges[0::2], edges[1::2]))


@dataclass(frozen=True)
class StarModel:
    """pylsys.starmodel.StarModel

    Columnwise consensus with GAP ('-') wherever the source sequences disagree

    Attributes:
        columns: string over A, C, G, T and '-'
        gap_runs: maximal gap runs, left to right
        source_count: number of sequences the model was built from
    """
    columns: str
    gap_runs: Tuple[GapRun, ...]
    source_count: int

    def __post_init__(self):
        bad = _INVALID_COLUMN.search(self.columns)
        if bad:
            raise StarModelError("invalid column value '{}' at column {}"
                                 .format(self.columns[bad.start()], bad.start()))
        if self.source_count < 1:
            raise StarModelError('source_count must be positive')
        if tuple(self.gap_runs) != find_gap_runs(self.columns):
            raise StarModelError('gap runs do not match the gap columns')
        object.__setattr__(self, 'gap_runs', tuple(self.gap_runs))

    @classmethod
    def from_columns(cls, columns, source_count=2):
        return cls(columns=columns, gap_runs=find_gap_runs(columns), source_count=source_count)

    def __len__(self):
        return len(self.columns)

    @property
    def gap_count(self):
        return sum(r.length for r in self.gap_runs)

    @property
    def max_run(self):
        return max((r.length for r in self.gap_runs), default=0)

    def gap_columns(self):
        return [i for r in self.gap_runs for i in range(r.start, r.end)]

    def substitute(self, bases):
        """pylsys.starmodel.StarModel.substitute

        Places bases into the gap columns left to right

        Args:
            bases: string with exactly one base per gap column

        Returns:
            completed column string
        """
        if len(bases) != self.gap_count:
            raise PylsysError('{} bases given for {} gap columns'.format(len(bases), self.gap_count))
        out = list(self.columns)
        for i, b in zip(self.gap_columns(), bases):
            out[i] = b
        return ''.join(out)

    def overlay(self, seq):
        """fills the gap columns with the bases seq has at the same columns"""
        bases = seq.bases if isinstance(seq, NucleotideSequence) else seq
        if len(bases) != len(self.columns):
            raise PylsysError('sequence length {} does not match {} columns'
                              .format(len(bases), len(self.columns)))
        return self.substitute(''.join(bases[i] for i in self.gap_columns()))


@dataclass(frozen=True)
class GapStats:
    histogram: Dict[int, int] = field(default_factory=dict)
    total: int = 0
    max_run: int = 0

    def to_series(self):
        return pd.Series(self.histogram, name='runs', dtype='int64').rename_axis('length')


def _as_sequences(seqs):
    out = []
    for i, s in enumerate(seqs):
        if isinstance(s, NucleotideSequence):
            out.append(s)
        elif hasattr(s, 'bases'):
            out.append(NucleotideSequence(getattr(s, 'header', None) or 'seq{}'.format(i + 1), s.bases))
        else:
            out.append(NucleotideSequence('seq{}'.format(i + 1), s))
    return out


def build_star(seqs, **kwargs):
    """pylsys.starmodel.build_star

    Builds the star model of pre-aligned, equal length sequences

    Args:
        seqs: list of :class:`~pylsys.starmodel.NucleotideSequence` (records with a
            bases attribute and plain strings are converted)
        quiet (optional): if True, do not print status

    Returns:
        :class:`~pylsys.starmodel.StarModel`
    """
    seqs = _as_sequences(seqs)
    if len(seqs) < 2:
        raise StarModelError('a star model needs at least 2 sequences, got {}'.format(len(seqs)))
    length = len(seqs[0])
    offenders = [i for i, s in enumerate(seqs) if len(s) != length]
    if offenders:
        report = ', '.join('{} ({}): {}'.format(i, seqs[i].id, len(seqs[i])) for i in offenders)
        raise StarModelError('sequence lengths differ from {} ({}): {}'
                             .format(seqs[0].id, length, report), offenders=offenders)

    matrix = np.vstack([_as_codes(s.bases) for s in seqs])
    agree = (matrix == matrix[0]).all(axis=0)
    columns = np.where(agree, matrix[0], ord(GAP)).astype(np.uint8).tobytes().decode('ascii')
    model = StarModel.from_columns(columns, source_count=len(seqs))
    if not kwargs.get('quiet'):
        verbose_print('star model of %s sequences: %s columns, %s gaps in %s runs'
                      % (len(seqs), length, model.gap_count, len(model.gap_runs)))
    return model


def mismatch_columns(seqs):
    """pylsys.starmodel.mismatch_columns

    Column indices at which the aligned sequences do not all agree
    """
    return build_star(seqs).gap_columns()


def gap_stats(model):
    """pylsys.starmodel.gap_stats

    Histogram of gap run lengths

    Args:
        model: :class:`~pylsys.starmodel.StarModel`

    Returns:
        :class:`~pylsys.starmodel.GapStats`
    """
    lengths = np.array([r.length for r in model.gap_runs], dtype=np.int64)
    if not lengths.size:
        return GapStats()
    values, counts = np.unique(lengths, return_counts=True)
    histogram = {int(v): int(c) for v, c in zip(values, counts)}
    return GapStats(histogram=histogram, total=int(lengths.sum()), max_run=int(values.max()))
