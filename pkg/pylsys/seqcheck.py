# ******************************************************************************
# pylsys.seqcheck module
# ******************************************************************************
#
# checks on synthesized sequences: stop codons, conceptual translation and
# percent identity
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

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Dict, List, Tuple

import numpy as np
import pandas as pd
from Bio.Seq import Seq
from Bio.Data import CodonTable as BioCodonTable

from pylsys import warning_print
from pylsys.utils import PylsysError, NUCLEOTIDES, GAP
from pylsys.starmodel import NucleotideSequence

STOP = '*'


@dataclass(frozen=True)
class CodonTable:
    """pylsys.seqcheck.CodonTable

    Map from each of the 64 codons to an amino acid letter or '*' for stop
    """
    codons: Dict[str, str]
    name: str = 'Standard'

    def __post_init__(self):
        missing = [''.join(c) for c in product(NUCLEOTIDES, repeat=3) if ''.join(c) not in self.codons]
        if missing:
            raise PylsysError('codon table {} is missing {}'.format(self.name, ', '.join(missing)))

    def __getitem__(self, codon):
        return self.codons[codon]

    @property
    def stop_codons(self):
        return sorted(c for c, aa in self.codons.items() if aa == STOP)

    def is_stop(self, codon):
        return self.codons[codon] == STOP


def codon_table(table_id=1):
    """pylsys.seqcheck.codon_table

    Genetic code from the NCBI translation tables (1 is the standard code)

    Returns:
        :class:`~pylsys.seqcheck.CodonTable`
    """
    bio = BioCodonTable.unambiguous_dna_by_id[table_id]
    codons = dict(bio.forward_table)
    for c in bio.stop_codons:
        codons[c] = STOP
    return CodonTable(codons=codons, name=bio.names[0])


STANDARD = codon_table(1)


@dataclass(frozen=True)
class IdentityReport:
    """pylsys.seqcheck.IdentityReport

    Attributes:
        matches: number of identical columns
        compared: number of columns compared
        fraction: matches / compared
    """
    matches: int
    compared: int

    def __post_init__(self):
        if self.compared <= 0:
            raise PylsysError('identity needs at least one compared column')
        if not 0 <= self.matches <= self.compared:
            raise PylsysError('{} matches out of {} columns'.format(self.matches, self.compared))

    @property
    def fraction(self):
        return self.matches / self.compared

    @property
    def ratio(self):
        return Fraction(self.matches, self.compared)

    def to_dict(self):
        return {'matches': self.matches, 'compared': self.compared,
                'fraction': round(self.fraction, 4)}

    def to_text(self):
        return '{}/{} ({:.4f})'.format(self.matches, self.compared, self.fraction)


@dataclass(frozen=True)
class Scoring:
    match: int = 1
    mismatch: int = -1
    gap: int = -2


@dataclass(frozen=True)
class Alignment:
    a: str
    b: str
    score: int

    @property
    def matches(self):
        return sum(1 for x, y in zip(self.a, self.b) if x == y and x != GAP)

    @property
    def has_gaps(self):
        return GAP in self.a or GAP in self.b

    def __len__(self):
        return len(self.a)


@dataclass(frozen=True)
class ExonReport:
    """pylsys.seqcheck.ExonReport

    Reading frame summary. A stop in the final codon is terminal; any other is internal.
    """
    frame: int
    protein: str
    internal_stops: List[Tuple[int, str]] = field(default_factory=list)
    terminal_stop: bool = False
    starts_with_atg: bool = False

    @property
    def intact(self):
        return not self.internal_stops


def _bases(seq):
    if isinstance(seq, NucleotideSequence):
        return seq.bases
    return NucleotideSequence('query', seq).bases


def _check_frame(bases, frame):
    if frame not in (0, 1, 2):
        raise PylsysError('frame must be 0, 1 or 2, got {}'.format(frame))
    if len(bases) < frame + 3:
        raise PylsysError('sequence of {} bases has no complete codon in frame {}'.format(len(bases), frame))


def scan_stops(seq, frame=0, table=None):
    """pylsys.seqcheck.scan_stops

    Finds every in-frame stop codon

    Args:
        seq: :class:`~pylsys.starmodel.NucleotideSequence` or string
        frame: reading frame offset 0, 1 or 2
        table: :class:`~pylsys.seqcheck.CodonTable` (standard code)

    Returns:
        list of (0-based codon index, codon)
    """
    table = table or STANDARD
    bases = _bases(seq)
    _check_frame(bases, frame)
    codons = NucleotideSequence('query', bases).codons(frame)
    return [(i, c) for i, c in enumerate(codons) if table.is_stop(c)]


def translate(seq, frame=0, table_id=1):
    """pylsys.seqcheck.translate

    Conceptual translation of the complete codons in frame, '*' for stop

    Args:
        seq: :class:`~pylsys.starmodel.NucleotideSequence` or string
        frame: reading frame offset 0, 1 or 2
        table_id: NCBI translation table (1)

    Returns:
        amino acid string
    """
    bases = _bases(seq)
    _check_frame(bases, frame)
    end = frame + (len(bases) - frame) // 3 * 3
    return str(Seq(bases[frame:end]).translate(table=table_id))


def exon_report(seq, frame=0):
    """pylsys.seqcheck.exon_report

    Stop codon summary of a coding sequence; the exon is intact when no stop
    occurs before the final codon

    Args:
        seq: :class:`~pylsys.starmodel.NucleotideSequence` or string
        frame: reading frame offset (0)

    Returns:
        :class:`~pylsys.seqcheck.ExonReport`
    """
    bases = _bases(seq)
    protein = translate(bases, frame)
    stops = scan_stops(bases, frame)
    last = len(protein) - 1
    terminal = bool(stops) and stops[-1][0] == last
    internal = stops[:-1] if terminal else stops
    if internal:
        warning_print('%s internal stop codon(s) in frame %s, first at codon %s'
                      % (len(internal), frame, internal[0][0]))
    return ExonReport(frame=frame, protein=protein, internal_stops=internal,
                      terminal_stop=terminal, starts_with_atg=bases[frame:frame + 3] == 'ATG')


def identity_hamming(a, b):
    """pylsys.seqcheck.identity_hamming

    Positionwise identity of two equal length sequences

    Returns:
        :class:`~pylsys.seqcheck.IdentityReport`
    """
    a, b = _bases(a), _bases(b)
    if len(a) != len(b):
        raise PylsysError('identity_hamming needs equal lengths, got {} and {}'.format(len(a), len(b)))
    codes_a = np.frombuffer(a.encode('ascii'), dtype=np.uint8)
    codes_b = np.frombuffer(b.encode('ascii'), dtype=np.uint8)
    return IdentityReport(matches=int((codes_a == codes_b).sum()), compared=len(a))


def align_global(a, b, scoring=None):
    """pylsys.seqcheck.align_global

    Global alignment with a linear gap penalty. Each row of the score matrix is
    computed at once: the left-gap recurrence is a running maximum of
    T[k] - k * gap. Traceback prefers diagonal, then up (gap in b), then left.

    Args:
        a: first sequence
        b: second sequence
        scoring: :class:`~pylsys.seqcheck.Scoring` (+1, -1, -2)

    Returns:
        :class:`~pylsys.seqcheck.Alignment`
    """
    scoring = scoring or Scoring()
    a, b = _bases(a), _bases(b)
    n, m = len(a), len(b)
    ca = np.frombuffer(a.encode('ascii'), dtype=np.uint8)
    cb = np.frombuffer(b.encode('ascii'), dtype=np.uint8)
    sub = np.where(ca[:, None] == cb[None, :], scoring.match, scoring.mismatch).astype(np.int64)
    g = scoring.gap
    steps = np.arange(m + 1, dtype=np.int64)

    h = np.zeros((n + 1, m + 1), dtype=np.int64)
    h[0] = steps * g
    for i in range(1, n + 1):
        t = np.empty(m + 1, dtype=np.int64)
        t[0] = i * g
        t[1:] = np.maximum(h[i - 1, :-1] + sub[i - 1], h[i - 1, 1:] + g)
        h[i] = np.maximum.accumulate(t - steps * g) + steps * g

    out_a, out_b = [], []
    i, j = n, m
    while i > 0 or j > 0:
        if i > 0 and j > 0 and h[i, j] == h[i - 1, j - 1] + sub[i - 1, j - 1]:
            out_a.append(a[i - 1])
            out_b.append(b[j - 1])
            i -= 1
            j -= 1
        elif i > 0 and h[i, j] == h[i - 1, j] + g:
            out_a.append(a[i - 1])
            out_b.append(GAP)
            i -= 1
        else:
            out_a.append(GAP)
            out_b.append(b[j - 1])
            j -= 1
    return Alignment(''.join(reversed(out_a)), ''.join(reversed(out_b)), int(h[n, m]))


def identity_aligned(a, b, scoring=None):
    """pylsys.seqcheck.identity_aligned

    Identity over a global alignment: identical aligned columns divided by the
    alignment length, gap columns included

    Returns:
        :class:`~pylsys.seqcheck.IdentityReport`
    """
    aln = align_global(a, b, scoring)
    return IdentityReport(matches=aln.matches, compared=len(aln))


def identity_matrix(seqs, method='hamming', scoring=None):
    """pylsys.seqcheck.identity_matrix

    Pairwise identity fractions

    Args:
        seqs: list of :class:`~pylsys.starmodel.NucleotideSequence`
        method: 'hamming' (equal lengths) or 'aligned'

    Returns:
        pandas.DataFrame indexed and labelled by sequence id
    """
    if method not in ('hamming', 'aligned'):
        raise PylsysError("method must be 'hamming' or 'aligned', got {}".format(method))
    ids = [s.id for s in seqs]
    values = np.ones((len(seqs), len(seqs)))
    for i in range(len(seqs)):
        for j in range(i + 1, len(seqs)):
            if method == 'hamming':
                r = identity_hamming(seqs[i], seqs[j])
            else:
                r = identity_aligned(seqs[i], seqs[j], scoring)
            values[i, j] = values[j, i] = r.fraction
    return pd.DataFrame(values, index=pd.Index(ids, name='id'), columns=ids)
