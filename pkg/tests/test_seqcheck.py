import unittest
import os
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from pylsys import seqcheck
from pylsys.starmodel import NucleotideSequence
from pylsys.utils import PylsysError

TEST_DATA_PATH = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'test_data')

DIAGONAL, UP, LEFT = 0, 1, 2


def all_alignments(a, b):
    """every global alignment of a and b as (score, ops read from the end, gapped a, gapped b)"""
    def walk(i, j, ops, score, out_a, out_b):
        if i == 0 and j == 0:
            yield score, tuple(ops), ''.join(reversed(out_a)), ''.join(reversed(out_b))
            return
        if i > 0 and j > 0:
            s = 1 if a[i - 1] == b[j - 1] else -1
            yield from walk(i - 1, j - 1, ops + [DIAGONAL], score + s, out_a + [a[i - 1]], out_b + [b[j - 1]])
        if i > 0:
            yield from walk(i - 1, j, ops + [UP], score - 2, out_a + [a[i - 1]], out_b + ['-'])
        if j > 0:
            yield from walk(i, j - 1, ops + [LEFT], score - 2, out_a + ['-'], out_b + [b[j - 1]])
    return walk(len(a), len(b), [], 0, [], [])


def oracle_identity(a, b):
    # best score first, then diagonal before up before left walking back from the end
    score, _, gapped_a, gapped_b = min(all_alignments(a, b), key=lambda x: (-x[0], x[1]))
    matches = sum(1 for x, y in zip(gapped_a, gapped_b) if x == y)
    return score, Fraction(matches, len(gapped_a))


class CodonTableTestCase(unittest.TestCase):

    def test_standard_code(self):
        table = seqcheck.codon_table()
        self.assertEqual(len(table.codons), 64)
        self.assertEqual(table.stop_codons, ['TAA', 'TAG', 'TGA'])
        self.assertEqual(table['ATG'], 'M')


class ScanStopsTestCase(unittest.TestCase):

    def test_examples(self):
        self.assertEqual(seqcheck.scan_stops('ATGTAA', 0), [(1, 'TAA')])
        self.assertEqual(seqcheck.scan_stops('ATGAAA', 0), [])
        self.assertEqual(seqcheck.scan_stops('CATGTGAA', 1), [(1, 'TGA')])

    def test_too_short(self):
        with pytest.raises(PylsysError):
            seqcheck.scan_stops('ATGT', 2)

    def test_transcribed_sequence(self):
        with open(os.path.join(TEST_DATA_PATH, 'seq_ii.txt')) as f:
            seq = NucleotideSequence.from_string('seq_ii', f.read())
        # the printed sequence lost 10 of the 936 columns, which shifts the frame
        # after the first 176 codons; the intact prefix keeps an open frame
        self.assertEqual(len(seq), 926)
        self.assertTrue(seq.bases.startswith('ATG'))
        self.assertEqual(seqcheck.scan_stops(seq.bases[:528], 0), [])
        self.assertEqual(seqcheck.scan_stops(seq, 0)[0][0], 176)


class TranslateTestCase(unittest.TestCase):

    def test_examples(self):
        self.assertEqual(seqcheck.translate('ATGGCA', 0), 'MA')
        self.assertEqual(seqcheck.translate('ATGTAA', 0), 'M*')
        self.assertEqual(seqcheck.translate('AATGGC', 1), 'M')

    def test_exon_report(self):
        report = seqcheck.exon_report('ATGTAAGCCTGA')
        self.assertEqual(report.internal_stops, [(1, 'TAA')])
        self.assertTrue(report.terminal_stop)
        self.assertTrue(report.starts_with_atg)
        self.assertFalse(report.intact)
        self.assertTrue(seqcheck.exon_report('ATGGCCTAG').intact)


class IdentityTestCase(unittest.TestCase):

    def test_hamming(self):
        self.assertEqual(seqcheck.identity_hamming('ACGT', 'ACGT').fraction, 1.0)
        report = seqcheck.identity_hamming('ACGT', 'ACGA')
        self.assertEqual((report.matches, report.compared, report.fraction), (3, 4, 0.75))

    def test_hamming_unequal(self):
        with pytest.raises(PylsysError):
            seqcheck.identity_hamming('ACGT', 'ACG')

    def test_mismatch_arithmetic(self):
        a = ('ACGTTGCA' * 117)
        flip = {'A': 'C', 'C': 'G', 'G': 'T', 'T': 'A'}
        b = ''.join(flip[x] if i % 8 == 5 and i < 864 else x for i, x in enumerate(a))
        report = seqcheck.identity_hamming(a, b)
        self.assertEqual(report.ratio, Fraction(828, 936))
        self.assertEqual(report.to_text(), '828/936 (0.8846)')
        self.assertEqual(report.to_dict(), {'matches': 828, 'compared': 936, 'fraction': 0.8846})

    def test_aligned_examples(self):
        self.assertEqual(seqcheck.identity_aligned('ACGT', 'ACGT').fraction, 1.0)
        self.assertEqual(seqcheck.identity_aligned('ACGT', 'AGT').fraction, 0.75)
        self.assertEqual(seqcheck.identity_aligned('AAAA', 'TTTT').fraction, 0.0)

    def test_alignment(self):
        aln = seqcheck.align_global('ACGT', 'AGT')
        self.assertEqual((aln.a, aln.b, aln.score), ('ACGT', 'A-GT', 1))
        self.assertTrue(aln.has_gaps)

    def test_identity_matrix(self):
        seqs = [NucleotideSequence('x', 'ACGT'), NucleotideSequence('y', 'ACGA'), NucleotideSequence('z', 'TCGA')]
        matrix = seqcheck.identity_matrix(seqs)
        self.assertEqual(list(matrix.columns), ['x', 'y', 'z'])
        self.assertEqual(matrix.loc['x', 'y'], 0.75)
        self.assertEqual(matrix.loc['z', 'x'], 0.5)
        self.assertEqual(matrix.loc['y', 'y'], 1.0)


dna = st.text(alphabet='ACGT', min_size=1, max_size=6)


@settings(max_examples=200, deadline=None, derandomize=True)
@given(dna, dna)
def test_alignment_matches_exhaustive_oracle(a, b):
    aln = seqcheck.align_global(a, b)
    score, identity = oracle_identity(a, b)
    assert aln.score == score
    assert seqcheck.identity_aligned(a, b).ratio == identity


@settings(max_examples=200, deadline=None)
@given(st.text(alphabet='ACGT', min_size=1, max_size=60))
def test_hamming_self_identity(a):
    assert seqcheck.identity_hamming(a, a).fraction == 1.0


@settings(max_examples=200, deadline=None)
@given(st.integers(min_value=4, max_value=60).flatmap(
    lambda n: st.tuples(st.text(alphabet='ACGT', min_size=n, max_size=n),
                        st.lists(st.tuples(st.integers(0, n - 1), st.sampled_from('ACGT')), max_size=n // 4))))
def test_gapless_alignment_agrees_with_hamming(case):
    a, edits = case
    b = list(a)
    for i, base in edits:
        b[i] = base
    b = ''.join(b)
    assert seqcheck.identity_hamming(a, b) == seqcheck.identity_hamming(b, a)
    if not seqcheck.align_global(a, b).has_gaps:
        assert seqcheck.identity_aligned(a, b) == seqcheck.identity_hamming(a, b)


@settings(max_examples=200, deadline=None)
@given(st.text(alphabet='ACGT', min_size=3, max_size=60), st.integers(min_value=0, max_value=2))
def test_stops_and_translation_agree(seq, frame):
    if len(seq) < frame + 3:
        return
    protein = seqcheck.translate(seq, frame)
    assert len(protein) == (len(seq) - frame) // 3
    assert bool(seqcheck.scan_stops(seq, frame)) == ('*' in protein)
