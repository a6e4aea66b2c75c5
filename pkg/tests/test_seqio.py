import unittest
import os
import json
import shutil
import tempfile

import pytest
from hypothesis import given, settings, strategies as st

from pylsys import seqio, gapfill, grammar
from pylsys.seqio import FastaRecord
from pylsys.starmodel import StarModel
from pylsys.utils import FormatError, SequenceError

TEST_DATA_PATH = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'test_data')

records = st.lists(
    st.builds(FastaRecord,
              st.text(alphabet='abcdefghijklmnopqrstuvwxyz0123456789_.', min_size=1, max_size=12),
              st.text(alphabet='ACGT', min_size=1, max_size=150)),
    min_size=1, max_size=5)


class FastaTestCase(unittest.TestCase):

    def test_read_file(self):
        recs = seqio.read_fasta(os.path.join(TEST_DATA_PATH, 'trio.fasta'))
        self.assertEqual([r.header for r in recs], ['seq_a', 'seq_b', 'seq_c'])
        self.assertTrue(all(len(r.bases) == 30 for r in recs))

    def test_single_record(self):
        self.assertEqual(seqio.read_fasta('>x\nACGT'), [FastaRecord('x', 'ACGT')])

    def test_wrapping_and_case(self):
        recs = seqio.read_fasta('>x\nAC\ngt  \n>y\nTTTT\n')
        self.assertEqual([(r.header, r.bases) for r in recs], [('x', 'ACGT'), ('y', 'TTTT')])

    def test_header_with_description(self):
        self.assertEqual(seqio.read_fasta('>x some gene\nACGT\n')[0].header, 'x some gene')

    def test_invalid_base(self):
        with pytest.raises(SequenceError) as e:
            seqio.read_fasta('>x\nACGU')
        self.assertEqual((e.value.record, e.value.char, e.value.position), ('x', 'U', 4))

    def test_no_records(self):
        with pytest.raises(FormatError):
            seqio.read_fasta('\n\n')

    def test_sequence_before_header(self):
        with pytest.raises(FormatError):
            seqio.read_fasta('ACGT\n>x\nACGT\n')

    def test_write(self):
        self.assertEqual(seqio.write_fasta([FastaRecord('x', 'ACGT')]), '>x\nACGT\n')

    def test_write_wraps_at_60(self):
        text = seqio.write_fasta([FastaRecord('x', 'A' * 61)])
        self.assertEqual(text.splitlines()[1:], ['A' * 60, 'A'])

    def test_write_empty(self):
        with pytest.raises(FormatError):
            seqio.write_fasta([])


class StarFormatTestCase(unittest.TestCase):

    def test_write(self):
        model = StarModel.from_columns('A-GT', source_count=3)
        self.assertEqual(seqio.write_star(model), '>star n=3\nA-GT\n')

    def test_round_trip_wrapped(self):
        model = StarModel.from_columns('ACGT-' * 30, source_count=2)
        text = seqio.write_star(model)
        self.assertEqual([len(x) for x in text.splitlines()[1:]], [60, 60, 30])
        self.assertEqual(seqio.read_star(text), model)

    def test_rejects_n(self):
        with pytest.raises(FormatError) as e:
            seqio.read_star('>star n=2\nACNT\n')
        self.assertIn("'N'", str(e.value))

    def test_bad_header(self):
        with pytest.raises(FormatError):
            seqio.read_star('>model\nACGT\n')

    def test_zero_source_count(self):
        with pytest.raises(FormatError) as e:
            seqio.read_star('>star n=0\nACGT\n')
        self.assertIn('source count', str(e.value))


class TraceFormatTestCase(unittest.TestCase):

    def test_round_trip(self):
        model = StarModel.from_columns('TG--AT-A')
        result = gapfill.fill(model, grammar.expand(grammar.reference_spec(), 3))
        text = seqio.write_trace(result.trace)
        lines = text.splitlines()
        self.assertEqual(lines[0].split('\t'), gapfill.TRACE_COLUMNS)
        self.assertEqual(len(lines), len(result.trace) + 1)
        self.assertIn('\t.\t', lines[1])
        self.assertEqual(seqio.read_trace(text), result.trace)

    def test_empty_trace(self):
        text = seqio.write_trace(gapfill.FillTrace())
        self.assertEqual(text, '\t'.join(gapfill.TRACE_COLUMNS) + '\n')
        self.assertEqual(len(seqio.read_trace(text)), 0)


class FileOutputTestCase(unittest.TestCase):

    def setUp(self):
        self.tmp = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.tmp)

    def test_writers_write_paths(self):
        path = os.path.join(self.tmp, 'out.fasta')
        text = seqio.write_fasta([FastaRecord('x', 'ACGT')], path)
        with open(path) as f:
            self.assertEqual(f.read(), text)
        self.assertEqual(seqio.read_fasta(path), [FastaRecord('x', 'ACGT')])

    def test_grammar_file(self):
        path = os.path.join(self.tmp, 'g.grammar')
        seqio.write_grammar(grammar.reference_spec(), path)
        self.assertEqual(seqio.read_grammar(path), grammar.reference_spec())

    def test_report(self):
        path = os.path.join(self.tmp, 'report.txt')
        report = {'iteration': 5, 'identity': {'x': {'matches': 3, 'compared': 4, 'fraction': 0.75}},
                  'internal_stops': []}
        text = seqio.write_report(report, path)
        self.assertEqual(text, 'iteration: 5\nidentity:\n  x:\n    matches: 3\n    compared: 4\n'
                               '    fraction: 0.75\ninternal_stops: none\n')
        with open(os.path.join(self.tmp, 'report.json')) as f:
            self.assertEqual(json.load(f), report)


@settings(max_examples=200, deadline=None)
@given(records)
def test_fasta_round_trip(recs):
    assert seqio.read_fasta(seqio.write_fasta(recs)) == recs


@settings(max_examples=200, deadline=None)
@given(st.text(alphabet='ACGT-', min_size=1, max_size=200), st.integers(min_value=1, max_value=9))
def test_star_round_trip(columns, n):
    model = StarModel.from_columns(columns, source_count=n)
    assert seqio.read_star(seqio.write_star(model)) == model
