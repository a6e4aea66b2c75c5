import unittest
from dataclasses import replace

import pytest
from hypothesis import given, settings, strategies as st

from pylsys import gapfill, grammar
from pylsys.gapfill import FillPolicy, FillTrace
from pylsys.starmodel import StarModel
from pylsys.rules import SINGLE, MULTI
from pylsys.utils import FillPolicyError, StreamExhaustedError

REFERENCE_STREAM = grammar.expand(grammar.reference_spec(), 7)


@st.composite
def star_models(draw, max_length=200, max_run=4):
    """star models with maximal gap runs no longer than max_run, gaps at either end allowed"""
    columns = '-' * draw(st.integers(min_value=0, max_value=max_run))
    for fixed, run in draw(st.lists(st.tuples(st.text(alphabet='ACGT', min_size=1, max_size=6),
                                              st.integers(min_value=0, max_value=max_run)),
                                    min_size=1, max_size=60)):
        columns += fixed + '-' * run
    return StarModel.from_columns(columns[:max_length], source_count=3)


def check_fill(model, policy):
    result = gapfill.fill(model, REFERENCE_STREAM, policy=policy)
    out = result.sequence.bases
    trace = result.trace

    assert '-' not in out and len(out) == len(model.columns)
    assert all(m == o for m, o in zip(model.columns, out) if m != '-')

    state = list(model.columns)
    for event, (_, _, column, open_in_run) in zip(trace, gapfill.schedule(model, policy)):
        assert event.column == column
        allowed, rule_id = gapfill.allowed_set(gapfill.read_context(state, column),
                                               MULTI if open_in_run > 1 else SINGLE)
        assert event.chosen in allowed and event.rule_id == rule_id
        state[column] = event.chosen

    indices = [e.stream_index for e in trace]
    assert all(a < b for a, b in zip(indices, indices[1:]))
    assert trace.symbols_consumed <= len(REFERENCE_STREAM)
    assert len(trace) == model.gap_count
    assert trace.passes == model.max_run
    assert gapfill.validate_trace(model, trace, result.sequence, policy=policy, stream=REFERENCE_STREAM) == []


class AllowedSetTestCase(unittest.TestCase):

    def test_examples(self):
        self.assertEqual(gapfill.allowed_set(('T', 'A', 'A', 'A'), SINGLE), (frozenset('C'), 'A1'))
        self.assertEqual(gapfill.allowed_set(('T', 'G', 'C', 'C'), MULTI), (frozenset('CGT'), 'B2'))
        self.assertEqual(gapfill.allowed_set(('G', 'C', 'C', 'C'), SINGLE), (frozenset('ACGT'), 'A13'))
        self.assertEqual(gapfill.allowed_set(('T', 'A', 'T', 'G'), SINGLE), (frozenset('CT'), 'A3'))

    def test_read_context(self):
        state = list('TG--A')
        self.assertEqual(gapfill.read_context(state, 2), ('T', 'G', None, 'A'))
        self.assertEqual(gapfill.read_context(state, 3), ('G', None, 'A', None))
        self.assertEqual(gapfill.read_context(list('A-'), 0), (None, None, None, None))


class FillTestCase(unittest.TestCase):

    def test_no_gaps(self):
        result = gapfill.fill(StarModel.from_columns('ACGT'), 'CCA')
        self.assertEqual(result.sequence.bases, 'ACGT')
        self.assertEqual(len(result.trace), 0)
        self.assertEqual(result.trace.symbols_consumed, 0)

    def test_single_gap(self):
        result = gapfill.fill(StarModel.from_columns('TA-AG'), 'CCA')
        self.assertEqual(result.sequence.bases, 'TACAG')
        event = result.trace[0]
        self.assertEqual((event.column, event.rule_id, event.allowed, event.stream_index, event.skipped),
                         (2, 'A1', 'C', 0, 0))

    def test_two_column_run(self):
        result = gapfill.fill(StarModel.from_columns('TG--A'), 'AACG')
        first, second = result.trace
        self.assertEqual((first.pass_index, first.column, first.rule_id, first.skipped,
                          first.stream_index, first.chosen), (1, 2, 'B2', 2, 2, 'C'))
        self.assertEqual(second.context, ('G', 'C', 'A', None))
        self.assertEqual((second.pass_index, second.column, second.rule_id, second.stream_index,
                          second.chosen), (2, 3, 'A13', 3, 'G'))
        self.assertEqual(result.sequence.bases, 'TGCGA')
        self.assertEqual(result.trace.passes, 2)

    def test_substitute_policy(self):
        result = gapfill.fill(StarModel.from_columns('TA-AG'), 'G', policy=FillPolicy.from_name('substitute'))
        self.assertEqual(result.sequence.bases, 'TACAG')
        self.assertEqual(result.trace[0].stream_index, 0)

    def test_substitution_order(self):
        policy = FillPolicy.from_name('substitute', substitution_order='TGCA')
        result = gapfill.fill(StarModel.from_columns('TA-TG'), 'A', policy=policy)
        self.assertEqual(result.sequence.bases, 'TATTG')

    def test_fail_policy(self):
        with pytest.raises(FillPolicyError) as e:
            gapfill.fill(StarModel.from_columns('TA-AG'), 'G', policy=FillPolicy.from_name('fail'))
        self.assertEqual((e.value.column, e.value.symbol), (2, 'G'))
        self.assertEqual(e.value.context, ('T', 'A', 'A', 'G'))

    def test_stream_exhausted(self):
        with pytest.raises(StreamExhaustedError) as e:
            gapfill.fill(StarModel.from_columns('TA-AG'), 'AAA')
        self.assertEqual((e.value.consumed, e.value.remaining_gaps), (3, 1))

    def test_lazy_stream(self):
        stream = grammar.expand_stream(grammar.reference_spec(), 2)
        result = gapfill.fill(StarModel.from_columns('A-C--G'), stream)
        self.assertNotIn('-', result.sequence.bases)

    def test_right_to_left(self):
        policy = FillPolicy(run_order=gapfill.RIGHT_TO_LEFT)
        result = gapfill.fill(StarModel.from_columns('A-CC--G'), REFERENCE_STREAM, policy=policy)
        self.assertEqual([e.column for e in result.trace], [4, 1, 5])
        self.assertEqual(gapfill.validate_trace(StarModel.from_columns('A-CC--G'), result.trace,
                                                result.sequence, policy=policy), [])

    def test_pass_bound(self):
        model = StarModel.from_columns('A-CC----GT')
        result = gapfill.fill(model, REFERENCE_STREAM)
        self.assertEqual(result.trace.passes, 4)

    def test_bad_policy(self):
        with pytest.raises(Exception):
            FillPolicy.from_name('guess')
        with pytest.raises(Exception):
            FillPolicy(substitution_order='CCGA')

    def test_full_length_model(self):
        base = grammar.expand(grammar.reference_spec(), 7)[:936]
        columns = ''.join('-' if i % 8 == 3 and i < 864 else b for i, b in enumerate(base))
        model = StarModel.from_columns(columns, source_count=3)
        self.assertEqual(model.gap_count, 108)
        stream = grammar.expand(grammar.reference_spec(), grammar.smallest_iteration(grammar.reference_spec(), 108))
        self.assertEqual(len(stream), 243)
        result = gapfill.fill(model, stream)
        self.assertEqual(len(result.trace), 108)
        self.assertEqual(result.trace.symbols_consumed, 111)
        self.assertEqual(sum(e.skipped for e in result.trace), 3)
        self.assertEqual(gapfill.validate_trace(model, result.trace, result.sequence, stream=stream), [])


class ValidateTraceTestCase(unittest.TestCase):

    def setUp(self):
        self.model = StarModel.from_columns('TG--AT-A')
        self.result = gapfill.fill(self.model, REFERENCE_STREAM)

    def test_consistent(self):
        self.assertEqual(gapfill.validate_trace(self.model, self.result.trace, self.result.sequence,
                                                stream=REFERENCE_STREAM), [])

    def test_chosen_outside_allowed(self):
        events = list(self.result.trace)
        bad = next(b for b in 'ACGT' if b not in events[0].allowed)
        events[0] = replace(events[0], chosen=bad)
        out = list(self.result.sequence.bases)
        out[events[0].column] = bad
        violations = gapfill.validate_trace(self.model, FillTrace(events), ''.join(out))
        self.assertIn((0, 'chosen outside allowed set'), [(v.event_index, v.kind) for v in violations])

    def test_consensus_altered(self):
        out = list(self.result.sequence.bases)
        out[0] = 'A'
        violations = gapfill.validate_trace(self.model, self.result.trace, ''.join(out))
        self.assertEqual([v.kind for v in violations], ['consensus altered'])
        self.assertIsNone(violations[0].event_index)

    def test_stream_order(self):
        events = list(self.result.trace)
        events[1] = replace(events[1], stream_index=events[0].stream_index)
        kinds = [v.kind for v in gapfill.validate_trace(self.model, FillTrace(events), self.result.sequence)]
        self.assertIn('stream order', kinds)

    def test_missing_event(self):
        events = list(self.result.trace)[:-1]
        kinds = [v.kind for v in gapfill.validate_trace(self.model, FillTrace(events), self.result.sequence)]
        self.assertIn('event count', kinds)

    def test_dataframe_round_trip(self):
        df = self.result.trace.to_dataframe()
        self.assertEqual(list(df.columns), gapfill.TRACE_COLUMNS)
        self.assertEqual(FillTrace.from_dataframe(df), self.result.trace)


@settings(max_examples=1000, deadline=None)
@given(star_models())
def test_fill_properties(model):
    check_fill(model, FillPolicy())


@settings(max_examples=200, deadline=None)
@given(star_models())
def test_fill_properties_right_to_left(model):
    check_fill(model, FillPolicy(run_order=gapfill.RIGHT_TO_LEFT))


@settings(max_examples=200, deadline=None)
@given(star_models())
def test_fill_properties_substitute(model):
    check_fill(model, FillPolicy.from_name('substitute'))
