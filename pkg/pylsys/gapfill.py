# ******************************************************************************
# pylsys.gapfill module
# ******************************************************************************
#
# fills star model gaps from an L-system symbol stream under context rules,
# one column per gap run per pass, and replays fills as an independent check
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
from typing import List, NamedTuple, Optional, Tuple

import pandas as pd

from pylsys import verbose_print, debug_print
from pylsys.utils import (PylsysError, FillPolicyError, StreamExhaustedError, FormatError,
                          NUCLEOTIDES, GAP)
from pylsys.starmodel import NucleotideSequence, StarModel
from pylsys.rules import Or1dRules, SINGLE, MULTI

SKIP = 'skip-until-allowed'
SUBSTITUTE = 'substitute-first-allowed'
FAIL = 'fail-on-mismatch'
POLICY_NAMES = {'skip': SKIP, 'substitute': SUBSTITUTE, 'fail': FAIL}

LEFT_TO_RIGHT = 'left-to-right'
RIGHT_TO_LEFT = 'right-to-left'

TRACE_COLUMNS = ['pass', 'run_start', 'column', 'prev2', 'prev1', 'next1', 'next2',
                 'rule_id', 'allowed', 'stream_index', 'skipped', 'chosen']


@dataclass(frozen=True)
class FillPolicy:
    """pylsys.gapfill.FillPolicy

    How a stream symbol the matched rule does not allow is handled

    Attributes:
        mismatch_handling: skip-until-allowed (default), substitute-first-allowed or fail-on-mismatch
        substitution_order: base priority for substitute-first-allowed (CTGA)
        run_order: order gap runs are visited within a pass (left-to-right)
    """
    mismatch_handling: str = SKIP
    substitution_order: str = 'CTGA'
    run_order: str = LEFT_TO_RIGHT

    def __post_init__(self):
        handling = POLICY_NAMES.get(self.mismatch_handling, self.mismatch_handling)
        if handling not in POLICY_NAMES.values():
            raise PylsysError('unknown mismatch handling {}'.format(self.mismatch_handling))
        object.__setattr__(self, 'mismatch_handling', handling)
        if sorted(self.substitution_order) != sorted(NUCLEOTIDES):
            raise PylsysError('substitution order {} is not a permutation of ACGT'
                              .format(self.substitution_order))
        if self.run_order not in (LEFT_TO_RIGHT, RIGHT_TO_LEFT):
            raise PylsysError('unknown run order {}'.format(self.run_order))

    @classmethod
    def from_name(cls, name, **kwargs):
        if name not in POLICY_NAMES:
            raise PylsysError('policy must be one of {}, got {}'.format(', '.join(POLICY_NAMES), name))
        return cls(mismatch_handling=POLICY_NAMES[name], **kwargs)


@dataclass(frozen=True)
class FillEvent:
    pass_index: int
    run_start: int
    column: int
    context: Tuple[Optional[str], ...]
    rule_id: str
    allowed: str
    stream_index: int
    skipped: int
    chosen: str


@dataclass
class FillTrace:
    """pylsys.gapfill.FillTrace

    Ordered record of every fill event
    """
    events: List[FillEvent] = field(default_factory=list)

    def __len__(self):
        return len(self.events)

    def __iter__(self):
        return iter(self.events)

    def __getitem__(self, i):
        return self.events[i]

    @property
    def symbols_consumed(self):
        return self.events[-1].stream_index + 1 if self.events else 0

    @property
    def passes(self):
        return max((e.pass_index for e in self.events), default=0)

    def to_dataframe(self):
        rows = [[e.pass_index, e.run_start, e.column]
                + [c if c else '.' for c in e.context]
                + [e.rule_id, e.allowed, e.stream_index, e.skipped, e.chosen]
                for e in self.events]
        return pd.DataFrame(rows, columns=TRACE_COLUMNS)

    @classmethod
    def from_dataframe(cls, df):
        missing = [c for c in TRACE_COLUMNS if c not in df.columns]
        if missing:
            raise FormatError('trace is missing columns: {}'.format(', '.join(missing)))
        events = []
        for row in df.to_dict('records'):
            context = tuple(None if str(row[k]) == '.' else str(row[k])
                            for k in ('prev2', 'prev1', 'next1', 'next2'))
            events.append(FillEvent(int(row['pass']), int(row['run_start']), int(row['column']),
                                    context, str(row['rule_id']), str(row['allowed']),
                                    int(row['stream_index']), int(row['skipped']), str(row['chosen'])))
        return cls(events)


class FillResult(NamedTuple):
    sequence: NucleotideSequence
    trace: FillTrace


@dataclass(frozen=True)
class Violation:
    event_index: Optional[int]
    kind: str
    message: str

    def __str__(self):
        where = 'event {}'.format(self.event_index) if self.event_index is not None else 'output'
        return '{}: {}: {}'.format(where, self.kind, self.message)


def read_context(state, column):
    """pylsys.gapfill.read_context

    (prev2, prev1, next1, next2) around column; None beyond the ends or on an open gap
    """
    out = []
    for offset in (-2, -1, 1, 2):
        i = column + offset
        if 0 <= i < len(state) and state[i] != GAP:
            out.append(state[i])
        else:
            out.append(None)
    return tuple(out)


def _gap_class(gap_class):
    if gap_class in (SINGLE, MULTI):
        return gap_class
    raise PylsysError("gap class must be '{}' or '{}', got {}".format(SINGLE, MULTI, gap_class))


def allowed_set(context, gap_class, table=None):
    """pylsys.gapfill.allowed_set

    Bases permitted at a gap column by the first matching rule

    Args:
        context: (prev2, prev1, next1, next2), None where unavailable
        gap_class: 'single' for the last open column of a run, 'multi' otherwise
        table: :class:`~pylsys.rules.ConstraintRuleTable` (Or1dRules when None)

    Returns:
        (frozenset of bases, rule id)
    """
    table = table or Or1dRules()
    rule = table.match(tuple(context), _gap_class(gap_class))
    return frozenset(rule.allowed), rule.id


class _Cursor(object):
    """numbered reader over a symbol stream"""
    def __init__(self, stream):
        self._it = iter(stream)
        self.index = -1

    def next(self, remaining):
        try:
            symbol = next(self._it)
        except (StopIteration, StreamExhaustedError):
            raise StreamExhaustedError(
                'symbol stream exhausted after {} symbols with {} gap columns left'
                .format(self.index + 1, remaining), consumed=self.index + 1, remaining_gaps=remaining)
        self.index += 1
        if symbol not in NUCLEOTIDES:
            raise PylsysError("stream symbol '{}' at index {} is not a nucleotide".format(symbol, self.index))
        return symbol


def _draw(cursor, allowed, policy, column, context, remaining):
    """(chosen base, stream index used, symbols skipped)"""
    symbol = cursor.next(remaining)
    if symbol in allowed:
        return symbol, cursor.index, 0
    if policy.mismatch_handling == FAIL:
        raise FillPolicyError(column, context, symbol, allowed)
    if policy.mismatch_handling == SUBSTITUTE:
        chosen = next(b for b in policy.substitution_order if b in allowed)
        return chosen, cursor.index, 0
    skipped = 1
    while True:
        symbol = cursor.next(remaining)
        if symbol in allowed:
            return symbol, cursor.index, skipped
        skipped += 1


def schedule(model, policy=None):
    """pylsys.gapfill.schedule

    Yields (pass, run, column, open columns left in the run) in fill order: every
    pass visits each unfinished run once and takes its leftmost open column
    """
    policy = policy or FillPolicy()
    runs = list(model.gap_runs)
    if policy.run_order == RIGHT_TO_LEFT:
        runs.reverse()
    filled = {r.start: 0 for r in runs}
    pass_index = 0
    while any(filled[r.start] < r.length for r in runs):
        pass_index += 1
        for r in runs:
            done = filled[r.start]
            if done < r.length:
                yield pass_index, r, r.start + done, r.length - done
                filled[r.start] = done + 1


def fill(model, stream, table=None, policy=None, **kwargs):
    """pylsys.gapfill.fill

    Fills every gap column of a star model with bases drawn in order from stream.
    A column is filled under the multiple gap rules while more than one column of
    its run is open and under the single gap rules for the last one. Context is
    read from the current state, so earlier fills are visible to later ones.

    Args:
        model: :class:`~pylsys.starmodel.StarModel`
        stream: iterable of nucleotide symbols (e.g. :func:`~pylsys.grammar.expand_stream`)
        table: :class:`~pylsys.rules.ConstraintRuleTable` (Or1dRules when None)
        policy: :class:`~pylsys.gapfill.FillPolicy` (skip-until-allowed)
        id (optional): id of the filled sequence ('filled')

    Returns:
        :class:`~pylsys.gapfill.FillResult` (sequence, trace)
    """
    table = table or Or1dRules()
    policy = policy or FillPolicy()
    state = list(model.columns)
    cursor = _Cursor(stream)
    remaining = model.gap_count
    events = []
    current = 0

    for pass_index, run, column, open_in_run in schedule(model, policy):
        if pass_index != current:
            if current:
                debug_print('pass %s filled %s columns, %s stream symbols used'
                            % (current, sum(1 for e in events if e.pass_index == current), cursor.index + 1))
            current = pass_index
        gap_class = MULTI if open_in_run > 1 else SINGLE
        context = read_context(state, column)
        rule = table.match(context, gap_class)
        chosen, index, skipped = _draw(cursor, rule.allowed, policy, column, context, remaining)
        if skipped:
            debug_print('column %s: skipped %s stream symbols' % (column, skipped))
        state[column] = chosen
        remaining -= 1
        events.append(FillEvent(pass_index, run.start, column, context, rule.id, rule.allowed,
                                index, skipped, chosen))

    trace = FillTrace(events)
    if events:
        verbose_print('filled %s gap columns in %s passes using %s stream symbols'
                      % (len(events), trace.passes, trace.symbols_consumed))
    return FillResult(NucleotideSequence(kwargs.get('id', 'filled'), ''.join(state)), trace)


def validate_trace(model, trace, output, table=None, **kwargs):
    """pylsys.gapfill.validate_trace

    Replays a fill from the model alone and reports every way trace or output
    disagrees with the replay. When the stream is given, each event's chosen base
    and skipped count are also checked against the stream and policy.

    Args:
        model: :class:`~pylsys.starmodel.StarModel`
        trace: :class:`~pylsys.gapfill.FillTrace`
        output: filled :class:`~pylsys.starmodel.NucleotideSequence` or string
        table: :class:`~pylsys.rules.ConstraintRuleTable` (Or1dRules when None)
        policy (optional): :class:`~pylsys.gapfill.FillPolicy` used for the fill
        stream (optional): the symbols the fill drew from, as a string or list

    Returns:
        list of :class:`~pylsys.gapfill.Violation`, empty when consistent
    """
    table = table or Or1dRules()
    policy = kwargs.get('policy') or FillPolicy()
    stream = kwargs.get('stream')
    bases = output.bases if isinstance(output, NucleotideSequence) else str(output)
    violations = []

    if len(bases) != len(model.columns):
        violations.append(Violation(None, 'length', 'output has {} columns, model has {}'
                                    .format(len(bases), len(model.columns))))
        return violations
    for i, (m, b) in enumerate(zip(model.columns, bases)):
        if m != GAP and m != b:
            violations.append(Violation(None, 'consensus altered',
                                        'column {} is {} in the model and {} in the output'.format(i, m, b)))
        elif b not in NUCLEOTIDES:
            violations.append(Violation(None, 'incomplete', 'column {} holds {!r}'.format(i, b)))

    expected = list(schedule(model, policy))
    if len(expected) != len(trace):
        violations.append(Violation(None, 'event count', 'trace has {} events for {} gap columns'
                                    .format(len(trace), len(expected))))

    state = list(model.columns)
    last_index = -1
    for k, (event, (pass_index, run, column, open_in_run)) in enumerate(zip(trace, expected)):
        if (event.pass_index, event.run_start, event.column) != (pass_index, run.start, column):
            violations.append(Violation(k, 'schedule', 'expected pass {} run {} column {}, trace has {} {} {}'
                                        .format(pass_index, run.start, column, event.pass_index,
                                                event.run_start, event.column)))
            column = event.column
        gap_class = MULTI if open_in_run > 1 else SINGLE
        context = read_context(state, column)
        if tuple(event.context) != context:
            violations.append(Violation(k, 'context', 'recorded {} but replay reads {}'
                                        .format(event.context, context)))
        rule = table.match(context, gap_class)
        if event.rule_id != rule.id:
            violations.append(Violation(k, 'rule', 'recorded {} but {} matches'.format(event.rule_id, rule.id)))
        if event.allowed != rule.allowed:
            violations.append(Violation(k, 'allowed set', 'recorded {} but rule {} allows {}'
                                        .format(event.allowed, rule.id, rule.allowed)))
        if event.chosen not in event.allowed:
            violations.append(Violation(k, 'chosen outside allowed set', '{} is not in recorded set {}'
                                        .format(event.chosen, event.allowed)))
        elif event.chosen not in rule.allowed:
            violations.append(Violation(k, 'rule conformity', '{} is not allowed by {}'
                                        .format(event.chosen, rule.id)))
        if event.stream_index <= last_index:
            violations.append(Violation(k, 'stream order', 'stream index {} does not follow {}'
                                        .format(event.stream_index, last_index)))
        elif event.stream_index != last_index + 1 + event.skipped:
            violations.append(Violation(k, 'skip count', 'index {} after {} with {} skipped'
                                        .format(event.stream_index, last_index, event.skipped)))
        if stream is not None:
            violations.extend(_check_draw(k, event, last_index, stream, rule.allowed, policy))
        if 0 <= column < len(bases) and bases[column] != event.chosen:
            violations.append(Violation(k, 'output', 'output has {} at column {} but {} was chosen'
                                        .format(bases[column], column, event.chosen)))
        if 0 <= column < len(state):
            state[column] = event.chosen
        last_index = max(last_index, event.stream_index)

    for v in violations:
        debug_print(str(v))
    return violations


def _check_draw(k, event, last_index, stream, allowed, policy):
    if event.stream_index >= len(stream):
        return [Violation(k, 'stream', 'index {} is past the stream end'.format(event.stream_index))]
    symbol = stream[event.stream_index]
    found = []
    if policy.mismatch_handling == SUBSTITUTE and symbol not in allowed:
        substitute = next(b for b in policy.substitution_order if b in allowed)
        if event.chosen != substitute:
            found.append(Violation(k, 'substitution', 'expected {} for disallowed {}'.format(substitute, symbol)))
    elif event.chosen != symbol:
        found.append(Violation(k, 'stream', 'chose {} but stream index {} is {}'
                               .format(event.chosen, event.stream_index, symbol)))
    for i in range(last_index + 1, min(event.stream_index, len(stream))):
        if stream[i] in allowed:
            found.append(Violation(k, 'skip', 'skipped stream index {} ({}) is allowed'.format(i, stream[i])))
    return found
