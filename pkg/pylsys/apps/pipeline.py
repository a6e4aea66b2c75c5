# ******************************************************************************
# pylsys.apps.pipeline module
# ******************************************************************************
#
# end to end synthesis: star model, L-system stream, gap fill, validation and
# output files
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
from dataclasses import dataclass, field
from typing import Dict, List

from pylsys import verbose_print, warning_print
from pylsys.utils import Item, PylsysError
from pylsys import grammar, starmodel, gapfill, seqcheck, seqio
from pylsys.rules import Or1dRules, read_rule_table

DEFAULT_SETTINGS = {
    'policy': 'skip',
    'substitution_order': 'CTGA',
    'run_order': gapfill.LEFT_TO_RIGHT,
    'frame': 0,
    'iterations': None,
    'rules': None,
    'out': '.',
}

STAR_FILE = 'star.txt'
FASTA_FILE = 'filled.fasta'
TRACE_FILE = 'trace.tsv'
REPORT_FILE = 'report.txt'

NOT_APPLICABLE = 'not applicable'


class PipelineConfig(Item):
    """pylsys.apps.pipeline.PipelineConfig

    Settings of one pipeline run; anything not given comes from DEFAULT_SETTINGS

    Attributes:
        grammar: grammar file
        fasta: FASTA file of pre-aligned, equal length sequences
        policy: skip, substitute or fail
        substitution_order: base priority for the substitute policy (CTGA)
        run_order: left-to-right or right-to-left
        frame: reading frame for the stop codon scan (0)
        iterations: fixed iteration count; chosen from the gap count when None
        rules: optional rule table override file
        out: output directory
    """
    def __init__(self, **kwargs):
        settings = dict(DEFAULT_SETTINGS)
        settings.update({k: v for k, v in kwargs.items() if v is not None})
        Item.__init__(self, **settings)

    def check(self):
        for name in ('grammar', 'fasta', 'rules'):
            path = getattr(self, name)
            if path is None and name != 'rules':
                raise PylsysError('pipeline needs a {} file'.format(name))
            if path is not None and not os.path.isfile(path):
                raise FileNotFoundError('{} file "{}" does not exist'.format(name, path))
        if self.policy not in gapfill.POLICY_NAMES:
            raise PylsysError('policy must be one of {}, got {}'
                              .format(', '.join(gapfill.POLICY_NAMES), self.policy))
        if self.frame not in (0, 1, 2):
            raise PylsysError('frame must be 0, 1 or 2, got {}'.format(self.frame))
        if self.iterations is not None and self.iterations < 0:
            raise PylsysError('iterations must be non-negative, got {}'.format(self.iterations))

    def fill_policy(self):
        return gapfill.FillPolicy.from_name(self.policy, substitution_order=self.substitution_order,
                                            run_order=self.run_order)


@dataclass
class PipelineResult:
    model: starmodel.StarModel
    fill: gapfill.FillResult
    iteration: int
    stream: str
    violations: List[gapfill.Violation] = field(default_factory=list)
    exon: seqcheck.ExonReport = None
    identity: Dict[str, seqcheck.IdentityReport] = field(default_factory=dict)
    report: dict = field(default_factory=dict)
    files: Dict[str, str] = field(default_factory=dict)


def choose_iteration(spec, gap_count, **kwargs):
    """pylsys.apps.pipeline.choose_iteration

    Smallest iteration whose expansion covers every gap column; 0 when there is
    nothing to fill
    """
    if gap_count < 1:
        return 0
    return grammar.smallest_iteration(spec, gap_count, **kwargs)


def build_report(config, result, records):
    stats = starmodel.gap_stats(result.model)
    trace = result.fill.trace
    return {
        'grammar': os.path.basename(config.grammar),
        'fasta': os.path.basename(config.fasta),
        'sequences': len(records),
        'columns': len(result.model),
        'gap_columns': stats.total,
        'gap_runs': {str(k): v for k, v in stats.histogram.items()},
        'iteration': result.iteration,
        'stream_length': len(result.stream),
        'policy': config.fill_policy().mismatch_handling,
        'run_order': config.run_order,
        'passes': trace.passes,
        'symbols_consumed': trace.symbols_consumed,
        'symbols_skipped': sum(e.skipped for e in trace),
        'violations': [str(v) for v in result.violations],
        'frame': config.frame,
        **_exon_fields(result.exon),
        'identity': {k: v.to_dict() for k, v in result.identity.items()},
    }


def _exon_fields(exon):
    # no complete codon in the frame
    if exon is None:
        return {'internal_stops': NOT_APPLICABLE, 'terminal_stop': NOT_APPLICABLE,
                'starts_with_atg': NOT_APPLICABLE}
    return {'internal_stops': [i for i, _ in exon.internal_stops],
            'terminal_stop': exon.terminal_stop,
            'starts_with_atg': exon.starts_with_atg}


def identity_key(index, header):
    """report key of input record index (0-based); unique even when headers repeat"""
    return '{}:{}'.format(index + 1, header)


def run(config=None, **kwargs):
    """pylsys.apps.pipeline.run

    Builds the star model of the input sequences, expands the grammar far enough
    to cover every gap column, fills the gaps, replays the fill and checks the
    result for stop codons and identity to each input. star.txt, filled.fasta and
    trace.tsv are written as soon as the fill is validated, report.txt and
    report.json once the checks are done. Identities are keyed "<n>:<header>" with
    n the 1-based record number.

    Args:
        config: :class:`~pylsys.apps.pipeline.PipelineConfig` (built from kwargs when None)

    Returns:
        :class:`~pylsys.apps.pipeline.PipelineResult`
    """
    config = config or PipelineConfig(**kwargs)
    config.check()

    spec = grammar.read_grammar(config.grammar)
    records = seqio.read_fasta(config.fasta)
    seqs = [r.sequence for r in records]
    table = read_rule_table(config.rules) if config.rules else Or1dRules()
    policy = config.fill_policy()

    model = starmodel.build_star(seqs)
    if config.iterations is None:
        iteration = choose_iteration(spec, model.gap_count)
    else:
        iteration = config.iterations
    stream = grammar.expand(spec, iteration)
    verbose_print('iteration %s gives %s stream symbols for %s gap columns'
                  % (iteration, len(stream), model.gap_count))

    filled = gapfill.fill(model, stream, table, policy, id='filled')
    violations = gapfill.validate_trace(model, filled.trace, filled.sequence, table,
                                        policy=policy, stream=stream)
    for v in violations:
        warning_print(str(v))

    os.makedirs(config.out, exist_ok=True)
    files = {name: os.path.join(config.out, name)
             for name in (STAR_FILE, FASTA_FILE, TRACE_FILE, REPORT_FILE)}
    seqio.write_star(model, files[STAR_FILE])
    seqio.write_fasta([filled.sequence], files[FASTA_FILE])
    seqio.write_trace(filled.trace, files[TRACE_FILE])

    exon = None
    if len(filled.sequence) >= config.frame + 3:
        exon = seqcheck.exon_report(filled.sequence, config.frame)
    else:
        warning_print('%s bases hold no complete codon in frame %s, stop codon scan skipped'
                      % (len(filled.sequence), config.frame))
    identity = {identity_key(i, r.header): seqcheck.identity_hamming(filled.sequence, r.sequence)
                for i, r in enumerate(records)}

    result = PipelineResult(model=model, fill=filled, iteration=iteration, stream=stream,
                            violations=violations, exon=exon, identity=identity, files=files)
    result.report = build_report(config, result, records)
    seqio.write_report(result.report, files[REPORT_FILE])
    files['report.json'] = os.path.join(config.out, 'report.json')
    verbose_print('pipeline output written to "%s"' % config.out)
    return result
