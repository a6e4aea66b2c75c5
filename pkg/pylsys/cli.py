# ******************************************************************************
# pylsys.cli module
# ******************************************************************************
#
# command line tools for pylsys
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
import sys
import argparse

from Bio.Seq import Seq
from Bio.SeqRecord import SeqRecord

import pylsys
from pylsys import error_print, verbose_print
from pylsys.utils import (PylsysError, GrammarError, SequenceError, FormatError,
                          StarModelError, ExpansionLimitError, StreamExhaustedError,
                          FillPolicyError)
from pylsys import grammar, starmodel, gapfill, seqcheck, seqio
from pylsys.rules import Or1dRules, read_rule_table
from pylsys.apps import pipeline

# first matching class wins
EXIT_CODES = [
    (GrammarError, 2),
    (SequenceError, 2),
    (FormatError, 2),
    (StarModelError, 3),
    (ExpansionLimitError, 3),
    (StreamExhaustedError, 4),
    (FillPolicyError, 5),
    (OSError, 6),
    (PylsysError, 2),
]


def exit_code(e):
    for cls, code in EXIT_CODES:
        if isinstance(e, cls):
            return code
    raise e


def _require(path, what):
    if not os.path.isfile(path):
        raise FileNotFoundError('{} file "{}" does not exist'.format(what, path))
    return path


def _emit(text, path=None):
    if not path:
        sys.stdout.write(text)


def _policy(args):
    run_order = gapfill.RIGHT_TO_LEFT if args.right_to_left else gapfill.LEFT_TO_RIGHT
    return gapfill.FillPolicy.from_name(args.policy, run_order=run_order)


def cmd_expand(args):
    spec = grammar.read_grammar(_require(args.grammar, 'grammar'))
    word = grammar.expand(spec, args.iterations)
    record = SeqRecord(Seq(word), id='lsystem_n{}'.format(args.iterations), description='')
    _emit(seqio.write_fasta([record], args.out), args.out)
    return 0


def cmd_star(args):
    records = seqio.read_fasta(_require(args.fasta, 'FASTA'))
    model = starmodel.build_star([r.sequence for r in records])
    _emit(seqio.write_star(model, args.out), args.out)
    if args.out:
        stats = starmodel.gap_stats(model)
        print('gap columns: {}, runs: {}, longest run: {}'.format(stats.total, len(model.gap_runs),
                                                                   stats.max_run))
        if stats.histogram:
            print(stats.to_series().to_string())
    return 0


def cmd_fill(args):
    model = seqio.read_star(_require(args.star, 'star model'))
    if args.grammar:
        spec = grammar.read_grammar(_require(args.grammar, 'grammar'))
    else:
        spec = grammar.reference_spec()
    table = read_rule_table(_require(args.rules, 'rule table')) if args.rules else Or1dRules()
    policy = _policy(args)
    if args.iterations is None:
        iteration = pipeline.choose_iteration(spec, model.gap_count)
    else:
        iteration = args.iterations
    stream = grammar.expand(spec, iteration)
    result = gapfill.fill(model, stream, table, policy)
    violations = gapfill.validate_trace(model, result.trace, result.sequence, table,
                                        policy=policy, stream=stream)
    for v in violations:
        error_print(str(v))
    os.makedirs(args.out, exist_ok=True)
    seqio.write_fasta([result.sequence], os.path.join(args.out, pipeline.FASTA_FILE))
    seqio.write_trace(result.trace, os.path.join(args.out, pipeline.TRACE_FILE))
    verbose_print('filled %s gap columns from iteration %s' % (model.gap_count, iteration))
    return 0 if not violations else 1


def cmd_check(args):
    records = seqio.read_fasta(_require(args.fasta, 'FASTA'))
    for r in records:
        report = seqcheck.exon_report(r.sequence, args.frame)
        stops = ','.join(str(i) for i, _ in seqcheck.scan_stops(r.sequence, args.frame)) or 'none'
        print('{}\tframe {}\tstops {}\tinternal {}\t{}'.format(
            r.header, args.frame, stops, len(report.internal_stops), report.protein))
    return 0


def cmd_identity(args):
    records = seqio.read_fasta(_require(args.fasta, 'FASTA'))
    method = 'aligned' if args.aligned else 'hamming'
    matrix = seqcheck.identity_matrix([r.sequence for r in records], method=method)
    print(matrix.round(4).to_string())
    return 0


def cmd_pipeline(args):
    config = pipeline.PipelineConfig(
        grammar=args.grammar, fasta=args.fasta, policy=args.policy, iterations=args.iterations,
        frame=args.frame, rules=args.rules, out=args.out,
        run_order=gapfill.RIGHT_TO_LEFT if args.right_to_left else None)
    result = pipeline.run(config)
    print(seqio.write_report(result.report), end='')
    return 0


def _fill_options(p):
    p.add_argument('--iterations', type=int, default=None,
                   help='L-system iterations (default: smallest covering every gap column)')
    p.add_argument('--policy', choices=sorted(gapfill.POLICY_NAMES), default='skip',
                   help='handling of stream symbols a rule does not allow')
    p.add_argument('--rules', help='rule table override file')
    p.add_argument('--right-to-left', action='store_true',
                   help='visit gap runs right to left within each pass')


def build_parser():
    parser = argparse.ArgumentParser(prog='pylsys', description='Command line tools for pylsys')
    parser.add_argument('-v', dest='verbosity',
                        help='verbosity level for output from pylsys tools\n'
                             '0: silent\n'
                             '1: error output\n'
                             '2: error, warning output\n'
                             '3: error, warning, verbose output (default)\n'
                             '4: error, warning, verbose, debugging output',
                        type=int, default=3, choices=[0, 1, 2, 3, 4])
    parser.add_argument('--version', action='version', version=pylsys.__version__)
    sub = parser.add_subparsers(dest='command')
    sub.required = True

    p = sub.add_parser('expand', help='expand a grammar and write FASTA')
    p.add_argument('--grammar', required=True)
    p.add_argument('--iterations', type=int, required=True)
    p.add_argument('--out', help='output FASTA file (stdout when omitted)')
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser('star', help='build the star model of aligned sequences')
    p.add_argument('--fasta', required=True)
    p.add_argument('--out', help='output star model file (stdout when omitted)')
    p.set_defaults(func=cmd_star)

    p = sub.add_parser('fill', help='fill the gaps of a star model')
    p.add_argument('--star', required=True)
    p.add_argument('--grammar', help='grammar file (the OR1D generator when omitted)')
    _fill_options(p)
    p.add_argument('--out', required=True, help='output directory')
    p.set_defaults(func=cmd_fill)

    p = sub.add_parser('check', help='scan for stop codons and translate')
    p.add_argument('--fasta', required=True)
    p.add_argument('--frame', type=int, choices=[0, 1, 2], default=0)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser('identity', help='pairwise identity matrix')
    p.add_argument('--fasta', required=True)
    p.add_argument('--aligned', action='store_true', help='global alignment identity')
    p.set_defaults(func=cmd_identity)

    p = sub.add_parser('pipeline', help='star model, fill, validation and report')
    p.add_argument('--grammar', required=True)
    p.add_argument('--fasta', required=True)
    p.add_argument('--frame', type=int, choices=[0, 1, 2], default=0)
    _fill_options(p)
    p.add_argument('--out', required=True, help='output directory')
    p.set_defaults(func=cmd_pipeline)
    return parser


def main(argv=None):
    """pylsys.cli.main

    Entry point of the pylsys command

    Args:
        argv: argument list (sys.argv[1:] when None)

    Returns:
        exit code: 0 success, 2 bad input, 3 star model or expansion limit,
        4 stream exhausted, 5 fill policy failure, 6 file error
    """
    args = build_parser().parse_args(argv)
    pylsys.set_verbosity(args.verbosity)
    try:
        return args.func(args)
    except (PylsysError, OSError) as e:
        error_print(e)
        return exit_code(e)


if __name__ == '__main__':
    sys.exit(main())
