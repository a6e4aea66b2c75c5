from pylsys import grammar, starmodel, gapfill, seqcheck, seqio
from pylsys.apps import pipeline


def run(test=False):
    # three aligned sequences of equal length
    print('Example progress: Reading aligned sequences...')
    records = seqio.read_fasta('trio.fasta')

    # columns where the sequences disagree become gaps in the star model
    print('Example progress: Building the star model...')
    model = starmodel.build_star(records)
    print(seqio.write_star(model), end='')
    print(starmodel.gap_stats(model).to_series().to_string())

    # one stream symbol per gap column at least
    spec = grammar.reference_spec()
    n = pipeline.choose_iteration(spec, model.gap_count)
    stream = grammar.expand(spec, n)
    print('Example progress: Filling {} gaps from iteration {} ({} symbols)...'
          .format(model.gap_count, n, len(stream)))
    result = gapfill.fill(model, stream)
    print(seqio.write_trace(result.trace), end='')

    print('Example progress: Checking the filled sequence...')
    assert gapfill.validate_trace(model, result.trace, result.sequence, stream=stream) == []
    print(seqcheck.exon_report(result.sequence))
    for r in records:
        print('{}: {}'.format(r.header, seqcheck.identity_hamming(result.sequence, r.sequence).to_text()))

    # the same steps end to end, writing star.txt, filled.fasta, trace.tsv and report.txt
    print('Example progress: Running the pipeline...')
    seqio.write_grammar(spec, 'or1d.grammar')
    out = pipeline.run(grammar='or1d.grammar', fasta='trio.fasta', out='output')
    assert out.fill.sequence.bases == result.sequence.bases

    print('Example progress: Complete!')

if __name__ == '__main__':
    run()
