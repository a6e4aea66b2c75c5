from pylsys import grammar, seqio
from pylsys.seqio import FastaRecord


def run(test=False):
    # the four production grammar that generates OR1D-like coding sequence
    print('Example progress: Loading the reference grammar...')
    spec = grammar.reference_spec()
    seqio.write_grammar(spec, 'or1d.grammar')

    # expansion lengths come from the growth matrix, no strings are built
    print('Example progress: Computing expansion lengths...')
    lengths = grammar.expansion_lengths(spec, 8)
    for n, length in lengths.items():
        print('iteration {}: {} symbols'.format(n, length))

    # smallest iteration that can fill 108 gap columns
    n = grammar.smallest_iteration(spec, 108)
    print('Example progress: {} symbols need iteration {}'.format(108, n))

    print('Example progress: Expanding and saving to FASTA...')
    records = [FastaRecord('lsystem_n{}'.format(i), grammar.expand(spec, i)) for i in range(n + 1)]
    seqio.write_fasta(records, 'expansions.fasta')

    # the lazy stream yields the same symbols as the batch expansion
    stream = ''.join(grammar.expand_stream(spec, 108))
    assert stream == records[-1].bases

    print('Example progress: Complete!')

if __name__ == '__main__':
    run()
