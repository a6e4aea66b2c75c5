import unittest
import os
from os import path as osp
from examples_tester_env import AbstractExamplesTestCase
from examples_tester_env import example_tests_sort


class ExamplesTestCase(AbstractExamplesTestCase):

    def test_example1(self):
        scripts = self.path_generator('01_reference_grammar')
        self.assertEqual(len(scripts), 1)
        passed, progress = self.run_example(scripts[0])
        self.assertTrue(passed, progress)
        self.assertIn('Example progress: 108 symbols need iteration 5', progress)
        self.assertTrue(osp.isfile(osp.join(self.tmp_data_dir, '01_reference_grammar', 'expansions.fasta')))

    def test_example2(self):
        scripts = self.path_generator('02_star_fill')
        self.assertEqual(len(scripts), 1)
        passed, progress = self.run_example(scripts[0])
        self.assertTrue(passed, progress)
        self.assertIn('Example progress: Filling 5 gaps from iteration 2 (9 symbols)...', progress)
        out = osp.join(self.tmp_data_dir, '02_star_fill', 'output')
        self.assertEqual(sorted(os.listdir(out)),
                         ['filled.fasta', 'report.json', 'report.txt', 'star.txt', 'trace.tsv'])


if __name__ == '__main__':
    my_tl = unittest.TestLoader()
    my_tl.sortTestMethodsUsing = example_tests_sort
    unittest.TextTestRunner(buffer=True, verbosity=2).run(my_tl.loadTestsFromTestCase(ExamplesTestCase))
