# ******************************************************************************
# pylsys.rules.or1d module
# ******************************************************************************
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

from .rules import ConstraintRuleTable

OR1D_RULES = """\
# last open column of a run: two bases on each side
A1  TA_A(A|G)    -> C
A2  TA_GA        -> C
A3  TA_(T|C)     -> CT
A4  TG_A(A|G)    -> CG
A5  TG_GA        -> CG
A6  TG_(T|C)     -> CGT
A7  .T_A(C|T)    -> CT
A8  .T_A(A|G)    -> C
A9  .T_GA        -> CG
A10 .T_G(C|T|G)  -> CGT
A11 .C_A(A|G)    -> ACG
A12 .C_GA        -> ACG
A13 else         -> ACGT
# two or more open columns: left context only
B1  TA_          -> CT
B2  TG_          -> CGT
B3  else         -> ACGT
"""


class Or1dRules(ConstraintRuleTable):
    """pylsys.rules.Or1dRules

    The OR1D subfamily fill rules. 13 rules for the last open column of a gap run
    and 3 for columns filled while more of the run remains open.

    Attributes:
        name: or1d
    """
    def __init__(self, file_=None):
        ConstraintRuleTable.__init__(self, file_ or OR1D_RULES, name='or1d')
