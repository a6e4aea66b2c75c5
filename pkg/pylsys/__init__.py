# ******************************************************************************
# pylsys.__init__ module
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

import sys

__version__ = '0.3.0'

error = True
warning = True
verbose = True
debug = False


def _emitter(prefix, flag):
    def emit(*a, **k):
        if globals()[flag]:
            print(prefix, *a, file=sys.stderr)
    return emit


# all diagnostics go to stderr; stdout carries data only
error_print = _emitter('(error) PyLSYS:', 'error')
warning_print = _emitter('(warning) PyLSYS:', 'warning')
verbose_print = _emitter('PyLSYS:', 'verbose')
debug_print = _emitter('(debug) PyLSYS:', 'debug')


def set_verbosity(level):
    """pylsys.set_verbosity

    Sets output flags from a verbosity level

    Args:
        level: 0 silent, 1 errors, 2 +warnings, 3 +verbose (default), 4 +debug
    """
    global error, warning, verbose, debug
    error = level >= 1
    warning = level >= 2
    verbose = level >= 3
    debug = level >= 4


from pylsys.utils import PylsysError
