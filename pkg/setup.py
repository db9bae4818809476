#!/usr/bin/env python

import os
import sys
from setuptools import setup

TEST_HELP = """
Note: running tests is done with tox or pytest, not 'python setup.py test':

    tox -e test

or, from a development install,

    pip install -e .[test]
    pytest
"""

if 'test' in sys.argv:
    print(TEST_HELP)
    sys.exit(1)

DOCS_HELP = """
Note: the documentation is built with

    tox -e docbuild
"""

if 'build_docs' in sys.argv or 'build_sphinx' in sys.argv:
    print(DOCS_HELP)
    sys.exit(1)

setup(use_scm_version={'write_to': os.path.join('ellbott', 'version.py')})
