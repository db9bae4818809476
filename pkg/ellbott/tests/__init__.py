# Licensed under a 3-clause BSD style license - see LICENSE.md
"""
This package contains the ellbott tests.
"""
