# Test functions for batch analysis in worker processes

import os
import sys

import pytest

from .. import cli
from .. import conf
from .test_cli import EXAMPLE, _write


@pytest.mark.skipif(sys.platform.startswith('win'), reason="forkserver start method is not available on Windows")
def test_batch_multiprocessing(tmp_path):
    """Serial and multiprocess batch runs give the same reports, in the same order"""
    _write(tmp_path, 'a_example.json', dict(EXAMPLE, m=12))
    _write(tmp_path, 'b_cover.json', {'kind': 'double_cover', 'l': 1, 'm': 10, 'declared_types': []})
    _write(tmp_path, 'c_hypersurface.json', {'kind': 'hypersurface', 'a': 1, 'm': 10, 'declared_types': ['IV']})
    _write(tmp_path, 'd_bad.json', 'not json')

    with conf.set_temp('use_multiprocessing', False):
        serial = cli.cmd_batch(str(tmp_path))

    with conf.set_temp('use_multiprocessing', True), conf.set_temp('n_processes', 2):
        multi = cli.cmd_batch(str(tmp_path))

    assert [p for p, _ in multi] == [p for p, _ in serial]
    assert [r for _, r in multi] == [r for _, r in serial], \
        "Reports from multiprocessing do not match reports from a single process"
    assert [r.exit_code for _, r in multi] == [0, 0, 0, 65]
    assert [r.verdict['bott_state'] for _, r in multi[:3]] == ['Fails', 'Holds', 'Fails']


@pytest.mark.skipif(sys.platform.startswith('win'), reason="forkserver start method is not available on Windows")
def test_batch_multiprocessing_forwards_configuration(tmp_path):
    _write(tmp_path, 'a_example.json', dict(EXAMPLE, m=12))
    _write(tmp_path, 'b_cover.json', {'kind': 'double_cover', 'l': 1, 'm': 10, 'declared_types': []})

    # the worker helper installs the forwarded values; set_temp restores them afterwards
    before = conf.jacobian_max_truncation
    config_values = {'jacobian_initial_truncation': 4, 'jacobian_max_truncation': 24, 'tangent_weights': '2,1,1'}
    with conf.set_temp('jacobian_initial_truncation', conf.jacobian_initial_truncation), \
            conf.set_temp('jacobian_max_truncation', conf.jacobian_max_truncation), \
            conf.set_temp('tangent_weights', conf.tangent_weights):
        report = cli._wrap_analyze_for_multiprocessing((os.path.join(str(tmp_path), 'b_cover.json'),
                                                         config_values))
        assert conf.jacobian_max_truncation == 24
        assert conf.tangent_weights == '2,1,1'
    assert report.verdict['bott_state'] == 'Holds'
    assert conf.jacobian_max_truncation == before

    with conf.set_temp('use_multiprocessing', True), conf.set_temp('n_processes', 2):
        results = cli.cmd_batch(str(tmp_path), write=True)
    assert os.path.exists(os.path.join(str(tmp_path), 'a_example.report.json'))
    assert [r.exit_code for _, r in results] == [0, 0]
