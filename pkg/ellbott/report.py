"""
Reports produced by the ellbott command line tool

A `Report` holds only JSON-native values (rationals as "p/q" strings, infinite
vanishing orders as "inf"), so the machine-readable form parses back to an equal
report. The human-readable form lays the census and lemma rows out as astropy
tables.
"""

import json
import logging
import numbers
from fractions import Fraction

from astropy.table import Table

from .exactpoly import INFINITE_ORDER
from .criteria import chi_omega1_twist

__all__ = ['Report', 'census_rows', 'summary_record', 'jsonable']

_log = logging.getLogger('ellbott')

_CENSUS_COLUMNS = ('place', 'residue_degree', 'a', 'b', 'delta', 'type', 'singular_points')
_LEMMA_COLUMNS = ('suite', 'fiber_type', 'degrees', 'computed', 'expected', 'passed')


def jsonable(value):
    """Recursively convert rationals, infinite orders, tuples and sets to JSON-native values."""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, float) and value == INFINITE_ORDER:
        return 'inf'
    if isinstance(value, numbers.Integral):
        return int(value)
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, (set, frozenset)):
        return sorted(jsonable(v) for v in value)
    return str(value)


def census_rows(census):
    """ One row per place of the census.

    Parameters
    ----------
    census : FiberCensus

    Returns
    -------
    list of dict
    """
    rows = []
    for fiber in census:
        cluster = fiber.cluster
        rows.append({'place': str(fiber.place), 'residue_degree': fiber.count,
                     'a': jsonable(cluster.a), 'b': jsonable(cluster.b), 'delta': cluster.delta,
                     'type': fiber.kodaira_type, 'singular_points': fiber.count * fiber.singular_point_count})
    return rows


def summary_record(summary):
    """Summary (beta, r, A^2, chi) and the facts it was decided from, as a dict."""
    return {
        'beta': summary.beta,
        'r': summary.r,
        'A_sq': summary.a_sq,
        'chi': chi_omega1_twist(summary.a_sq, summary.beta),
        'census_state': summary.census_state,
        'types_present': summary.declared_types(),
        'facts': sorted(str(f) for f in summary.facts),
        'origin': jsonable(summary.origin),
    }


class Report(object):
    """ Result of one cli command.

    Parameters
    ----------
    command : str
        'classify', 'analyze', 'family' or 'verify-lemmas'.
    source : dict, optional
        Echo of the input (model file contents or command parameters).
    census : list of dict, optional
        Rows from `census_rows`.
    minimal : bool, optional
    offending_places : list of str, optional
    summary : dict, optional
        From `summary_record`.
    verdict : dict, optional
        From `Verdict.to_dict`.
    lemma_rows : list of dict, optional
        From `localgeom.verify_lemmas`.
    warnings : list of str, optional
    exit_code : int
    error : str, optional
        Message of the error that ended the command, if any.
    """

    _FIELDS = ('command', 'source', 'census', 'minimal', 'offending_places', 'summary', 'verdict', 'lemma_rows',
               'warnings', 'exit_code', 'error')

    def __init__(self, command, source=None, census=None, minimal=None, offending_places=None, summary=None,
                 verdict=None, lemma_rows=None, warnings=(), exit_code=0, error=None):
        self.command = command
        self.source = jsonable(source) if source is not None else None
        self.census = jsonable(census) if census is not None else None
        self.minimal = minimal
        self.offending_places = list(offending_places) if offending_places is not None else None
        self.summary = jsonable(summary) if summary is not None else None
        self.verdict = jsonable(verdict) if verdict is not None else None
        self.lemma_rows = jsonable(lemma_rows) if lemma_rows is not None else None
        self.warnings = list(warnings)
        self.exit_code = int(exit_code)
        self.error = error

    def to_dict(self):
        return {name: getattr(self, name) for name in self._FIELDS}

    @classmethod
    def from_dict(cls, data):
        unknown = set(data) - set(cls._FIELDS)
        if unknown:
            raise ValueError("Unknown report fields: {}".format(', '.join(sorted(unknown))))
        _log.debug("Rebuilding {} report from {} fields".format(data.get('command'), len(data)))
        return cls(**data)

    def to_json(self, indent=2):
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True)

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))

    def __eq__(self, other):
        if not isinstance(other, Report):
            return NotImplemented
        return self.to_dict() == other.to_dict()

    def __repr__(self):
        return "Report({}, exit_code={})".format(self.command, self.exit_code)

    @staticmethod
    def _table(rows, columns):
        table = Table([[str(row[c]) for row in rows] for c in columns], names=columns)
        return table.pformat(max_lines=-1, max_width=-1)

    def format_text(self):
        """Human-readable rendering of the report."""
        lines = ["ellbott {}".format(self.command)]
        if self.source:
            lines.append("input: " + ', '.join('{}={}'.format(k, v) for k, v in sorted(self.source.items())))
        if self.error:
            lines.append("error: {}".format(self.error))
        if self.minimal is not None:
            lines.append("minimal: {}".format('yes' if self.minimal else 'no, at ' +
                                               ', '.join(self.offending_places or [])))
        if self.census is not None:
            lines.append("")
            if self.census:
                lines.extend(self._table(self.census, _CENSUS_COLUMNS))
                lines.append("{} singular points on {} singular fibers".format(
                    sum(row['singular_points'] for row in self.census),
                    sum(row['residue_degree'] for row in self.census)))
            else:
                lines.append("no singular fibers")
        if self.summary is not None:
            s = self.summary
            lines.append("")
            lines.append("beta = {}, r = A.E = {}, A^2 = {}, chi(Omega^1 (x) A) = {}".format(
                s['beta'], s['r'], s['A_sq'], s['chi']))
            lines.append("fiber types: {}".format(
                'unknown' if s['types_present'] is None else ', '.join(s['types_present']) or 'none of II, III, IV'))
            lines.append("certified: {}".format(', '.join(s['facts']) or 'nothing'))
        if self.verdict is not None:
            v = self.verdict
            lines.append("")
            lines.append("H^1(X, Omega^1 (x) A): {}".format(v['h1_state']))
            if v.get('bott_state') is not None:
                lines.append("Bott vanishing: {}".format(v['description']))
            consulted = ', '.join('{} = {}'.format(k, val) for k, val in sorted(v['consulted'].items()))
            lines.append("consulted: {}".format(consulted))
            for entry in v['trace']:
                lines.append("  [{}] {}".format(entry['rule'], entry['statement']))
                if entry.get('note'):
                    lines.append("      note: {}".format(entry['note']))
            for note in v.get('notes', []):
                lines.append("note: {}".format(note))
        if self.lemma_rows is not None:
            lines.append("")
            lines.extend(self._table(self.lemma_rows, _LEMMA_COLUMNS))
            failed = [row for row in self.lemma_rows if not row['passed']]
            lines.append("{} of {} cases passed".format(len(self.lemma_rows) - len(failed), len(self.lemma_rows)))
        for warning in self.warnings:
            lines.append("warning: {}".format(warning))
        return '\n'.join(lines)
