"""
Command line interface: ``ellbott <command> ...``

Commands
--------
classify <file>
    Kodaira census of a Weierstrass model file.
analyze <file>
    Full Bott vanishing verdict for a model file.
family --kind <kind> ...
    Same as analyze, with the model given on the command line.
verify-lemmas
    Run the local oracle suites.
batch <dir>
    Analyze every model file in a directory.

Exit codes are 0 on success, 65 for an unreadable model file, 66 for a model
outside the supported hypotheses and 70 for internal failures (including oracle
disagreements in verify-lemmas).
"""

import argparse
import glob
import json
import logging
import multiprocessing
import os
import sys

from astropy.table import Table

from . import conf, __version__
from .exactpoly import IdenticallyZeroForm
from .weierstrass import (WeierstrassData, NotMinimal, NonReducedFiber, IdenticallyZeroDiscriminant,
                          classify_fibers, is_minimal, section_example, REDUCED_SINGULAR_TYPES)
from .localgeom import UnsupportedSplit, verify_lemmas
from .intersect import DegreeMismatch
from .families import (WeierstrassSection, DoubleCover, Hypersurface, CompleteIntersection, DeclaredSummary,
                       AmplenessRangeViolated, H0_GAP_EQUALS_R, build_summary)
from .criteria import InconsistentSummary, decide_bott
from .report import Report, census_rows, summary_record

__all__ = ['main', 'ModelFile', 'ModelFileError', 'cmd_classify', 'cmd_analyze', 'cmd_family',
           'cmd_verify_lemmas', 'cmd_batch', 'exit_code_for', 'EXIT_OK', 'EXIT_PARSE', 'EXIT_MODEL',
           'EXIT_INTERNAL']

_log = logging.getLogger('ellbott')

EXIT_OK = 0
EXIT_PARSE = 65
EXIT_MODEL = 66
EXIT_INTERNAL = 70

MODEL_ERRORS = (NotMinimal, NonReducedFiber, IdenticallyZeroDiscriminant, IdenticallyZeroForm,
                AmplenessRangeViolated, InconsistentSummary, UnsupportedSplit, DegreeMismatch)

FAMILY_KINDS = ('weierstrass', 'double_cover', 'hypersurface', 'complete_intersection')
MODEL_KINDS = FAMILY_KINDS + ('declared_summary',)

# required and optional keys besides 'kind'
_MODEL_KEYS = {
    'weierstrass': ({'beta', 'lambda', 'mu'}, {'m'}),
    'double_cover': ({'l', 'm'}, {'declared_types'}),
    'hypersurface': ({'a', 'm'}, {'declared_types'}),
    'complete_intersection': ({'a', 'b', 'm'}, {'declared_types'}),
    'declared_summary': ({'beta', 'r', 'A_sq'}, {'declared_types'}),
}


class ModelFileError(ValueError):
    pass


def exit_code_for(err):
    """Exit code for an exception raised while running a command."""
    if isinstance(err, ModelFileError):
        return EXIT_PARSE
    if isinstance(err, MODEL_ERRORS):
        return EXIT_MODEL
    return EXIT_INTERNAL


def _int_field(data, key):
    value = data[key]
    if not isinstance(value, int) or isinstance(value, bool):
        raise ModelFileError("Model key {!r} must be an integer, got {!r}".format(key, value))
    return value


class ModelFile(object):
    """ Parsed model file: a flat JSON object with a ``kind`` key.

    Coefficient lists (``lambda``, ``mu``) are affine coefficients, low to high in t,
    given as integers or "p/q" strings; the form degrees come from ``beta``.
    ``declared_types`` lists the additive fiber types (II, III, IV) known to occur;
    leaving it out means nothing is known about the fibers.
    """

    def __init__(self, data, path=None):
        if not isinstance(data, dict):
            raise ModelFileError("Model file must contain a JSON object, got {}".format(type(data).__name__))
        kind = data.get('kind')
        if kind not in MODEL_KINDS:
            raise ModelFileError("Model kind must be one of {}, got {!r}".format(', '.join(MODEL_KINDS), kind))
        required, optional = _MODEL_KEYS[kind]
        keys = set(data) - {'kind'}
        missing = required - keys
        if missing:
            raise ModelFileError("Model of kind {} is missing {}".format(kind, ', '.join(sorted(missing))))
        unknown = keys - required - optional
        if unknown:
            raise ModelFileError("Model of kind {} has unknown keys {}".format(kind, ', '.join(sorted(unknown))))
        self.kind = kind
        self.data = dict(data)
        self.path = path
        # validate eagerly so parse errors never surface as model errors
        if kind == 'weierstrass':
            self.weierstrass_data()
        else:
            self.family_spec()

    @classmethod
    def load(cls, path):
        try:
            with open(path) as f:
                data = json.load(f)
        except (OSError, ValueError) as err:
            raise ModelFileError("Could not read model file {}: {}".format(path, err))
        return cls(data, path=path)

    def declared_types(self):
        types = self.data.get('declared_types')
        if types is None:
            return None
        if not isinstance(types, list) or not all(isinstance(t, str) for t in types):
            raise ModelFileError("declared_types must be a list of type names, got {!r}".format(types))
        unknown = set(types) - set(REDUCED_SINGULAR_TYPES)
        if unknown:
            raise ModelFileError("declared_types must be among {}, got {}".format(
                ', '.join(REDUCED_SINGULAR_TYPES), ', '.join(sorted(unknown))))
        return frozenset(types)

    def weierstrass_data(self):
        if self.kind != 'weierstrass':
            raise ModelFileError("Model of kind {} has no Weierstrass data".format(self.kind))
        beta = _int_field(self.data, 'beta')
        lambda_coefficients, mu_coefficients = self.data['lambda'], self.data['mu']
        for key, value in (('lambda', lambda_coefficients), ('mu', mu_coefficients)):
            if not isinstance(value, list):
                raise ModelFileError("Model key {!r} must be a list of coefficients, got {!r}".format(key, value))
        try:
            return WeierstrassData.from_coefficients(beta, lambda_coefficients, mu_coefficients)
        except MODEL_ERRORS:
            raise
        except (ValueError, TypeError) as err:
            raise ModelFileError("Invalid Weierstrass data: {}".format(err))

    def family_spec(self):
        """The `FamilySpec` described by the file; Weierstrass files need ``m``."""
        data = self.data
        try:
            if self.kind == 'weierstrass':
                if 'm' not in data:
                    raise ModelFileError("Analyzing a weierstrass model needs the polarization key 'm'")
                return WeierstrassSection(self.weierstrass_data(), _int_field(data, 'm'))
            if self.kind == 'double_cover':
                return DoubleCover(_int_field(data, 'l'), _int_field(data, 'm'), self.declared_types())
            if self.kind == 'hypersurface':
                return Hypersurface(_int_field(data, 'a'), _int_field(data, 'm'), self.declared_types())
            if self.kind == 'complete_intersection':
                return CompleteIntersection(_int_field(data, 'a'), _int_field(data, 'b'), _int_field(data, 'm'),
                                            self.declared_types())
            return DeclaredSummary(_int_field(data, 'beta'), _int_field(data, 'r'), _int_field(data, 'A_sq'),
                                   self.declared_types())
        except (ModelFileError,) + MODEL_ERRORS:
            raise
        except (ValueError, TypeError) as err:
            raise ModelFileError("Invalid {} model: {}".format(self.kind, err))


def _relied_upon(summary, verdict):
    """Warnings for the places where a computed value follows a proof rather than a stated formula."""
    kind = summary.origin.get('kind')
    warnings = []
    if kind == 'hypersurface':
        warnings.append("A^2 = 6m + a (the value obtained in the cohomology ring of P^1 x P^2) is used, not 6 + a")
    elif kind == 'complete_intersection':
        warnings.append("A^2 = 2a + 2b + 8m (the value obtained in the cohomology ring of P^1 x P^3) is used, "
                        "not 2a + 2b + 8")
    if kind == 'hypersurface' and H0_GAP_EQUALS_R in summary.facts and any(
            entry['rule'] == 'ConverseWithH0Gap' for entry in verdict['trace']):
        warnings.append("h^0(L - E) = 3(m - 11 beta + 1) is read as the count one twist below L")
    for message in warnings:
        _log.warning(message)
    return warnings


def _failure_report(command, source, err):
    code = exit_code_for(err)
    if code == EXIT_INTERNAL and not isinstance(err, RuntimeError):
        _log.exception("Unexpected error in {}".format(command))
    else:
        _log.error(str(err))
    report = Report(command, source=source, exit_code=code, error=str(err))
    if isinstance(err, NotMinimal):
        report.minimal = False
        report.offending_places = [str(p) for p in err.places]
    return report


def _analyze_model(command, model):
    spec = model.family_spec()
    summary = build_summary(spec)
    verdict = decide_bott(summary).to_dict()
    census = census_rows(summary.census) if summary.census_state == 'known' else None
    return Report(command, source=model.data, census=census, minimal=True if census is not None else None,
                  summary=summary_record(summary), verdict=verdict,
                  warnings=summary.warnings + _relied_upon(summary, verdict))


def cmd_classify(path):
    """ Census of the singular fibers of a Weierstrass model file.

    Returns
    -------
    Report
        With exit code 66 when the model is not minimal or has a non-reduced fiber.
    """
    source = None
    try:
        model = ModelFile.load(path)
        source = model.data
        if model.kind != 'weierstrass':
            raise ModelFileError("classify needs a weierstrass model, got kind {}".format(model.kind))
        w = model.weierstrass_data()
        minimal, offending = is_minimal(w)
        if not minimal:
            raise NotMinimal("Weierstrass data are not minimal at {}".format(', '.join(str(p) for p in offending)),
                             places=offending)
        census = classify_fibers(w)
        _log.info("{} singular points on {} singular fibers".format(census.singular_point_count(),
                                                                   sum(census.type_counts().values())))
        warnings = []
        if census.discriminant_degree() != 12 * w.beta:
            warnings.append("Sum of count*delta is {} instead of {}".format(census.discriminant_degree(),
                                                                            12 * w.beta))
        return Report('classify', source=source, census=census_rows(census), minimal=True, offending_places=[],
                      warnings=warnings)
    except Exception as err:
        return _failure_report('classify', source, err)


def cmd_analyze(path):
    """Full verdict for a model file; exit code 0 whatever the verdict."""
    source = None
    try:
        model = ModelFile.load(path)
        source = model.data
        return _analyze_model('analyze', model)
    except Exception as err:
        return _failure_report('analyze', source, err)


def cmd_family(kind, beta=None, example=False, l=None, a=None, b=None, m=None, types=None):
    """ Full verdict for a family given by its parameters.

    Parameters
    ----------
    kind : str
        One of weierstrass, double_cover, hypersurface, complete_intersection.
    beta : int, optional
        With ``example``, the Weierstrass model lambda = t^(4 beta), mu = t^(6 beta) + t.
    l, a, b, m : int, optional
        Family parameters.
    types : iterable of str, optional
        Additive fiber types declared present; None leaves the census unknown.
    """
    source = {'kind': kind}
    try:
        if kind == 'weierstrass':
            if not example or beta is None:
                raise ModelFileError("family --kind weierstrass needs --example and --beta")
            w = section_example(beta)
            source.update(beta=beta, m=m,
                          **{'lambda': [str(c) for c in w.lambda_.affine_part.coefficients],
                             'mu': [str(c) for c in w.mu.affine_part.coefficients]})
        else:
            parameters = {'double_cover': ('l',), 'hypersurface': ('a',), 'complete_intersection': ('a', 'b')}
            if kind not in parameters:
                raise ModelFileError("Unknown family kind {!r}".format(kind))
            given = {'l': l, 'a': a, 'b': b}
            for name in parameters[kind]:
                source[name] = given[name]
            source['m'] = m
            if types is not None:
                source['declared_types'] = sorted(types)
        model = ModelFile(source)
        return _analyze_model('family', model)
    except Exception as err:
        return _failure_report('family', source, err)


def cmd_verify_lemmas(max_n=None, max_degree=None):
    """Run the oracle suites; exit code 70 if any computed value disagrees with the expected table."""
    source = {'max_n': conf.verify_max_n if max_n is None else max_n,
              'max_degree': conf.verify_max_degree if max_degree is None else max_degree}
    try:
        rows = verify_lemmas(source['max_n'], source['max_degree'])
    except ValueError as err:
        return Report('verify-lemmas', source=source, exit_code=EXIT_PARSE, error=str(err))
    except Exception as err:
        return _failure_report('verify-lemmas', source, err)
    failed = [row for row in rows if not row['passed']]
    if failed:
        _log.error("{} oracle case(s) disagree with the expected values".format(len(failed)))
    return Report('verify-lemmas', source=source, lemma_rows=rows,
                  exit_code=EXIT_INTERNAL if failed else EXIT_OK)


def _wrap_analyze_for_multiprocessing(args):
    """ Internal helper for analyzing model files in worker processes.

    Configuration is not inherited by forkserver workers, so the relevant values
    are passed along with the path.
    """
    path, config_values = args
    for name, value in config_values.items():
        setattr(conf, name, value)
    return cmd_analyze(path)


def _model_paths(directory):
    paths = sorted(glob.glob(os.path.join(directory, '*.json')))
    return [p for p in paths if not p.endswith('.report.json')]


def cmd_batch(directory, write=False):
    """ Analyze every ``*.json`` model file in a directory.

    Returns
    -------
    list of (str, Report)
        Sorted by path. With ``write``, each report is also saved as
        ``<name>.report.json`` next to its model file.
    """
    if not os.path.isdir(directory):
        raise ModelFileError("Not a directory: {}".format(directory))
    paths = _model_paths(directory)
    if conf.use_multiprocessing and len(paths) > 1:
        nproc = conf.n_processes if conf.n_processes > 0 else multiprocessing.cpu_count()
        nproc = min(nproc, len(paths))
        ctx = multiprocessing.get_context('forkserver')
        pool = ctx.Pool(int(nproc))
        _log.info("Beginning multiprocessor job using {0} processes".format(nproc))
        config_values = {name: getattr(conf, name) for name in ('jacobian_initial_truncation',
                                                                 'jacobian_max_truncation', 'tangent_weights')}
        reports = pool.map(_wrap_analyze_for_multiprocessing, [(p, config_values) for p in paths])
        _log.info("Finished multiprocessor job")
        pool.close()
    else:
        reports = [cmd_analyze(p) for p in paths]

    results = list(zip(paths, reports))
    if write:
        for path, report in results:
            target = os.path.splitext(path)[0] + '.report.json'
            with open(target, 'w') as f:
                f.write(report.to_json())
            _log.debug("Wrote {}".format(target))
    return results


def _batch_table(results):
    names = [os.path.basename(p) for p, _ in results]
    codes = [str(r.exit_code) for _, r in results]
    outcomes = [r.verdict['description'] if r.verdict else (r.error or '') for _, r in results]
    table = Table([names, codes, outcomes], names=('file', 'exit_code', 'outcome'))
    return '\n'.join(table.pformat(max_lines=-1, max_width=-1))


def _types_argument(text):
    if text.strip().lower() in ('', 'none'):
        return frozenset()
    return frozenset(t.strip() for t in text.split(',') if t.strip())


def _build_parser():
    parser = argparse.ArgumentParser(prog='ellbott', description='Bott vanishing for elliptic surfaces')
    parser.add_argument('--version', action='version', version='%(prog)s {}'.format(__version__))
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument('-v', '--verbose', action='store_true', help='log computational detail')
    verbosity.add_argument('-q', '--quiet', action='store_true', help='only log warnings and errors')

    output = argparse.ArgumentParser(add_help=False)
    output.add_argument('--machine', action='store_true', help='print the report as JSON')

    commands = parser.add_subparsers(dest='command', metavar='command')
    commands.required = True

    classify = commands.add_parser('classify', parents=[output], help='census of a Weierstrass model file')
    classify.add_argument('file')

    analyze = commands.add_parser('analyze', parents=[output], help='Bott vanishing verdict for a model file')
    analyze.add_argument('file')

    family = commands.add_parser('family', parents=[output], help='Bott vanishing verdict for a family')
    family.add_argument('--kind', required=True, choices=FAMILY_KINDS)
    family.add_argument('--beta', type=int)
    family.add_argument('--example', action='store_true',
                        help='use the Weierstrass model lambda = t^(4 beta), mu = t^(6 beta) + t')
    family.add_argument('--l', type=int)
    family.add_argument('--a', type=int)
    family.add_argument('--b', type=int)
    family.add_argument('--m', type=int, required=True)
    family.add_argument('--types', type=_types_argument, default=None,
                        help='comma separated fiber types present (II, III, IV); "none" for none')

    verify = commands.add_parser('verify-lemmas', parents=[output], help='run the local oracle suites')
    verify.add_argument('--max-n', type=int, default=None)
    verify.add_argument('--max-degree', type=int, default=None)

    batch = commands.add_parser('batch', help='analyze every model file in a directory')
    batch.add_argument('directory')
    batch.add_argument('--write', action='store_true', help='write <name>.report.json next to each file')
    return parser


def main(argv=None):
    """Entry point of the ``ellbott`` command; returns the exit code."""
    parser = _build_parser()
    args = parser.parse_args(argv)

    if args.verbose:
        level = 'DEBUG'
    elif args.quiet:
        level = 'WARNING'
    else:
        level = conf.default_logging_level
    logging.basicConfig(format='%(levelname)s: %(message)s')
    _log.setLevel(level)

    if args.command == 'batch':
        try:
            results = cmd_batch(args.directory, write=args.write)
        except ModelFileError as err:
            _log.error(str(err))
            return EXIT_PARSE
        print(_batch_table(results))
        return max([r.exit_code for _, r in results], default=EXIT_OK)

    if args.command == 'classify':
        report = cmd_classify(args.file)
    elif args.command == 'analyze':
        report = cmd_analyze(args.file)
    elif args.command == 'family':
        report = cmd_family(args.kind, beta=args.beta, example=args.example, l=args.l, a=args.a, b=args.b,
                            m=args.m, types=args.types)
    else:
        report = cmd_verify_lemmas(args.max_n, args.max_degree)

    print(report.to_json() if args.machine else report.format_text())
    return report.exit_code


if __name__ == '__main__':
    sys.exit(main())
