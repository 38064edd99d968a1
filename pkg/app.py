"""Command-line entrypoint.

Subcommands:
- `dim`     nullity of L^{n,S} on P^[d] against the closed form (exit 2 on mismatch)
- `basis`   canonical basis of the harmonic (or n-harmonic) polynomials
- `verify`  one of the verification suites in `suites.py` (exit 2 if any row fails)
- `measure` sweep a constant of the analytic inequalities over radii
- `solve`   Dirichlet problem on a ball with boundary values from a JSON file
- `volume`  ball volumes and doubling ratios

Reports go to stdout (or `--out`) as JSON or CSV; logs go to stderr. Exit codes: 0 success,
1 invalid input or budget, 2 internal consistency failure.

Run:
    python app.py dim --rank 2 --degree 2 --gens standard
    python app.py verify --suite theorem1_4 --max-rank 3 --max-degree 4
    python app.py measure --kind harnack --rank 2 --radius-sweep 2,4,8 --trials 50 --seed 7
"""

import argparse
from dataclasses import dataclass, field
from fractions import Fraction
import json
import logging
import sys

import pandas as pd

from analysis import KINDS, measure, solve_dirichlet
from cayley import ball, measure_volume_doubling
from config import Config
from data.gens_loader import load_generating_set
from exceptions import ConsistencyError, GroupError, HarmonicError
from laplace import harmonic_space_dimension
from models.group import make_group, require_valid
from suites import SUITES, SuiteLimits, verify_suite

logger = logging.getLogger(__name__)

RANDOMIZED_SUITES = {'bochner', 'maximum_principle'}


def _int_list(text):
    try:
        return tuple(int(v) for v in text.split(',') if v.strip())
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from e


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    rank: int = 0
    torsion: tuple = ()
    gens: str = 'standard'
    symmetrize: bool = False
    degree: float = 0.0
    order: int = 1
    radii: tuple = ()
    radius: int = 1
    center: str = None
    boundary: str = None
    outer_factor: int = 4
    trials: int = 50
    seed: int = None
    kind: str = 'harnack'
    suite: str = None
    limits: SuiteLimits = field(default_factory=SuiteLimits)
    with_basis: bool = False
    output_format: str = 'json'
    out: str = None

    @classmethod
    def from_args(cls, args):
        limits = SuiteLimits()
        if args.subcommand == 'verify':
            limits = SuiteLimits(
                max_rank=args.max_rank,
                max_degree=args.max_degree,
                max_order=args.max_order,
                samples=args.samples,
                seed=7 if args.seed is None else args.seed,
            )
        return cls(
            subcommand=args.subcommand,
            rank=getattr(args, 'rank', 0),
            torsion=getattr(args, 'torsion', ()),
            gens=getattr(args, 'gens', 'standard'),
            symmetrize=getattr(args, 'symmetrize', False),
            degree=getattr(args, 'degree', 0.0),
            order=getattr(args, 'order', 1),
            radii=getattr(args, 'radius_sweep', ()),
            radius=getattr(args, 'radius', 1),
            center=getattr(args, 'center', None),
            boundary=getattr(args, 'boundary', None),
            outer_factor=getattr(args, 'outer_factor', 4),
            trials=getattr(args, 'trials', 50),
            seed=getattr(args, 'seed', None),
            kind=getattr(args, 'kind', 'harnack'),
            suite=getattr(args, 'suite', None),
            limits=limits,
            with_basis=getattr(args, 'with_basis', False),
            output_format=args.format,
            out=args.out,
        )


def build_parser():
    parser = argparse.ArgumentParser(description="Harmonic functions on Cayley graphs of abelian groups")
    sub = parser.add_subparsers(dest='subcommand', required=True)

    def add_output(p):
        p.add_argument('--format', choices=['json', 'csv'], default='json')
        p.add_argument('--out', default=None, help="write the report here instead of stdout")

    def add_group(p):
        p.add_argument('--rank', type=int, default=0, help="free rank m")
        p.add_argument('--torsion', type=_int_list, default=(), help="torsion orders q1,q2,...")
        p.add_argument('--gens', default='standard', help="JSON generating-set file or 'standard'")
        p.add_argument('--symmetrize', action='store_true', help="file lists s_1..s_l'; append negations")

    for name in ('dim', 'basis'):
        p = sub.add_parser(name)
        add_group(p)
        p.add_argument('--degree', type=float, required=True, help="growth order d (k = floor(d))")
        p.add_argument('--order', type=int, default=1, help="power n of the Laplacian")
        if name == 'dim':
            p.add_argument('--with-basis', action='store_true')
        add_output(p)

    p = sub.add_parser('verify')
    p.add_argument('--suite', choices=sorted(SUITES), required=True)
    p.add_argument('--max-rank', type=int, default=2)
    p.add_argument('--max-degree', type=int, default=4)
    p.add_argument('--max-order', type=int, default=2)
    p.add_argument('--samples', type=int, default=100)
    p.add_argument('--seed', type=int, default=None)
    add_output(p)

    p = sub.add_parser('measure')
    add_group(p)
    p.add_argument('--kind', choices=KINDS, required=True)
    p.add_argument('--radius-sweep', type=_int_list, required=True)
    p.add_argument('--outer-factor', type=int, default=4)
    p.add_argument('--trials', type=int, default=50)
    p.add_argument('--seed', type=int, default=None)
    add_output(p)

    p = sub.add_parser('solve')
    add_group(p)
    p.add_argument('--radius', type=int, required=True)
    p.add_argument('--center', default=None, help="center element as 'f1,f2|t1'")
    p.add_argument('--boundary', required=True, help="JSON map from element encoding to value")
    add_output(p)

    p = sub.add_parser('volume')
    add_group(p)
    p.add_argument('--radius-sweep', type=_int_list, required=True)
    add_output(p)
    return parser


def _group_and_generators(config):
    g = make_group(config.rank, config.torsion)
    s = load_generating_set(config.gens, g, symmetrize=config.symmetrize)
    require_valid(g, s)
    return g, s


def _plain(frame):
    """Fractions become strings so both writers accept the frame."""
    frame = frame.copy()
    for column in frame.columns:
        frame[column] = frame[column].map(lambda v: str(v) if isinstance(v, Fraction) else v)
    return frame


def _boundary_value(key, value):
    if isinstance(value, bool):
        raise GroupError(f"boundary value at {key!r} is not a number")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return value
    if isinstance(value, str):
        try:
            return Fraction(value)
        except ValueError as e:
            raise GroupError(f"boundary value at {key!r}: {e}") from e
    raise GroupError(f"boundary value at {key!r} is not a number")


def _load_boundary(path, g):
    try:
        with open(path) as handle:
            entries = json.load(handle)
    except (OSError, json.JSONDecodeError) as e:
        raise GroupError(f"cannot read boundary values from {path}: {e}") from e
    if not isinstance(entries, dict):
        raise GroupError("boundary file must be a JSON object")
    return {g.decode(key): _boundary_value(key, value) for key, value in entries.items()}


def _require_seed(config):
    if config.seed is None:
        raise GroupError(f"'{config.subcommand}' is randomized and needs an explicit --seed")


def _dimension(config):
    g, s = _group_and_generators(config)
    report = harmonic_space_dimension(g, s, config.degree, config.order)
    status = 0 if report.matches else 2
    if config.subcommand == 'basis':
        functions = report.kernel.functions
        if config.output_format == 'csv':
            return pd.DataFrame({'index': range(len(functions)), 'function': [str(f) for f in functions]}), status
        return {
            'group': g.to_dict(),
            'degree': report.degree,
            'order': report.order,
            'dimension': report.computed_dim,
            'basis': [str(f) for f in functions],
            'coefficients': report.kernel.to_dict(),
        }, status
    payload = report.to_dict(with_basis=config.with_basis)
    payload = {'m': payload.pop('m'), 'torsion': payload.pop('torsion'), 'generators': config.gens, **payload}
    if config.output_format == 'csv':
        payload = pd.DataFrame([{k: v for k, v in payload.items() if k != 'basis'}])
    return payload, status


def _verify(config):
    if config.suite in RANDOMIZED_SUITES:
        _require_seed(config)
    table = verify_suite(config.suite, config.limits)
    failures = int((~table['passed']).sum()) if len(table) else 0
    if failures:
        logger.error(f"suite {config.suite}: {failures} of {len(table)} rows failed")
    return table, 2 if failures else 0


def _measure(config):
    _require_seed(config)
    g, s = _group_and_generators(config)
    report = measure(config.kind, g, s, config.radii, config.outer_factor, config.trials, config.seed)
    return (report.to_frame() if config.output_format == 'csv' else report.to_dict()), 0


def _solve(config):
    g, s = _group_and_generators(config)
    center = g.zero() if config.center is None else g.decode(config.center)
    region = ball(g, s, center, config.radius)
    solution = solve_dirichlet(g, s, region, _load_boundary(config.boundary, g))
    values = solution.to_dict()
    if config.output_format == 'csv':
        return pd.DataFrame({'element': list(values), 'value': list(values.values())}), 0
    return {'group': g.to_dict(), 'ball': region.to_dict(), 'exact': solution.exact, 'values': values}, 0


def _volume(config):
    g, s = _group_and_generators(config)
    table = measure_volume_doubling(g, s, config.radii)
    return table, 0


HANDLERS = {
    'dim': _dimension,
    'basis': _dimension,
    'verify': _verify,
    'measure': _measure,
    'solve': _solve,
    'volume': _volume,
}


def _render(result, output_format):
    if isinstance(result, pd.DataFrame):
        frame = _plain(result)
        if output_format == 'csv':
            return frame.to_csv(index=False)
        return frame.to_json(orient='records', indent=2) + '\n'
    return json.dumps(result, indent=2, default=str) + '\n'


def run(config, stream=None):
    """Execute one RunConfig; returns the exit status."""
    stream = sys.stdout if stream is None else stream
    try:
        result, status = HANDLERS[config.subcommand](config)
    except ConsistencyError as e:
        logger.error(f"consistency failure: {e}")
        return 2
    except HarmonicError as e:
        logger.error(f"{config.subcommand}: {e}")
        return 1
    text = _render(result, config.output_format)
    if config.out:
        with open(config.out, 'w') as handle:
            handle.write(text)
        logger.info(f"Report written to {config.out}")
    else:
        stream.write(text)
    return status


def main(argv=None):
    logging.basicConfig(level=Config.LOG_LEVEL, stream=sys.stderr)
    args = build_parser().parse_args(argv)
    try:
        config = RunConfig.from_args(args)
    except HarmonicError as e:
        logger.error(f"{args.subcommand}: {e}")
        return 1
    return run(config)


if __name__ == '__main__':
    sys.exit(main())
