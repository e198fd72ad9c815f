"""
Command line driver.

    centralshadow constants --config exp.json
    centralshadow shadow --config exp.json --out results/
    centralshadow sweep --config exp.json --out results/ [--no-timestamp]
    centralshadow probe --config exp.json --out results/

Exit codes: 0 certified (or nothing to certify), 1 uncertified, 2 invalid
input.
"""
import argparse
import dataclasses
import json
import logging
import math
import pathlib
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np
import pandas

from ..core.errors import InvalidInput, ShadowingError, StepTooLarge
from ..core.system import SystemModel, system_power
from ..core.trajectory import CSV_FLOAT_FORMAT, write_csv
from ..shadow.constants import derive_constants
from ..shadow.probe import plaque_probe
from ..shadow.report import write_json, write_report
from ..shadow.shadower import CentralShadower, ExecutionRunsException, \
    ExecutionTimeException, reduce_power
from .config import ExperimentConfig, Generator, build_system, \
    build_trajectory, load_config
from .svg import Series, loglog_svg, write_svg


logger = logging.getLogger(__name__)

LOG_FORMAT = '%(asctime)s.%(msecs)03d [%(levelname)8s] ' \
    '(%(filename)s:%(lineno)s) %(message)s'
LOG_DATE_FORMAT = '%Y-%m-%d %H:%M:%S'

EXIT_OK = 0
EXIT_UNCERTIFIED = 1
EXIT_INVALID = 2

# a slope needs this many d values
MIN_SWEEP_POINTS = 4


def _admissible(system: SystemModel, mu_hint):
    """
    constants of the reduced system and the largest admissible one-step
    error of the original system
    """
    l = system.hyp.l
    power = system_power(system, l)
    constants = derive_constants(
        power.hyp, power.sup_derivative_norm(), mu_hint)
    R = system.sup_derivative_norm()
    d0 = constants.d0 / sum(R ** i for i in range(l))
    return power, constants, d0


def _check_d(d: float, d0: float):
    if d > d0:
        raise StepTooLarge(d, d0)


def _shadower(config: ExperimentConfig) -> CentralShadower:
    return CentralShadower(mu_hint=config.run.mu_hint,
                           time_limit=config.run.time_limit,
                           max_runs=config.run.max_runs)


def cmd_constants(config: ExperimentConfig, out: pathlib.Path,
                  timestamp: bool) -> int:
    system = build_system(config.system)
    power, constants, d0 = _admissible(system, config.run.mu_hint)
    s, c, u = system.dims
    data = {
        'kind': system.kind,
        'dims': {'s': s, 'c': c, 'u': u},
        'center_dim': c,
        'hyperbolicity': dataclasses.asdict(system.hyp),
        'power_hyperbolicity': dataclasses.asdict(power.hyp),
        'constants': constants.as_dict(),
        'admissible_d': d0,
    }
    if c == 0:
        data['note'] = 'no central direction, shadows are true orbits'
    print(json.dumps(data, indent=2, sort_keys=True))
    return EXIT_OK


def cmd_shadow(config: ExperimentConfig, out: pathlib.Path,
               timestamp: bool) -> int:
    system = build_system(config.system)
    traj = build_trajectory(system, config.trajectory)
    _check_d(traj.d, _admissible(system, config.run.mu_hint)[2])
    result = _shadower(config).shadow(system, traj)
    files = {'input': 'input.csv', 'output': 'output.csv'}
    write_csv(traj, out / files['input'])
    write_csv(result.y, out / files['output'])
    write_report(result, out / 'report.json', files)
    for message in result.diagnostics:
        logger.warning(message)
    return EXIT_OK if result.certified else EXIT_UNCERTIFIED


def sweep_row(config: ExperimentConfig, d: float) -> dict:
    """one sweep run, same seed for every d"""
    system = build_system(config.system)
    traj = build_trajectory(system, config.trajectory, d=d)
    result = _shadower(config).shadow(system, traj)
    logger.info('sweep row d=%.3g sup_dist=%.6g certified=%s', d,
                result.sup_dist, result.certified)
    return {
        'd': d,
        'sup_dist': result.sup_dist,
        'max_central_jump': result.max_central_jump,
        'bound': result.bound,
        'certified': result.certified,
    }


def fit_slope(frame: pandas.DataFrame) -> float:
    """least squares slope of log sup_dist over log d (certified rows)"""
    rows = frame[frame['certified'] & (frame['sup_dist'] > 0)]
    if len(rows) < 2:
        return float('nan')
    slope, _ = np.polyfit(np.log(rows['d']), np.log(rows['sup_dist']), 1)
    return float(slope)


def cmd_sweep(config: ExperimentConfig, out: pathlib.Path,
              timestamp: bool) -> int:
    d_list = config.trajectory.d_list or []
    if len(d_list) < MIN_SWEEP_POINTS:
        raise InvalidInput(
            f'a sweep needs at least {MIN_SWEEP_POINTS} d values, got '
            f'{len(d_list)}')
    if any(d <= 0 for d in d_list):
        raise InvalidInput('sweep d values must be positive')
    if config.trajectory.generator != Generator.noisy:
        raise InvalidInput('sweeps scale the noise of the noisy generator')
    system = build_system(config.system)
    _, constants, d0 = _admissible(system, config.run.mu_hint)
    for d in d_list:
        _check_d(d, d0)

    if config.run.workers > 1:
        with ProcessPoolExecutor(max_workers=config.run.workers) as executor:
            rows = list(executor.map(sweep_row, [config] * len(d_list),
                                     d_list))
    else:
        rows = [sweep_row(config, d) for d in d_list]
    frame = pandas.DataFrame(rows).sort_values('d').reset_index(drop=True)
    frame.to_csv(out / 'sweep.csv', index=False,
                 float_format=CSV_FLOAT_FORMAT, lineterminator='\n')

    slope = fit_slope(frame)
    summary = {
        'slope': slope if math.isfinite(slope) else None,
        'L_total': constants.L_total,
        'rows': len(frame),
        'certified_rows': int(frame['certified'].sum()),
        'files': {'table': 'sweep.csv', 'plot': 'sweep.svg'},
    }
    write_json(summary, out / 'sweep.json')

    certified = frame[frame['certified']]
    series = [Series('sup dist(x_k, y_k)', frame['d'].tolist(),
                     frame['sup_dist'].tolist()),
              Series('certified bound', certified['d'].tolist(),
                     certified['bound'].tolist(), dashed=True,
                     markers=False)]
    write_svg(loglog_svg(series, title=f'Lipschitz sweep, slope {slope:.4f}',
                         x_label='pseudotrajectory error d',
                         y_label='shadowing distance', timestamp=timestamp),
              out / 'sweep.svg')
    logger.info('sweep slope %.6f over %d certified rows', slope,
                len(certified))
    print(json.dumps(summary, indent=2, sort_keys=True))
    return EXIT_OK if len(certified) == len(frame) else EXIT_UNCERTIFIED


def cmd_probe(config: ExperimentConfig, out: pathlib.Path,
              timestamp: bool) -> int:
    system = build_system(config.system)
    traj = build_trajectory(system, config.trajectory)
    power, work = reduce_power(system, traj)
    constants = derive_constants(
        power.hyp, power.sup_derivative_norm(), config.run.mu_hint)
    if config.run.probe_seeds is not None:
        seeds = config.run.probe_seeds
    else:
        axis = np.zeros(system.dims[0])
        axis[0] = 1.0
        seeds = [f * constants.L * work.d * axis
                 for f in config.run.probe_fractions]
    report = plaque_probe(system, traj, seeds, mu_hint=config.run.mu_hint)
    write_json(report.as_dict(), out / 'probe.json')
    return EXIT_OK


COMMANDS = {
    'constants': cmd_constants,
    'shadow': cmd_shadow,
    'sweep': cmd_sweep,
    'probe': cmd_probe,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='centralshadow',
        description='Lipschitz central shadowing experiments on the torus')
    parser.add_argument('command', choices=sorted(COMMANDS))
    parser.add_argument('--config', required=True,
                        help='JSON experiment configuration')
    parser.add_argument('--out', default='.',
                        help='output directory (created if missing)')
    parser.add_argument('--no-timestamp', action='store_true',
                        help='omit the generation comment from SVG plots')
    parser.add_argument('-v', '--verbose', action='store_true',
                        help='debug logging')
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format=LOG_FORMAT, datefmt=LOG_DATE_FORMAT)
    try:
        config = load_config(args.config)
        out = pathlib.Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        return COMMANDS[args.command](config, out, not args.no_timestamp)
    except (ExecutionTimeException, ExecutionRunsException) as e:
        logger.error('%s', e)
        return EXIT_UNCERTIFIED
    except ShadowingError as e:
        logger.error('%s: %s', e.__class__.__name__, e)
        print(f'error: {e}', file=sys.stderr)
        return EXIT_INVALID


def run():
    sys.exit(main())


if __name__ == '__main__':
    run()
