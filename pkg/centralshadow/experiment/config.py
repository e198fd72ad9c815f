"""
Strict JSON experiment configuration.

A config document has three sections:

    {
      "system": {"kind": "linear", "matrix": [[2, 1, 0], [1, 1, 0], [0, 0, 1]]},
      "trajectory": {"x0": [0.1, 0.2, 0.3], "N": 500, "d": 1e-5, "seed": 7},
      "run": {"mu_hint": 0.1}
    }

Numbers may be given as JSON numbers or decimal strings. Unknown keys are
rejected.
"""
import dataclasses
import json
import math
from typing import List, Optional

from ..core.errors import ConfigError
from ..core.linear import build_linear
from ..core.skew_product import build_skew_product
from ..core.system import DELTA0, SERIES_TOL, SystemKind, SystemModel
from ..core.torus import wrap
from ..core.trajectory import Pseudotrajectory, generate_noisy, \
    generate_rounded


class Generator:
    noisy = 'noisy'
    rounded = 'rounded'


@dataclasses.dataclass(frozen=True)
class SystemSpec:
    kind: str
    matrix: Optional[List[List[int]]] = None
    base_matrix: Optional[List[List[int]]] = None
    c0: float = 0.0
    c1: float = 0.0
    series_tol: float = SERIES_TOL
    delta0: float = DELTA0


@dataclasses.dataclass(frozen=True)
class TrajectorySpec:
    x0: List[float]
    N: int
    generator: str = Generator.noisy
    d: Optional[float] = None
    d_list: Optional[List[float]] = None
    grid: Optional[float] = None
    seed: int = 0


@dataclasses.dataclass(frozen=True)
class RunSpec:
    mu_hint: Optional[float] = None
    workers: int = 1
    time_limit: float = float('inf')
    max_runs: float = float('inf')
    # absolute initial stable corrections for the probe
    probe_seeds: Optional[List[List[float]]] = None
    # or fractions of L d along the first stable chart axis
    probe_fractions: List[float] = (0.0, 0.5)


@dataclasses.dataclass(frozen=True)
class ExperimentConfig:
    system: SystemSpec
    trajectory: TrajectorySpec
    run: RunSpec = dataclasses.field(default_factory=RunSpec)


def _number(value, key):
    if isinstance(value, bool):
        raise ConfigError(f'{key}: expected a number, got {value!r}')
    if isinstance(value, (int, float)):
        return float(value)
    if isinstance(value, str):
        try:
            return float(value)
        except ValueError:
            pass
    raise ConfigError(f'{key}: expected a number, got {value!r}')


def _finite(value, key):
    value = _number(value, key)
    if not math.isfinite(value):
        raise ConfigError(f'{key}: expected a finite number, got {value!r}')
    return value


def _integer(value, key):
    number = _finite(value, key)
    if number != int(number):
        raise ConfigError(f'{key}: expected an integer, got {value!r}')
    return int(number)


def _vector(value, key):
    if not isinstance(value, list) or not value:
        raise ConfigError(f'{key}: expected a non-empty list')
    return [_finite(v, f'{key}[{i}]') for i, v in enumerate(value)]


def _matrix(value, key):
    if not isinstance(value, list) or not value:
        raise ConfigError(f'{key}: expected a list of rows')
    rows = []
    for i, row in enumerate(value):
        if not isinstance(row, list):
            raise ConfigError(f'{key}[{i}]: expected a row')
        rows.append([_integer(v, f'{key}[{i}][{j}]')
                     for j, v in enumerate(row)])
    return rows


def _section(data, name, known, required=()):
    if not isinstance(data, dict):
        raise ConfigError(f'{name}: expected an object')
    unknown = sorted(set(data) - set(known))
    if unknown:
        raise ConfigError(f'{name}: unknown keys {", ".join(unknown)}')
    missing = [k for k in required if k not in data]
    if missing:
        raise ConfigError(f'{name}: missing keys {", ".join(missing)}')
    return data


def _parse_system(data) -> SystemSpec:
    _section(data, 'system', ('kind', 'matrix', 'base_matrix', 'c0', 'c1',
                              'series_tol', 'delta0'), ('kind',))
    kind = data['kind']
    if kind == SystemKind.linear:
        if 'matrix' not in data:
            raise ConfigError('system: linear systems need a matrix')
        extra = {'base_matrix', 'c0', 'c1', 'series_tol'} & set(data)
        if extra:
            raise ConfigError(
                f'system: keys {", ".join(sorted(extra))} only apply to '
                f'skew products')
    elif kind == SystemKind.skew_product:
        if 'base_matrix' not in data:
            raise ConfigError('system: skew products need a base_matrix')
        if 'matrix' in data:
            raise ConfigError('system: skew products take base_matrix')
    else:
        raise ConfigError(f'system: unknown kind {kind!r}')
    return SystemSpec(
        kind=kind,
        matrix=_matrix(data['matrix'], 'system.matrix')
        if 'matrix' in data else None,
        base_matrix=_matrix(data['base_matrix'], 'system.base_matrix')
        if 'base_matrix' in data else None,
        c0=_finite(data.get('c0', 0.0), 'system.c0'),
        c1=_finite(data.get('c1', 0.0), 'system.c1'),
        series_tol=_finite(data.get('series_tol', SERIES_TOL),
                           'system.series_tol'),
        delta0=_finite(data.get('delta0', DELTA0), 'system.delta0'))


def _parse_trajectory(data) -> TrajectorySpec:
    _section(data, 'trajectory', ('x0', 'N', 'generator', 'd', 'd_list',
                                  'grid', 'seed'), ('x0', 'N'))
    generator = data.get('generator', Generator.noisy)
    if generator not in (Generator.noisy, Generator.rounded):
        raise ConfigError(f'trajectory: unknown generator {generator!r}')
    if generator == Generator.rounded and 'grid' not in data:
        raise ConfigError('trajectory: the rounded generator needs a grid')
    d_list = data.get('d_list')
    return TrajectorySpec(
        x0=_vector(data['x0'], 'trajectory.x0'),
        N=_integer(data['N'], 'trajectory.N'),
        generator=generator,
        d=_finite(data['d'], 'trajectory.d') if 'd' in data else None,
        d_list=_vector(d_list, 'trajectory.d_list')
        if d_list is not None else None,
        grid=_finite(data['grid'], 'trajectory.grid')
        if 'grid' in data else None,
        seed=_integer(data.get('seed', 0), 'trajectory.seed'))


def _parse_run(data) -> RunSpec:
    _section(data, 'run', ('mu_hint', 'workers', 'time_limit', 'max_runs',
                           'probe_seeds', 'probe_fractions'))
    seeds = data.get('probe_seeds')
    if seeds is not None:
        if not isinstance(seeds, list) or not seeds:
            raise ConfigError('run.probe_seeds: expected a list of vectors')
        seeds = [_vector(s if isinstance(s, list) else [s],
                         f'run.probe_seeds[{i}]')
                 for i, s in enumerate(seeds)]
    fractions = data.get('probe_fractions')
    return RunSpec(
        mu_hint=_finite(data['mu_hint'], 'run.mu_hint')
        if 'mu_hint' in data else None,
        workers=_integer(data.get('workers', 1), 'run.workers'),
        time_limit=_number(data.get('time_limit', float('inf')),
                           'run.time_limit'),
        max_runs=_number(data.get('max_runs', float('inf')), 'run.max_runs'),
        probe_seeds=seeds,
        probe_fractions=_vector(fractions, 'run.probe_fractions')
        if fractions is not None else RunSpec.probe_fractions)


def parse_config(data) -> ExperimentConfig:
    _section(data, 'config', ('system', 'trajectory', 'run'),
             ('system', 'trajectory'))
    return ExperimentConfig(
        system=_parse_system(data['system']),
        trajectory=_parse_trajectory(data['trajectory']),
        run=_parse_run(data.get('run', {})))


def load_config(path) -> ExperimentConfig:
    try:
        with open(path, encoding='utf-8') as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise ConfigError(f'{path}: invalid JSON ({e})')
    except OSError as e:
        raise ConfigError(f'{path}: {e.strerror}')
    return parse_config(data)


def build_system(spec: SystemSpec) -> SystemModel:
    if spec.kind == SystemKind.linear:
        return build_linear(spec.matrix, delta0=spec.delta0)
    return build_skew_product(spec.base_matrix, c0=spec.c0, c1=spec.c1,
                              series_tol=spec.series_tol,
                              delta0=spec.delta0)


def build_trajectory(system: SystemModel, spec: TrajectorySpec,
                     d: Optional[float] = None) -> Pseudotrajectory:
    """
    generate the pseudotrajectory of the spec, with d overriding spec.d
    """
    x0 = wrap(spec.x0)
    if spec.generator == Generator.rounded:
        return generate_rounded(system, x0, spec.N, spec.grid)
    d = spec.d if d is None else d
    if d is None:
        raise ConfigError('trajectory: the noisy generator needs d')
    return generate_noisy(system, x0, spec.N, d, seed=spec.seed)
