import json
import logging
import math
from typing import Dict, Optional

from .shadower import ShadowingResult


logger = logging.getLogger(__name__)


def _number(value):
    # JSON has no nan/inf
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def result_to_dict(result: ShadowingResult,
                   files: Optional[Dict[str, str]] = None) -> dict:
    """
    JSON-ready view of a shadowing run; trajectories are referenced by file
    name, not embedded.
    """
    return {
        'constants': result.constants.as_dict(),
        'd': result.d,
        'bound': result.bound,
        'l': result.l,
        'sup_dist': result.sup_dist,
        'max_central_jump': _number(result.max_central_jump),
        'certified': result.certified,
        'bound_violations': result.bound_violations,
        'diagnostics': list(result.diagnostics),
        'jumps': [{
            'k': j.k,
            'central_dist': _number(j.central_dist),
            'transversal_residual': _number(j.transversal_residual),
        } for j in result.jumps],
        'files': dict(files or {}),
    }


def write_json(data: dict, path) -> None:
    """sorted keys and a trailing newline, byte-stable for equal input"""
    with open(path, 'w', encoding='utf-8') as f:
        json.dump(data, f, indent=2, sort_keys=True, allow_nan=False)
        f.write('\n')
    logger.debug('wrote %s', path)


def write_report(result: ShadowingResult, path,
                 files: Optional[Dict[str, str]] = None) -> dict:
    data = result_to_dict(result, files)
    write_json(data, path)
    return data
