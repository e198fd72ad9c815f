"""
Closed-form corrections of linear systems with one-dimensional strong
subbundles, summed directly. Used to cross-check the geometric passes.
"""
from typing import List, Sequence

from ..core.errors import InvalidInput


def linear_series_oracle(errors_s: Sequence[float],
                         mu_s: float) -> List[float]:
    """
    bounded solution of z_{k+1} = mu_s z_k - e_s(k) with z_0 = 0:

        z_k = - sum_{j=0}^{k-1} mu_s^j e_s(k-1-j)

    :param errors_s: stable coefficients e_s(0..N-1) of the one-step errors
    :param mu_s: stable eigenvalue, |mu_s| < 1
    :returns: z_0 .. z_N
    """
    if abs(mu_s) >= 1:
        raise InvalidInput(f'|mu_s| must be below 1, got {mu_s!r}')
    errors_s = [float(e) for e in errors_s]
    out = [0.0]
    for k in range(1, len(errors_s) + 1):
        total = 0.0
        for j in range(k):
            total += mu_s ** j * errors_s[k - 1 - j]
        out.append(-total)
    return out


def linear_backward_series_oracle(errors_u: Sequence[float],
                                  mu_u: float) -> List[float]:
    """
    bounded solution of z_k = (z_{k+1} + e_u(k)) / mu_u with z_N = 0:

        z_k = sum_{j=0}^{N-1-k} mu_u^-(j+1) e_u(k+j)
    """
    if abs(mu_u) <= 1:
        raise InvalidInput(f'|mu_u| must exceed 1, got {mu_u!r}')
    errors_u = [float(e) for e in errors_u]
    n = len(errors_u)
    out = []
    for k in range(n + 1):
        total = 0.0
        for j in range(n - k):
            total += errors_u[k + j] / mu_u ** (j + 1)
        out.append(total)
    return out
