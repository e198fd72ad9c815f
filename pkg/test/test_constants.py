from itertools import islice

import pytest
from hypothesis import given
import hypothesis.strategies as st

from centralshadow.core.errors import ConstantsInfeasible, InvalidInput
from centralshadow.core.linear import build_linear
from centralshadow.core.system import HyperbolicityData
from centralshadow.shadow.constants import RATE_MARGIN, choose_mu, \
    derive_constants, mu_candidates, rate_ratio


GOLDEN = (1 + 5 ** 0.5) / 2


def hyperbolicity(lam, L0, delta0=0.1):
    return HyperbolicityData(nu=1 / lam, nu_hat=1 / lam, gamma=1.0,
                             gamma_hat=1.0, lam=lam, L0=L0, delta0=delta0,
                             m=1, l=HyperbolicityData.minimal_power(lam, L0))


def test_cat_plus_identity():
    system = build_linear([[2, 1, 0], [1, 1, 0], [0, 0, 1]])
    constants = derive_constants(system.hyp, system.sup_derivative_norm())
    assert constants.mu == 0.1
    assert constants.R == pytest.approx(GOLDEN ** 2)
    assert constants.L == pytest.approx(2.0657, abs=1e-4)
    assert constants.L_cu == pytest.approx(31.9615, abs=1e-3)
    assert constants.L_cs == constants.L_cu
    assert constants.L_total == pytest.approx(35.1577, abs=1e-3)
    assert constants.d0 == pytest.approx(0.011981, abs=1e-6)
    assert set(constants.as_dict()) == {'mu', 'L', 'd0', 'R', 'L_cu',
                                        'L_cs', 'L1', 'L_total'}


def test_mu_candidates():
    assert list(islice(mu_candidates(), 6)) == \
        pytest.approx([0.5, 0.25, 0.1, 0.05, 0.025, 0.01])
    assert next(mu_candidates(0.3)) == 0.3


def test_choose_mu_falls_back():
    hyp = hyperbolicity(GOLDEN ** 2, 1.0)
    assert choose_mu(hyp, 0.1) == 0.1
    # (1.9)^2 / 2.618 misses the margin, (1.5)^2 / 2.618 does not
    assert choose_mu(hyp, 0.9) == 0.5
    assert rate_ratio(0.5, hyp) <= RATE_MARGIN


def test_infeasible():
    with pytest.raises(ConstantsInfeasible):
        derive_constants(hyperbolicity(1.5, 1.2), 2.0)


def test_bad_arguments():
    hyp = hyperbolicity(GOLDEN ** 2, 1.0)
    with pytest.raises(InvalidInput):
        derive_constants(hyp, 2.6, mu_hint=1.5)
    with pytest.raises(InvalidInput):
        derive_constants(hyp, 0.0)


@given(st.floats(min_value=2.5, max_value=50.0),
       st.floats(min_value=1.0, max_value=1.2),
       st.floats(min_value=1.0, max_value=10.0))
def test_derived_constants_hold_their_inequalities(lam, L0, R):
    hyp = hyperbolicity(lam, L0)
    c = derive_constants(hyp, R)
    assert rate_ratio(c.mu, hyp) <= RATE_MARGIN
    assert L0 * (1 + c.L * (1 + c.mu) / lam) * (1 + c.mu) < c.L
    assert 0 < c.d0 < hyp.delta0 / (2 * c.L)
    assert 4 * L0 * c.L * c.d0 < hyp.delta0
    assert c.L_total >= c.L1 >= c.L_cu
    assert c.L_total >= 2 * c.L + 4 * L0
