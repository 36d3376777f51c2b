# Copyright cgnf developers.  See LICENSE file for details.

"""
Synthetic structural causal models with known ground-truth effects, and
estimators independent of any flow, used to check the flow-based ones.
"""

from ._mechanism import (
    NOISE, SynthError, MalformedScm, UnsupportedMechanism, Mechanism,
    parse_mechanism, NoiseDistribution, parse_noise,
)
from ._scm import (
    SyntheticScm, parse_scm, load_scm, sample_noise, propagate, sample_scm,
    intervened_scm, linear_system, analytic_covariance,
)
from ._oracle import (
    OracleMethod, OracleEffects, MONTE_CARLO_DRAWS, MAX_SUPPORT, MAX_STATES,
    oracle_potential_outcomes, oracle_effects,
)
from ._backdoor import (
    PositivityViolation, ContinuousAdjustment, adjustment_set, backdoor_ace,
)
from ._distance import EnergyTest, energy_distance, energy_test
from ._fixtures import (
    FIXTURES, FIXTURE_NAMES, UnknownFixture, fixture_path, load_fixture,
)

__all__ = [
    "NOISE", "SynthError", "MalformedScm", "UnsupportedMechanism",
    "Mechanism", "parse_mechanism", "NoiseDistribution", "parse_noise",
    "SyntheticScm", "parse_scm", "load_scm", "sample_noise", "propagate",
    "sample_scm", "intervened_scm", "linear_system", "analytic_covariance",
    "OracleMethod", "OracleEffects", "MONTE_CARLO_DRAWS", "MAX_SUPPORT",
    "MAX_STATES", "oracle_potential_outcomes", "oracle_effects",
    "PositivityViolation", "ContinuousAdjustment", "adjustment_set",
    "backdoor_ace", "EnergyTest", "energy_distance", "energy_test",
    "FIXTURES", "FIXTURE_NAMES", "UnknownFixture", "fixture_path",
    "load_fixture",
]
