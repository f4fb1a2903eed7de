"""Exact Schur polynomial evaluation on almost-staircase partitions, the
asymptotic limit functional, and desk-scale verification campaigns."""

__version__ = "0.1.0"

from .asymptotics import (
    F_eval,
    Q_eval,
    Q_prime,
    SaddleResult,
    critical_point,
    delta_eps,
    g_eval,
    steepest_value,
    theorem_limit,
)
from .campaigns import CAMPAIGN_NAMES, CampaignReport, run_campaign
from .config import CampaignConfig, ConfigError, load_config, parse_config
from .moments import (
    Contour,
    MomentProblem,
    default_contour,
    integrand,
    moment_quadrature,
    moment_residues,
    Qprime_kappa,
    validate_contour,
)
from .partitions import Partition, almost_staircase, staircase, validate
from .schur import (
    log_ratio_full,
    ratio_general,
    ratio_onerow,
    ratio_onerow_confluent,
    schur_bialternant,
    schur_confluent,
    schur_ssyt,
    staircase_product,
)
from .weights import (
    PerturbedSet,
    Profile,
    VariableSet,
    WeightSpectrum,
    discrepancy,
    f_profile,
    perturb,
    profile,
    realize,
    sorted_powers,
)

__all__ = [
    "__version__",
    "CAMPAIGN_NAMES",
    "CampaignConfig",
    "CampaignReport",
    "ConfigError",
    "Contour",
    "F_eval",
    "MomentProblem",
    "Partition",
    "PerturbedSet",
    "Profile",
    "Q_eval",
    "Q_prime",
    "Qprime_kappa",
    "SaddleResult",
    "VariableSet",
    "WeightSpectrum",
    "almost_staircase",
    "critical_point",
    "default_contour",
    "delta_eps",
    "discrepancy",
    "f_profile",
    "g_eval",
    "integrand",
    "load_config",
    "log_ratio_full",
    "moment_quadrature",
    "moment_residues",
    "parse_config",
    "perturb",
    "profile",
    "ratio_general",
    "ratio_onerow",
    "ratio_onerow_confluent",
    "realize",
    "run_campaign",
    "schur_bialternant",
    "schur_confluent",
    "schur_ssyt",
    "sorted_powers",
    "staircase",
    "staircase_product",
    "steepest_value",
    "theorem_limit",
    "validate",
    "validate_contour",
]
