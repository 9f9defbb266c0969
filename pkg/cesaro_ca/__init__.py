from cesaro_ca.blocking import (
    BlockingCertificate,
    ClassifyParams,
    EquicontinuityClass,
    EquicontinuityVerdict,
    FalsificationWitness,
    certify_block,
    certify_blocking,
    classify_equicontinuity,
    classify_equicontinuity_async,
    falsify_blocking,
    search_blocking_words,
    search_blocking_words_async,
)
from cesaro_ca.caps import DEFAULT_CAPS, Caps
from cesaro_ca.cesaro import (
    CesaroSeries,
    Convergence,
    PushforwardSnapshot,
    cesaro_mean,
    convergence_diagnostic,
    equicontinuous_cesaro_limit,
    pushforward_cylinder,
    pushforward_series,
    pushforward_snapshot,
)
from cesaro_ca.errors import (
    CapExceededError,
    CesaroCAError,
    EmptyLanguageError,
    HorizonExceededError,
    HypothesisNotMetError,
    InadmissibleWordError,
    NonTransitiveSpaceError,
    ParseError,
    RuleClosureError,
    UnsupportedDomainError,
    WindowTooShortError,
)
from cesaro_ca.experiments import ExperimentConfig, run, run_async
from cesaro_ca.files import parse_measure, parse_rule, parse_space
from cesaro_ca.formula import (
    build_rkm,
    is_equicontinuous_measure,
    local_period,
    mu_c_estimate,
    pkm,
    support_tests,
    theorem_formula,
)
from cesaro_ca.limit_set import image_sofic, limit_set_approx
from cesaro_ca.measure import MarkovMeasure, bernoulli, cylinder_prob, markov, uniform
from cesaro_ca.parry import ParryData, parry_measure
from cesaro_ca.periodic_points import construct_f_periodic_point
from cesaro_ca.report import Report, Table
from cesaro_ca.rule import (
    LocalRule,
    OrbitSummary,
    apply_periodic,
    apply_window,
    compose_power,
    orbit_periodic,
    shift_compose,
)
from cesaro_ca.shift_space import ShiftSpace, build_sft, full_shift, is_mixing, is_transitive
from cesaro_ca.surjectivity import SurjectivityVerdict, is_surjective
from cesaro_ca.symbolic import Alphabet, Cylinder, PeriodicConfig

__all__ = [
    "DEFAULT_CAPS",
    "Alphabet",
    "BlockingCertificate",
    "CapExceededError",
    "Caps",
    "CesaroCAError",
    "CesaroSeries",
    "ClassifyParams",
    "Convergence",
    "Cylinder",
    "EmptyLanguageError",
    "EquicontinuityClass",
    "EquicontinuityVerdict",
    "ExperimentConfig",
    "FalsificationWitness",
    "HorizonExceededError",
    "HypothesisNotMetError",
    "InadmissibleWordError",
    "LocalRule",
    "MarkovMeasure",
    "NonTransitiveSpaceError",
    "OrbitSummary",
    "ParryData",
    "ParseError",
    "PeriodicConfig",
    "PushforwardSnapshot",
    "Report",
    "RuleClosureError",
    "ShiftSpace",
    "SurjectivityVerdict",
    "Table",
    "UnsupportedDomainError",
    "WindowTooShortError",
    "apply_periodic",
    "apply_window",
    "bernoulli",
    "build_rkm",
    "build_sft",
    "certify_block",
    "certify_blocking",
    "cesaro_mean",
    "classify_equicontinuity",
    "classify_equicontinuity_async",
    "compose_power",
    "construct_f_periodic_point",
    "convergence_diagnostic",
    "cylinder_prob",
    "equicontinuous_cesaro_limit",
    "falsify_blocking",
    "full_shift",
    "image_sofic",
    "is_equicontinuous_measure",
    "is_mixing",
    "is_surjective",
    "is_transitive",
    "limit_set_approx",
    "local_period",
    "markov",
    "mu_c_estimate",
    "orbit_periodic",
    "parry_measure",
    "parse_measure",
    "parse_rule",
    "parse_space",
    "pkm",
    "pushforward_cylinder",
    "pushforward_series",
    "pushforward_snapshot",
    "run",
    "run_async",
    "search_blocking_words",
    "search_blocking_words_async",
    "shift_compose",
    "support_tests",
    "theorem_formula",
    "uniform",
]
