"""Quotient complexity of regular languages via derivatives."""

from .analysis import ComplexityProfile, PairProfile, profile, shared_ur_count, unique_reachable
from .automata import (
    CapExceeded,
    Dfa,
    ExplorationConfig,
    build_dfa,
    equivalent,
    kappa,
    minimize,
    product_dfa,
    reverse,
)
from .regex import Alphabet, Regex, derive_letter, derive_word, normalize, nullable, parse, to_text
from .verify import CampaignConfig, campaign, verify_operation
from .witnesses import WitnessCase, witness

__all__ = [
    "Alphabet",
    "CampaignConfig",
    "CapExceeded",
    "ComplexityProfile",
    "Dfa",
    "ExplorationConfig",
    "PairProfile",
    "Regex",
    "WitnessCase",
    "build_dfa",
    "campaign",
    "derive_letter",
    "derive_word",
    "equivalent",
    "kappa",
    "minimize",
    "normalize",
    "nullable",
    "parse",
    "product_dfa",
    "profile",
    "reverse",
    "shared_ur_count",
    "to_text",
    "unique_reachable",
    "verify_operation",
    "witness",
]
