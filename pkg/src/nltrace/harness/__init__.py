"""Seeded generators, falsification search and property suites."""

from .falsify import falsify_triangle, replay_triangle, structured_candidates
from .generators import (
    random_comonotone_pair,
    random_complex,
    random_hermitian,
    random_monotone_measure,
    random_psd,
    random_step_operator,
    random_unitary,
)
from .rng import Xoshiro256, trial_seed
from .suites import run_suite, suite_ids

__all__ = [
    "Xoshiro256",
    "trial_seed",
    "random_complex",
    "random_hermitian",
    "random_psd",
    "random_unitary",
    "random_step_operator",
    "random_monotone_measure",
    "random_comonotone_pair",
    "falsify_triangle",
    "replay_triangle",
    "structured_candidates",
    "run_suite",
    "suite_ids",
]
