"""Exhaustive computations with finite strict 2-categories and their nerves."""
from .core2cat import (  # noqa: F401
    FinCategory, Fin2Category, TwoFunctor, Functor, FreePresentation,
    CompositionError, Violation,
    ordinal, chaotic, product, coproduct, walking_retract, construct_category,
    chain, theta, sigma, sigma_i, discrete, ch_star, coproduct2, point,
    walking_2cell, walking_2iso, construct_two_category, ob_star, pi0_star,
    validate_two_category, enumerate_functors, enumerate_two_functors,
    classify_cells, adjoint_completions, triangles, whisker_compose, is_gaunt,
)

from . import complicial, corpus, hom2cat, nerves, nps  # noqa: F401

__version__ = "0.1.0"
