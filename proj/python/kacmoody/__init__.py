"""Exact Kac-Moody algebra and group computations."""
from fractions import Fraction

from ._core import (
    Algebra,
    KacMoodyError,
    classify,
    iwahori_bruhat,
    oracle_run,
    realize_word,
    reduced_word,
    vinberg_classify,
)


def commutator_table(rows, alpha, beta):
    """[(gamma, i, j, C)] with C an int."""
    return [(g, i, j, int(c)) for g, i, j, c in Algebra(rows).commutator(alpha, beta)]


def ad_eval(rows, word, root, field="Q"):
    """Ad(word) applied to the canonical vector of a real root."""
    return [(r, k, Fraction(c)) for r, k, c in Algebra(rows).ad_eval(word, root, field)]


__all__ = [
    "Algebra",
    "KacMoodyError",
    "ad_eval",
    "classify",
    "commutator_table",
    "iwahori_bruhat",
    "oracle_run",
    "realize_word",
    "reduced_word",
    "vinberg_classify",
]
