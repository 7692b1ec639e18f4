"""Enumerate pop-stack sortable permutations through finite automata."""

from .automata import Dfa, Nfa, build_sorting_plan_dfa
from .gfalg import Polynomial, RationalFunction, growth_rate, series, sortable_gf
from .permcore import blockwise_reverse, is_k_sortable, operation_word, pop_pass

__all__ = [
    "Dfa",
    "Nfa",
    "Polynomial",
    "RationalFunction",
    "blockwise_reverse",
    "build_sorting_plan_dfa",
    "growth_rate",
    "is_k_sortable",
    "operation_word",
    "pop_pass",
    "series",
    "sortable_gf",
]
