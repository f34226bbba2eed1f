# core/ethics/__init__.py
"""情境层与双重效应原则第五条（C5a / C5b）"""
from core.ethics.c5 import C5Clause, belief_context, c5a_formula, c5b_formula, derive_c5, theta
from core.ethics.dilemma import DilemmaError, DilemmaKB, dilemma_from_problem, load_dilemma, parse_dilemma
from core.ethics.situations import (
    SituationTheory, holds_in, in_situation, sanctioning_axiom, situation_signature,
)

__all__ = [
    "C5Clause", "belief_context", "c5a_formula", "c5b_formula", "derive_c5", "theta",
    "DilemmaError", "DilemmaKB", "dilemma_from_problem", "load_dilemma", "parse_dilemma",
    "SituationTheory", "holds_in", "in_situation", "sanctioning_axiom", "situation_signature",
]
