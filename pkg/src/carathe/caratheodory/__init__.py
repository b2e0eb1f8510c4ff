"""Colourful selection instances, the covering scheme and the lemma suite."""
from .core import (
    CoverReport,
    HypothesisReport,
    NerveRangeReport,
    ZData,
    build_Z,
    check_hypotheses,
    colorful_transversals,
    constraint_complex,
    cover_members,
    covering_check,
    has_selection,
    nerve_range_check,
    solve,
    transversal_to_selection,
    verify_certificate,
)
from .lemmas import LemmaContext, LemmaRow, global_lemmas, lemma_suite
from .model import Certificate, Instance, Variant
