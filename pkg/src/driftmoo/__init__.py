"""driftmoo: interactive evolutionary multi-objective optimization.

The engine learns a decision maker's preferences from ranking feedback,
detects which objectives actually drive those rankings (including objectives
the optimizer was not evaluating), adapts when preferences drift, and can
cut the actively evaluated objective set down to the detected relevant ones
to save evaluation budget.
"""

from ._kernels import BACKEND
from .detection import (DetectionConfig, DetectionOutcome, PreferenceStore,
                        detect, inject_noise, refine_pref, rfe_select,
                        score_univariate, update_mask)
from .emoa import (Individual, VariationConfig, crowding_distance, evolve,
                   nondominated_sort)
from .engine import (DMChannelAborted, RunConfig, RunTrace, TraceRow, run,
                     select_presentation_sample)
from .harness import (ExperimentGrid, aggregate, default_utility, emit_series,
                      execute, expand, load_grid, run_grid)
from .learning import LearnedCriterion, RankModel, fit, score
from .mdm import (DriftSpec, MachineDM, RankedSample, UtilityModel, UtilitySpec,
                  apply_drift, rank, utility)
from .problems import (ActiveMask, EvalCounter, ProblemInstance, ProblemSpec,
                       dtlz1, dtlz2, dtlz7, evaluate_active,
                       evaluate_active_batch, evaluate_full,
                       evaluate_full_batch, rmnk_generate)

__version__ = "0.1.0"

__all__ = [
    "ActiveMask", "BACKEND", "DMChannelAborted", "DetectionConfig",
    "DetectionOutcome", "DriftSpec", "EvalCounter", "ExperimentGrid",
    "Individual", "LearnedCriterion", "MachineDM", "PreferenceStore",
    "ProblemInstance", "ProblemSpec", "RankModel", "RankedSample", "RunConfig",
    "RunTrace", "TraceRow", "UtilityModel", "UtilitySpec", "VariationConfig",
    "aggregate", "apply_drift", "crowding_distance", "default_utility",
    "detect", "dtlz1", "dtlz2", "dtlz7", "emit_series", "evaluate_active",
    "evaluate_active_batch", "evaluate_full", "evaluate_full_batch", "evolve",
    "execute", "expand", "fit", "inject_noise", "load_grid",
    "nondominated_sort", "rank", "refine_pref", "rfe_select", "rmnk_generate",
    "run", "run_grid", "score", "score_univariate",
    "select_presentation_sample", "update_mask", "utility",
]
