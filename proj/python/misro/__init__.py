"""Exact solvers for max-min risk quantification under per-requirement
criticality thresholds, with a deterministic instance generator, MiniZinc
data interop, a brute-force oracle and a benchmark harness."""

from misro._misro import (
    AchievableSet,
    Assignment,
    BenchConfig,
    BenchRecord,
    BenchResult,
    CriticalityReport,
    GenSpec,
    Instance,
    LevelPair,
    MisroError,
    MitigationAction,
    Mode,
    RequirementCriticality,
    SearchStats,
    SideConstraint,
    Solution,
    SolveOutcome,
    SolveStatus,
    achievable_values,
    apply_mitigation,
    brute_force,
    calc_criticality,
    emit_dzn,
    emit_json,
    fix_likelihood,
    fix_severity,
    generate,
    greedy_saturate,
    is_acceptable,
    make_assignment,
    make_instance,
    max_quant,
    min_quant,
    parse_dzn,
    parse_json,
    q_den,
    q_min,
    quality,
    quantify,
    restrict_likelihood,
    restrict_severity,
    run_suite,
    solve_bnb,
    solve_fastpath,
    validate_instance,
)

__version__ = "0.1.0"

__all__ = [
    "AchievableSet",
    "Assignment",
    "BenchConfig",
    "BenchRecord",
    "BenchResult",
    "CriticalityReport",
    "GenSpec",
    "Instance",
    "LevelPair",
    "MisroError",
    "MitigationAction",
    "Mode",
    "RequirementCriticality",
    "SearchStats",
    "SideConstraint",
    "Solution",
    "SolveOutcome",
    "SolveStatus",
    "achievable_values",
    "apply_mitigation",
    "brute_force",
    "calc_criticality",
    "emit_dzn",
    "emit_json",
    "fix_likelihood",
    "fix_severity",
    "generate",
    "greedy_saturate",
    "is_acceptable",
    "make_assignment",
    "make_instance",
    "max_quant",
    "min_quant",
    "parse_dzn",
    "parse_json",
    "q_den",
    "q_min",
    "quality",
    "quantify",
    "restrict_likelihood",
    "restrict_severity",
    "run_suite",
    "solve_bnb",
    "solve_fastpath",
    "validate_instance",
]
