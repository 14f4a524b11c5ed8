"""Learning user-specific pattern rankings from pairwise feedback.

The pipeline: mine association rules, score each under seven objective
interestingness measures, then learn per-user weights over those measures from
ranking feedback — in batch (passive) or query-by-query (active) mode — and
rank the whole collection by the weighted aggregate.
"""
from .ahp import (
    ComparisonMatrix,
    GapState,
    WeightVector,
    comparison_matrix,
    consistency_ratio,
    eigen_weights,
    scale_gap,
)
from .bench import (
    ExperimentConfig,
    MetricsReport,
    run_active_experiment,
    run_measure_audit,
    run_passive_cv,
)
from .dataset import Itemset, TransactionDB, dump_fimi, freq, load_fimi, parse_fimi
from .learner import (
    ActiveDriver,
    ActiveResult,
    FeedbackOracle,
    FeedbackRanking,
    IterationTrace,
    LearnerConfig,
    OracleAbort,
    PassiveResult,
    PatternCollection,
    PatternRecord,
    collection_from_rules,
    learn_weights,
    measure_matrix_to_csv,
    run_active,
    run_passive,
    sample_patterns,
    select_query,
    sensitivity,
    weighted_score,
)
from .measures import (
    MEASURE_NAMES,
    MEASURE_RANGES,
    Measure,
    measure_value,
    measure_vector,
    minmax_scale,
)
from .mining import (
    AssociationRule,
    ContingencyTable,
    MinedRule,
    contingency,
    generate_rules,
    mine_frequent,
    rules_to_csv,
)
from .oracles import (
    ChiSquareOracle,
    EmulatorSpec,
    LexicographicOracle,
    LinearOracle,
    MistakeProneOracle,
    ScriptedOracle,
    TargetSwapOracle,
    random_linear_oracle,
)
from .ranking import RankAssignment, kendall_w, rank_by, recall_at, recall_at_percent, spearman
from .synthetic import synthetic_collection, synthetic_db, synthetic_separable_collection

__version__ = "0.1.0"
