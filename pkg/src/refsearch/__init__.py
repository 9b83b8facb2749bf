"""Multi-objective refactoring-sequence search with reviewer recommendation.

The library models an object-oriented codebase at signature level,
searches for short refactoring sequences that improve weighted design
quality attributes while staying semantically coherent, and recommends a
small group of available, file-experienced reviewers for each sequence.
"""

from .code_model import (
    CallEdge,
    CallGraph,
    ClassDecl,
    CodeModel,
    FieldDecl,
    MethodDecl,
    class_file,
    load_code_facts,
)
from .errors import ConfigError, FactsParseError, FactsValidationError, InputError
from .harness import (
    ExperimentPlan,
    ablation_compare,
    hypervolume,
    load_plan,
    reviewable_ratio,
    run_experiment,
)
from .quality import (
    ATTRIBUTE_NAMES,
    ATTRIBUTE_WEIGHTS,
    METRIC_NAMES,
    DesignMetrics,
    QualityVector,
    compute_attributes,
    compute_metrics,
    quality_gain,
)
from .refactoring import (
    NULL_OP,
    RefactoringKind,
    RefactoringOp,
    Solution,
    apply,
    apply_sequence,
    is_applicable,
)
from .review import (
    ActivityEvent,
    ActivityRecord,
    CommitRecord,
    DeveloperProfile,
    ReviewParams,
    build_profiles,
    commit_recency,
    file_expertise,
    load_activities,
    load_aliases,
    load_commits,
    recommend_reviewers,
    touched_files,
    workload,
)
from .search import (
    Evaluator,
    FitnessVector,
    ParetoFront,
    Provenance,
    SearchConfig,
    crowding_distance,
    default_max_evaluations,
    dominates,
    fast_nondominated_sort,
    mutate,
    random_solution,
    run,
    single_point_crossover,
)
from .semantics import (
    SemanticParams,
    coherence_score,
    dependency_similarity,
    sequence_coherence,
    vocabulary_similarity,
)

__version__ = "0.1.0"
