"""serpsim: similarity measures for ranked search-result lists.

A library plus CLI computing list-based, set-based, and content-based
similarity between pairs of ranked result lists: Jaccard ratios over
URLs and shingles, weighted Spearman footrule and Kendall tau on
partial lists, distribution distances with permutation p-values and a
consensus duplicate vote, cross-list URL normalization, DCG quality
joins, and a harness that runs the whole stack over snapshot corpora.
"""

from .corpus import (
    OMEGA,
    DocumentText,
    Grade,
    JudgmentSet,
    QueryRecord,
    ResultEntry,
    ResultList,
    Stratum,
    dump_snapshot,
    load_judgments,
    load_snapshot,
    load_snapshot_file,
)
from .distsim import (
    ConsensusVerdict,
    DistanceResult,
    Measure,
    consensus_duplicate,
    observed_distance,
    overlap_gate,
    p_value,
    phi,
    suite_all,
    suite_distance,
)
from .errors import SerpsimError
from .normalize import NormalizedPair, duplicate_by_shingles, normalize_lists
from .perturb import Mode, PerturbationSpec, build_pair, sweep
from .quality import DcgScore, dcg, dcg_scores, gain, relative_dcg
from .ranksim import (
    DCGW,
    IOTA,
    ListScore,
    RankExtension,
    WeightFn,
    WeightKind,
    extend_ranks,
    footrule,
    kendall,
    kendall_oracle,
    weight_dcgw,
    weight_iota,
)
from .report import MeasureReport, compare_lists, corpus_report, dcg_table
from .sampling import QueryLog, StrataConfig, load_query_log, stratified_sample
from .setsim import JaccardScore, j_term, j_url, jaccard
from .textpipe import (
    PairedCdf,
    ShingleSet,
    TermHistogram,
    TermSequence,
    paired_cdf,
    shingle,
    term_histogram,
    tokenize,
)

__version__ = "0.1.0"
