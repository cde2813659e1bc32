"""Two-machine flow shop toolkit: makespan-optimal scheduling with only a
critical prefix and suffix sorted, plus probability bounds on how small
those critical sets are and a benchmark harness."""

__version__ = "0.1.0"
INSTANCE_FORMAT_VERSION = 1

from .core import (
    Instance,
    InstanceFormatError,
    OverflowGuardError,
    Partition,
    brute_force_optimum,
    completion_times,
    format_instance,
    load_instance,
    makespan,
    parse_instance,
    partition,
    reverse_instance,
)
from .johnson import is_johnson_order, johnson_full
from .linear import (
    CriticalIndices,
    SolveConfig,
    SolvePath,
    SolveReport,
    check_prop5,
    check_prop6,
    count_equivalent,
    find_k_a,
    find_k_b,
    select_kth,
    solve,
)
from .probability import (
    ProbPoint,
    monte_carlo_check,
    optimize_alpha,
    p1_star,
    p2_star,
    p_star,
    prob_c1,
    probability_table,
)
from .generators import (
    GenSpec,
    demo_instance,
    gen_instance,
    gen_worstcase,
    write_corpus,
)
from .bench import BenchRow, emit_report, run_distribution_suite, run_uniform_suite
