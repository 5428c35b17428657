"""Joint ASR+ST serialized output training references, splitting and streaming evaluation."""

from ._backend import BACKEND
from .corpus import (
    ASR_TAG,
    ST_TAG,
    Alignment,
    AlignmentBoundsError,
    CorpusError,
    PharaohParseError,
    UtterancePair,
    load_corpus,
    parse_pharaoh,
    render_pharaoh,
    tokenize,
)
from .interleave import (
    ALIGN,
    ALL_STRATEGIES,
    INTER_0_0,
    INTER_0_5,
    INTER_1_0,
    Align,
    Gamma,
    GammaCounts,
    MissingAlignmentError,
    Segment,
    SerializedStream,
    Task,
    flatten,
    next_task_gamma,
    parse_strategy,
    segment_blocks,
    serialize,
    serialize_align,
    serialize_gamma,
)
from .metrics import DelayLog, MetricReport, al, bleu, laal, per_task_delays, wer
from .simulate import (
    EmissionPolicy,
    SimulatedUtterance,
    compare_strategies,
    emittable_time,
    simulate_emission,
    word_end_times,
)
from .stream import SplitResult, StreamParser, feed_token, roundtrip_check, split

__version__ = "0.1.0"
