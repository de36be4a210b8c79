"""daseg: dialog act segmentation toolkit."""

from .align import (
    ActGainTable,
    AlignOp,
    PunctuationTable,
    SegmentAlignment,
    align_segments,
    compare_models,
    mid_segment_punctuation,
    per_act_rates,
    punctuation_by_act,
)
from .coding import (
    TURN_SENTINEL,
    FixedChunkTokenizer,
    LabelSequence,
    SubwordProjection,
    TokenView,
    WhitespaceTokenizer,
    Window,
    canonical,
    chunk,
    collapse_from_subwords,
    decode_joint,
    encode_joint,
    project_to_subwords,
    projection_for,
    serialize,
    stitch,
)
from .corpus import (
    Corpus,
    CorpusStats,
    Dialog,
    FunctionalSegment,
    Segmentation,
    Turn,
    corpus_stats,
    load_manifest,
    normalize,
    read_corpus,
    split,
    to_pure,
    write_corpus,
)
from .errors import (
    CorpusFormatError,
    CorpusImportError,
    DasegError,
    EvaluationError,
    ModelFormatError,
    PredictionsFormatError,
)
from .labels import (
    GRANULARITIES,
    MRDA_BASIC_5,
    MRDA_FULL_51,
    MRDA_GENERAL_12,
    PURE_1,
    SWDA_42,
    LabelSet,
)
from .metrics import MetricsReport, evaluate_corpus, segment_error_rates, token_f1
from .mrda import import_mrda
from .predio import Predictions, read_predictions, validate_against, write_predictions
from .swda import import_swda
from .tagger import (
    TaggerModel,
    TokenContext,
    dialog_contexts,
    extract_features,
    load as load_model,
    predict,
    save as save_model,
    sequence_score,
    train,
    viterbi,
    word_shape,
)

__version__ = "0.1.0"
