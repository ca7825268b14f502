"""Maximal intersection queries over random document collections."""

from .core import (
    Collection,
    Document,
    MatchResult,
    canonicalize,
    compare_lex,
    containment_prefix_len,
    intersection_size,
    lcp_length,
    reverse_order_metric,
)
from .errors import (
    EmptyCollection,
    FormatError,
    InsufficientData,
    InvalidCell,
    InvalidDocument,
    InvalidMaxCardinality,
    InvalidPrefixLength,
    InvalidTermRank,
    MaxIntError,
)
from .index import PrefixIndex, QueryStats, build_prefix_index, query_max_lcp
from .models import HierParams, ModelConfig, ZipfParams, gen_hier_collection, gen_zipf_collection
from .oracle import InvertedIndex, build_inverted_index, oracle_max_intersection

__version__ = "0.1.0"
