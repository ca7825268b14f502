"""Random document models and the document predicates used to analyse them.

Zipf model: a document over terms t_1..t_m contains t_i independently with
probability 1/i.

Hierarchical scheme: k levels, level l holds 2^(l-1) cells of k terms each.
A document picks a uniform leaf cell on level k, walks up to the root
(the parent of cell j is cell ceil(j/2)) and takes one uniform term from each
cell on that path.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from typing import NamedTuple, Optional

from .core import Collection, Document
from .errors import InvalidCell
from .rng import SplitMix64, derive_stream

# Slack for floor/ceil of transcendental quantities, so that e.g. n = e**8
# gives sqrt(2 ln n) = 4 and not 4.000000000000001.
_ROUND_EPS = 1e-9


def _ceil(x: float) -> int:
    return math.ceil(x - _ROUND_EPS)


def _floor(x: float) -> int:
    return math.floor(x + _ROUND_EPS)


# --------------------------------------------------------------------------
# Zipf model
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class ZipfParams:
    n: int
    m: int
    seed: int = 0

    def __post_init__(self):
        if self.n < 1 or self.m < 1:
            raise ValueError("n and m must be >= 1")


def zipf_next_included(current: int, m: int, rng: SplitMix64) -> Optional[int]:
    """Next included term index after `current`, or None past m.

    Standing at an included index i >= 1, the next index exceeds j with
    probability prod_{l=i+1..j} (1 - 1/l) = i/j, so inverse transform gives
    j = floor(i/U) + 1.  t_1 has probability one and needs no draw.
    """
    if current == 0:
        return 1 if m >= 1 else None
    nxt = int(current / rng.uniform()) + 1
    return nxt if nxt <= m else None


def gen_zipf_document(m: int, rng: SplitMix64) -> Document:
    terms = []
    i = zipf_next_included(0, m, rng)
    while i is not None:
        terms.append(i)
        i = zipf_next_included(i, m, rng)
    return tuple(terms)


def gen_zipf_collection(p: ZipfParams) -> Collection:
    docs = [gen_zipf_document(p.m, derive_stream(p.seed, i)) for i in range(p.n)]
    return Collection(docs, model="zipf", m=p.m, k=0, seed=p.seed)


def harmonic_number(m: int) -> float:
    if m < 1:
        raise ValueError("m must be >= 1")
    return math.fsum(1.0 / i for i in range(1, m + 1))


def zipf_matching_level(n: float) -> float:
    """sqrt(2 ln n)."""
    if n < 2:
        raise ValueError("n must be >= 2")
    return math.sqrt(2.0 * math.log(n))


@dataclass(frozen=True)
class ZipfThresholdParams:
    """delta and epsilon of the Zipf matching-level statements, with the
    derived prefix slack gamma = 2 + delta*sqrt(2 ln n) and c = exp(-delta^2/2)."""

    delta: float
    epsilon: float = 0.1

    def __post_init__(self):
        if not 0 < self.delta < 1:
            raise ValueError("delta must lie in (0, 1)")
        if self.epsilon <= 0:
            raise ValueError("epsilon must be positive")

    @property
    def c(self) -> float:
        return math.exp(-self.delta ** 2 / 2)

    def gamma(self, n: float) -> float:
        return 2.0 + self.delta * math.sqrt(2.0 * math.log(n))

    def generic_bound(self, n: float) -> float:
        """Lower bound 1 - c^(1.4 delta sqrt(ln n)) / (1 - c) on the
        probability that a Zipf document is delta-n-generic.  Negative
        (vacuous) at moderate n."""
        c = self.c
        return 1.0 - c ** (1.4 * self.delta * math.sqrt(math.log(n))) / (1.0 - c)

    def prefix_match_bound(self, n: float) -> float:
        c = self.c
        return 1.0 - c ** (self.delta * math.sqrt(math.log(n))) / (1.0 - c)


def group_bounds(i: int) -> tuple[int, int]:
    """Rank range [ceil(e^(i-1)), floor(e^i)] of the exponential group P_i."""
    if i < 1:
        raise ValueError("group index starts at 1")
    return math.ceil(math.exp(i - 1)), math.floor(math.exp(i))


def regular_length(m: int) -> int:
    return _floor(math.log(m))


def is_regular(d: Document, m: int) -> bool:
    L = regular_length(m)
    if len(d) != L:
        return False
    for i, t in enumerate(d, start=1):
        lo, hi = group_bounds(i)
        if not lo <= t <= hi:
            return False
    return True


def gen_regular_document(m: int, rng: SplitMix64) -> Document:
    """Uniform regular document: one uniform term from each of P_1..P_floor(ln m)."""
    if m < 3:
        raise ValueError("regular documents need m >= 3")
    terms = []
    for i in range(1, regular_length(m) + 1):
        lo, hi = group_bounds(i)
        terms.append(lo + rng.randbelow(hi - lo + 1))
    return tuple(terms)


def _count_upto_exp(d: Document, i: int) -> int:
    return bisect_right(d, math.floor(math.exp(i)))


def genericity_range(delta: float, n: float) -> range:
    q = math.sqrt(2.0 * math.log(n))
    return range(_ceil(delta * q), _ceil(q) + 1)


def is_delta_n_generic(d: Document, delta: float, n: float) -> bool:
    """At least (1 - delta) * i terms of rank <= e^i for every integer i in
    [ceil(delta*sqrt(2 ln n)), ceil(sqrt(2 ln n))]."""
    if not 0 < delta < 1:
        raise ValueError("delta must lie in (0, 1)")
    for i in genericity_range(delta, n):
        if _count_upto_exp(d, i) < (1.0 - delta) * i - _ROUND_EPS:
            return False
    return True


def has_dense_prefix(d: Document, n: float) -> bool:
    """At least i terms of rank <= e^i for every integer 1 <= i <= sqrt(2 ln n).

    This is the stronger condition a document reaches (with high probability)
    after extend_with_missing_prefix_terms.
    """
    q = math.sqrt(2.0 * math.log(n))
    return all(_count_upto_exp(d, i) >= i for i in range(1, _floor(q) + 1))


def extend_with_missing_prefix_terms(d: Document, count: int) -> Document:
    """Add the `count` smallest ranks not already present."""
    if count < 0:
        raise ValueError("count must be >= 0")
    present = set(d)
    added = []
    r = 1
    while len(added) < count:
        if r not in present:
            added.append(r)
        r += 1
    return tuple(sorted(present.union(added)))


# --------------------------------------------------------------------------
# Hierarchical scheme
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class HierParams:
    k: int
    n: Optional[int] = None
    seed: int = 0

    def __post_init__(self):
        if self.k < 2:
            raise ValueError("k must be >= 2")
        if self.n is None:
            object.__setattr__(self, "n", 2 ** self.k)
        if self.n < 1:
            raise ValueError("n must be >= 1")


class CellAddress(NamedTuple):
    level: int
    cell: int
    slot: int


def hier_universe_size(k: int) -> int:
    return (2 ** k - 1) * k


def hier_term_id(addr: CellAddress, k: int) -> int:
    """Global rank of a term; ordered by level, then cell, then slot."""
    level, cell, slot = addr
    if not (1 <= level <= k and 1 <= cell <= 2 ** (level - 1) and 1 <= slot <= k):
        raise InvalidCell(f"{addr} is not a valid cell address for k={k}")
    return (2 ** (level - 1) - 1 + (cell - 1)) * k + slot


def decode_hier_term(term: int, k: int) -> CellAddress:
    if not 1 <= term <= hier_universe_size(k):
        raise InvalidCell(f"term {term} outside [1, {hier_universe_size(k)}] for k={k}")
    g, s = divmod(term - 1, k)
    level = (g + 1).bit_length()
    return CellAddress(level, g + 2 - 2 ** (level - 1), s + 1)


def gen_hier_document(k: int, rng: SplitMix64) -> Document:
    """One term per level along a uniformly chosen root-to-leaf cell path.

    The leaf is drawn first, then the slot for levels 1..k in order.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    leaf = rng.randbelow(2 ** (k - 1))
    terms = []
    for level in range(1, k + 1):
        cell0 = leaf >> (k - level)
        slot = rng.randbelow(k) + 1
        terms.append((2 ** (level - 1) - 1 + cell0) * k + slot)
    return tuple(terms)


def gen_hier_collection(p: HierParams) -> Collection:
    docs = [gen_hier_document(p.k, derive_stream(p.seed, i)) for i in range(p.n)]
    return Collection(docs, model="hier", m=hier_universe_size(p.k), k=p.k, seed=p.seed)


def hier_cell_path(d: Document, k: int) -> list[CellAddress]:
    return [decode_hier_term(t, k) for t in d]


def is_valid_hier_document(d: Document, k: int) -> bool:
    """Exactly one term per level, levels in order, cells forming a path."""
    if len(d) != k:
        return False
    try:
        path = hier_cell_path(d, k)
    except InvalidCell:
        return False
    for level, addr in enumerate(path, start=1):
        if addr.level != level:
            return False
        if level > 1 and (addr.cell + 1) // 2 != path[level - 2].cell:
            return False
    return True


def hier_matching_levels(k: int) -> tuple[float, float]:
    """(k / (1 + log2 k), k / log2 k)."""
    if k < 2:
        raise ValueError("k must be >= 2")
    lg = math.log2(k)
    return k / (1.0 + lg), k / lg


def hier_zipf_law_product(level: int, k: int) -> float:
    """Expected frequency times expected frequency rank of a level term,
    divided by 2^k: (1.5 * 2^(i-1) - 1) / 2^(i-1)."""
    if not 1 <= level <= k:
        raise ValueError(f"level must lie in [1, {k}]")
    w = 2.0 ** (level - 1)
    return (1.5 * w - 1.0) / w


# --------------------------------------------------------------------------
# Model selection used by experiments and the CLI
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class ModelConfig:
    """Which model to draw from; m defaults to n (zipf), n to 2^k (hier)."""

    model: str
    n: Optional[int] = None
    m: Optional[int] = None
    k: Optional[int] = None

    def __post_init__(self):
        if self.model == "zipf":
            if self.n is None:
                raise ValueError("zipf model needs n")
            if self.m is None:
                object.__setattr__(self, "m", self.n)
            object.__setattr__(self, "k", 0)
            ZipfParams(self.n, self.m)
        elif self.model == "hier":
            if self.k is None:
                raise ValueError("hier model needs k")
            HierParams(self.k, self.n)
            if self.n is None:
                object.__setattr__(self, "n", 2 ** self.k)
            object.__setattr__(self, "m", hier_universe_size(self.k))
        else:
            raise ValueError(f"unknown model {self.model!r}")

    @classmethod
    def of(cls, c: Collection) -> "ModelConfig":
        if c.model == "zipf":
            return cls("zipf", n=c.n, m=c.m)
        if c.model == "hier":
            return cls("hier", n=c.n, k=c.k)
        raise ValueError("external collections carry no generative model")

    def collection(self, seed: int) -> Collection:
        if self.model == "zipf":
            return gen_zipf_collection(ZipfParams(self.n, self.m, seed))
        return gen_hier_collection(HierParams(self.k, self.n, seed))

    def document(self, rng: SplitMix64) -> Document:
        if self.model == "zipf":
            return gen_zipf_document(self.m, rng)
        return gen_hier_document(self.k, rng)

    def matching_level(self) -> float:
        if self.model == "zipf":
            return zipf_matching_level(max(self.n, 2))
        return hier_matching_levels(self.k)[0]
