"""
Unit tests for dyadic intervals, subblocks and blocks.
"""

import random
import time
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.dyadic_core import (
    Block,
    CoverageError,
    DimensionMismatchError,
    DyadicInterval,
    InvalidInputError,
    PartitionError,
    Subblock,
    interval_intersect,
    random_block,
    refines,
    subblock_intersect,
    subdivide,
    validate_block,
    validate_word,
    wedge,
    wedge_all,
)
from tests.test_constants import (
    INDEX_TIME_BUDGET_SECONDS,
    LONG_CHAIN_LENGTH,
    MAX_RANDOM_BLOCKS,
    PROPERTY_MAX_EXAMPLES,
    WEDGE_BOUND_SAMPLES,
)


def block_from_seed(n: int, length: int, seed: int) -> Block:
    return random_block(n, length, random.Random(seed))


def chain_block(length: int, dimension: int = 1) -> Block:
    """{0, 10, 110, ..., 1...1} in the last coordinate, whole in the others."""
    words = ["1" * k + "0" for k in range(length - 1)] + ["1" * (length - 1)]
    head = ("",) * (dimension - 1)
    return Block(tuple(Subblock(head + (word,)) for word in words))


block_args = st.tuples(
    st.integers(min_value=1, max_value=3),
    st.integers(min_value=1, max_value=10),
    st.integers(min_value=0, max_value=2**32),
)


@pytest.mark.unit
def test_validate_word_accepts_binary_and_empty() -> None:
    assert validate_word("") == ""
    assert validate_word("0110") == "0110"


@pytest.mark.unit
@pytest.mark.parametrize("word", ["012", "e", "0 1", "a"])
def test_validate_word_rejects_other_symbols(word: str) -> None:
    with pytest.raises(InvalidInputError):
        validate_word(word)


@pytest.mark.unit
def test_interval_measure() -> None:
    assert DyadicInterval("").measure == 1
    assert DyadicInterval("101").measure == Fraction(1, 8)


@pytest.mark.unit
def test_interval_intersect_nested_and_disjoint() -> None:
    assert interval_intersect(DyadicInterval("0"), DyadicInterval("01")) == DyadicInterval("01")
    assert interval_intersect(DyadicInterval("01"), DyadicInterval("0")) == DyadicInterval("01")
    assert interval_intersect(DyadicInterval("0"), DyadicInterval("1")) is None


@pytest.mark.unit
def test_subblock_measure_is_product_of_interval_measures() -> None:
    assert Subblock.of("0", "10").measure == Fraction(1, 8)
    assert Subblock.whole(3).measure == 1


@pytest.mark.unit
def test_subblock_contains_and_meets() -> None:
    big = Subblock.of("0", "")
    small = Subblock.of("01", "1")
    other = Subblock.of("1", "0")
    assert big.contains(small)
    assert not small.contains(big)
    assert big.meets(small)
    assert not big.meets(other)


@pytest.mark.unit
def test_subblock_intersect_coordinatewise() -> None:
    assert subblock_intersect(Subblock.of("0", ""), Subblock.of("", "1")) == Subblock.of("0", "1")
    assert subblock_intersect(Subblock.of("0", ""), Subblock.of("1", "")) is None


@pytest.mark.unit
def test_subblock_intersect_dimension_mismatch() -> None:
    with pytest.raises(DimensionMismatchError):
        subblock_intersect(Subblock.of("0"), Subblock.of("0", ""))


@pytest.mark.unit
def test_substitute_replaces_prefixes() -> None:
    piece = Subblock.of("0110", "1")
    assert piece.substitute(Subblock.of("01", ""), Subblock.of("1", "00")) == Subblock.of("110", "001")


@pytest.mark.unit
def test_subblock_str_uses_empty_word_token() -> None:
    assert str(Subblock.of("0", "")) == "[0, e]"


@pytest.mark.unit
def test_validate_block_sorts_a_partition() -> None:
    B = validate_block([Subblock.of("11"), Subblock.of("0"), Subblock.of("10")], 1)
    assert B.words() == [("0",), ("10",), ("11",)]


@pytest.mark.unit
def test_canonical_order_puts_prefix_first() -> None:
    B = Block.of(("1", ""), ("0", "1"), ("0", "0"))
    assert B.words() == [("0", "0"), ("0", "1"), ("1", "")]


@pytest.mark.unit
def test_overlap_reports_first_pair() -> None:
    with pytest.raises(PartitionError) as excinfo:
        validate_block([Subblock.of("0"), Subblock.of("01"), Subblock.of("1")], 1)
    assert excinfo.value.first == 0
    assert excinfo.value.second == 1
    assert excinfo.value.overlap == Subblock.of("01")


@pytest.mark.unit
def test_duplicated_subblock_overlaps_itself() -> None:
    with pytest.raises(PartitionError) as excinfo:
        validate_block([Subblock.of("0"), Subblock.of("0"), Subblock.of("1")], 1)
    assert (excinfo.value.first, excinfo.value.second) == (0, 1)
    assert excinfo.value.overlap == Subblock.of("0")


@pytest.mark.unit
def test_duplicated_subblock_in_two_dimensions() -> None:
    pieces = [Subblock.of("0", "1"), Subblock.of("1", ""), Subblock.of("0", "1"), Subblock.of("0", "0")]
    with pytest.raises(PartitionError) as excinfo:
        validate_block(pieces, 2)
    assert (excinfo.value.first, excinfo.value.second) == (0, 2)


@pytest.mark.unit
def test_deficit_reported_as_positive_gap() -> None:
    with pytest.raises(CoverageError) as excinfo:
        validate_block([Subblock.of("0")], 1)
    assert excinfo.value.gap == Fraction(1, 2)


@pytest.mark.unit
def test_deficit_in_two_dimensions() -> None:
    with pytest.raises(CoverageError) as excinfo:
        validate_block([Subblock.of("0", ""), Subblock.of("1", "0")], 2)
    assert excinfo.value.gap == Fraction(1, 4)


@pytest.mark.unit
def test_empty_candidate_list() -> None:
    with pytest.raises(CoverageError) as excinfo:
        validate_block([], 2)
    assert excinfo.value.gap == 1


@pytest.mark.unit
def test_validate_block_dimension_mismatch() -> None:
    with pytest.raises(DimensionMismatchError):
        validate_block([Subblock.of("0", ""), Subblock.of("1")], 2)


@pytest.mark.unit
def test_trivial_block_requires_positive_dimension() -> None:
    with pytest.raises(InvalidInputError):
        Block.trivial(0)


@pytest.mark.unit
def test_refines(three_pieces: Block) -> None:
    assert refines(three_pieces, Block.trivial(1))
    assert not refines(Block.trivial(1), three_pieces)
    assert refines(three_pieces, three_pieces)


@pytest.mark.unit
def test_wedge_of_nested_blocks_is_the_finer(halves: Block, three_pieces: Block) -> None:
    assert wedge(halves, three_pieces) == three_pieces


@pytest.mark.unit
def test_wedge_of_crossing_blocks() -> None:
    columns = Block.of(("0", ""), ("1", ""))
    rows = Block.of(("", "0"), ("", "1"))
    assert len(wedge(columns, rows)) == 4


@pytest.mark.unit
def test_wedge_of_incomparable_dyadic_blocks() -> None:
    left = Block.of(("0",), ("10",), ("11",))
    right = Block.of(("00",), ("01",), ("1",))
    assert wedge(left, right).words() == [("00",), ("01",), ("10",), ("11",)]


@pytest.mark.unit
def test_wedge_all_requires_input() -> None:
    with pytest.raises(InvalidInputError):
        wedge_all([])


@pytest.mark.unit
def test_subdivide(halves: Block) -> None:
    assert subdivide(halves, 1, 0).words() == [("0",), ("10",), ("11",)]


@pytest.mark.unit
def test_subdivide_out_of_range(halves: Block) -> None:
    with pytest.raises(InvalidInputError):
        subdivide(halves, 2, 0)
    with pytest.raises(InvalidInputError):
        subdivide(halves, 0, 1)


@pytest.mark.unit
def test_random_block_is_seeded_partition() -> None:
    first = block_from_seed(2, 9, 5)
    assert first == block_from_seed(2, 9, 5)
    assert len(first) == 9
    assert validate_block(list(first), 2) == first
    assert sum(piece.measure for piece in first) == 1


@pytest.mark.unit
def test_locate_and_position(three_pieces: Block) -> None:
    assert three_pieces.locate(Subblock.of("101")) == 1
    assert three_pieces.locate(Subblock.of("1")) is None
    assert three_pieces.position(Subblock.of("11")) == 2
    assert three_pieces.position(Subblock.of("1")) is None


@pytest.mark.unit
def test_locate_skips_words_that_only_share_a_prefix() -> None:
    B = Block.of(("00",), ("010",), ("011",), ("1",))
    assert B.locate(Subblock.of("0111")) == 2
    assert B.locate(Subblock.of("0010")) == 0
    assert B.locate(Subblock.of("01")) is None
    assert sorted(B.candidates("0101")) == [1]


@pytest.mark.unit
def test_locate_and_meeting_in_later_coordinates() -> None:
    B = Block.of(("", "0"), ("0", "10"), ("0", "11"), ("1", "10"), ("1", "11"))
    assert B.locate(Subblock.of("01", "110")) == 2
    assert B.locate(Subblock.of("1", "0")) == 0
    assert B.locate(Subblock.of("", "1")) is None
    assert sorted(B.meeting(Subblock.of("", "1"))) == [1, 2, 3, 4]
    assert sorted(B.meeting(Subblock.of("10", "11"))) == [4]
    assert sorted(B.candidates("01")) == [0, 1, 2]


@pytest.mark.unit
@pytest.mark.parametrize("dimension", [1, 2, 3])
def test_long_chain_lookups_stay_fast(dimension: int) -> None:
    started = time.perf_counter()
    X = chain_block(LONG_CHAIN_LENGTH, dimension)
    finer = Block(tuple(piece.child(dimension - 1, bit) for piece in X for bit in "01"))
    assert validate_block(list(X), dimension) == X
    assert refines(finer, X)
    assert wedge(finer, X) == finer
    assert time.perf_counter() - started < INDEX_TIME_BUDGET_SECONDS


@pytest.mark.unit
def test_wedge_size_is_bounded_by_product_of_sizes() -> None:
    for seed in range(WEDGE_BOUND_SAMPLES):
        rng = random.Random(seed)
        n = rng.randint(1, 3)
        X = random_block(n, rng.randint(1, MAX_RANDOM_BLOCKS), rng)
        Y = random_block(n, rng.randint(1, MAX_RANDOM_BLOCKS), rng)
        assert len(wedge(X, Y)) <= len(X) * len(Y)


@pytest.mark.unit
@settings(max_examples=PROPERTY_MAX_EXAMPLES, deadline=None)
@given(args=block_args, seeds=st.tuples(st.integers(0, 2**32), st.integers(0, 2**32)))
def test_wedge_commutative_associative(
    args: tuple[int, int, int], seeds: tuple[int, int]
) -> None:
    n, length, seed = args
    X = block_from_seed(n, length, seed)
    Y = block_from_seed(n, length, seeds[0])
    Z = block_from_seed(n, length, seeds[1])
    assert wedge(X, Y) == wedge(Y, X)
    assert wedge(wedge(X, Y), Z) == wedge(X, wedge(Y, Z))
    assert wedge(X, X) == X


@pytest.mark.unit
@settings(max_examples=PROPERTY_MAX_EXAMPLES, deadline=None)
@given(args=block_args, other=st.integers(0, 2**32))
def test_wedge_is_common_refinement(args: tuple[int, int, int], other: int) -> None:
    n, length, seed = args
    X = block_from_seed(n, length, seed)
    Y = block_from_seed(n, length, other)
    W = wedge(X, Y)
    assert refines(W, X)
    assert refines(W, Y)
    assert sum(piece.measure for piece in W) == 1


@pytest.mark.unit
@settings(max_examples=PROPERTY_MAX_EXAMPLES, deadline=None)
@given(args=block_args, steps=st.integers(0, 6))
def test_refines_is_a_partial_order(args: tuple[int, int, int], steps: int) -> None:
    n, length, seed = args
    rng = random.Random(seed)
    X = random_block(n, length, rng)
    finer = X
    for _ in range(steps):
        finer = subdivide(finer, rng.randrange(len(finer)), rng.randrange(n))
    assert refines(X, X)
    assert refines(finer, X)
    if refines(X, finer):
        assert X == finer
    finest = subdivide(finer, 0, 0)
    assert refines(finest, X)
