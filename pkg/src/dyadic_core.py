"""
Exact arithmetic of dyadic intervals, subblocks and blocks of the Cantor cube.

A dyadic interval is the set of infinite bit sequences extending a finite prefix
word; words are plain strings over "01" and the empty string is the whole
Cantor set. A subblock is an n-tuple of such words, one per coordinate, and a
block is a finite partition of the cube into subblocks.

Blocks are always held in canonical order: subblocks sorted by their word
tuples, "0" < "1" and a proper prefix before its extensions (Python's own
string order on "01" words).
"""

import random
from bisect import bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import chain
from typing import Iterable, Iterator, Optional, Sequence

from .constants import BITS, EMPTY_WORD_TOKEN
from .logger import get_module_logger

logger = get_module_logger("dyadic_core")


class InvalidInputError(ValueError):
    """Raised when combinatorial input does not describe a legal object."""


class DimensionMismatchError(InvalidInputError):
    def __init__(self, expected: int, actual: int):
        super().__init__(f"Dimension mismatch: expected {expected}, got {actual}")
        self.expected: int = expected
        self.actual: int = actual


class PartitionError(InvalidInputError):
    """Two candidate subblocks overlap."""

    def __init__(self, first: int, second: int, overlap: "Subblock"):
        super().__init__(
            f"Subblocks {first} and {second} overlap in {overlap}"
        )
        self.first: int = first
        self.second: int = second
        self.overlap: Subblock = overlap


class CoverageError(InvalidInputError):
    """Measures do not sum to one; gap > 0 is a deficit, gap < 0 an excess."""

    def __init__(self, gap: Fraction):
        kind = "deficit" if gap > 0 else "excess"
        super().__init__(f"Subblocks do not cover the cube: {kind} of {abs(gap)}")
        self.gap: Fraction = gap


def validate_word(word: str) -> str:
    if not isinstance(word, str) or word.strip(BITS):
        raise InvalidInputError(f"Not a binary word: {word!r}")
    return word


def is_prefix(prefix: str, word: str) -> bool:
    return word.startswith(prefix)


@dataclass(frozen=True, order=True)
class DyadicInterval:
    prefix: str = ""

    def __post_init__(self) -> None:
        validate_word(self.prefix)

    @property
    def measure(self) -> Fraction:
        return Fraction(1, 2 ** len(self.prefix))


def interval_intersect(
    a: DyadicInterval, b: DyadicInterval
) -> Optional[DyadicInterval]:
    if is_prefix(a.prefix, b.prefix):
        return b
    if is_prefix(b.prefix, a.prefix):
        return a
    return None


@dataclass(frozen=True, order=True)
class Subblock:
    words: tuple[str, ...]

    def __post_init__(self) -> None:
        if not isinstance(self.words, tuple):
            object.__setattr__(self, "words", tuple(self.words))
        if not self.words:
            raise InvalidInputError("A subblock needs at least one coordinate")
        for word in self.words:
            validate_word(word)

    @classmethod
    def of(cls, *words: str) -> "Subblock":
        return cls(tuple(words))

    @classmethod
    def whole(cls, dimension: int) -> "Subblock":
        return cls(("",) * dimension)

    @property
    def dimension(self) -> int:
        return len(self.words)

    @property
    def depth(self) -> int:
        return sum(len(word) for word in self.words)

    @property
    def measure(self) -> Fraction:
        return Fraction(1, 2**self.depth)

    def intervals(self) -> tuple[DyadicInterval, ...]:
        return tuple(DyadicInterval(word) for word in self.words)

    def contains(self, other: "Subblock") -> bool:
        return all(map(is_prefix, self.words, other.words))

    def meets(self, other: "Subblock") -> bool:
        return all(
            is_prefix(a, b) or is_prefix(b, a)
            for a, b in zip(self.words, other.words)
        )

    def child(self, coordinate: int, bit: str) -> "Subblock":
        words = list(self.words)
        words[coordinate] += bit
        return Subblock(tuple(words))

    def substitute(self, source: "Subblock", target: "Subblock") -> "Subblock":
        """Carry this subblock, lying inside source, to the matching part of target."""
        return Subblock(
            tuple(
                t + w[len(s) :]
                for w, s, t in zip(self.words, source.words, target.words)
            )
        )

    def __str__(self) -> str:
        return "[" + ", ".join(word or EMPTY_WORD_TOKEN for word in self.words) + "]"


def _check_dimensions(expected: int, actual: int) -> None:
    if expected != actual:
        raise DimensionMismatchError(expected, actual)


def subblock_intersect(a: Subblock, b: Subblock) -> Optional[Subblock]:
    _check_dimensions(a.dimension, b.dimension)
    words = []
    for x, y in zip(a.words, b.words):
        if is_prefix(x, y):
            words.append(y)
        elif is_prefix(y, x):
            words.append(x)
        else:
            return None
    return Subblock(tuple(words))


class _PieceIndex:
    """
    Lookup of subblocks one coordinate at a time.

    Each level sorts the distinct words its pieces carry in one coordinate.
    Pieces sharing a word are indexed again on the next coordinate. The keys
    that are prefixes of a query word come from one bisection plus a parent
    link per key, so lookups never slice the query.
    """

    def __init__(
        self,
        pieces: Sequence[Subblock],
        members: Optional[Iterable[int]] = None,
        coordinate: int = 0,
    ):
        self._pieces = pieces
        self._coordinate = coordinate
        groups: dict[str, list[int]] = {}
        for idx in range(len(pieces)) if members is None else members:
            groups.setdefault(pieces[idx].words[coordinate], []).append(idx)
        self._groups = groups
        self._keys = sorted(groups)
        self._parent: dict[str, Optional[str]] = {}
        stack: list[str] = []
        for key in self._keys:
            while stack and not key.startswith(stack[-1]):
                stack.pop()
            self._parent[key] = stack[-1] if stack else None
            stack.append(key)
        self._children: dict[str, _PieceIndex] = {}
        if pieces and coordinate + 1 < pieces[0].dimension:
            self._children = {
                key: _PieceIndex(pieces, group, coordinate + 1)
                for key, group in groups.items()
                if len(group) > 1
            }
        self.max_first_length = max((len(key) for key in self._keys), default=0)

    def _longest_prefix(self, word: str) -> Optional[str]:
        i = bisect_right(self._keys, word) - 1
        key = self._keys[i] if i >= 0 else None
        # keys that are prefixes of word are all prefixes of the nearest key below it
        while key is not None and not word.startswith(key):
            key = self._parent[key]
        return key

    def _prefix_keys(self, word: str) -> Iterator[str]:
        key = self._longest_prefix(word)
        while key is not None:
            yield key
            key = self._parent[key]

    def _extension_keys(self, word: str) -> Iterator[str]:
        for i in range(bisect_right(self._keys, word), len(self._keys)):
            key = self._keys[i]
            if not key.startswith(word):
                break
            yield key

    def prefixed_by(self, word: str) -> Iterator[int]:
        """Indices of pieces whose word in this coordinate is a prefix of word."""
        for key in self._prefix_keys(word):
            yield from self._groups[key]

    def locate(self, sub: Subblock) -> Optional[int]:
        for key in self._prefix_keys(sub.words[self._coordinate]):
            child = self._children.get(key)
            if child is not None:
                found = child.locate(sub)
                if found is not None:
                    return found
                continue
            for idx in self._groups[key]:
                if self._pieces[idx].contains(sub):
                    return idx
        return None

    def meeting(self, sub: Subblock) -> Iterator[int]:
        word = sub.words[self._coordinate]
        for key in chain(self._prefix_keys(word), self._extension_keys(word)):
            child = self._children.get(key)
            if child is not None:
                yield from child.meeting(sub)
                continue
            for idx in self._groups[key]:
                if self._pieces[idx].meets(sub):
                    yield idx


@dataclass(frozen=True)
class Block:
    """A dyadic block in canonical order. Build untrusted input with validate_block."""

    subblocks: tuple[Subblock, ...]
    dimension: int = field(init=False)

    def __post_init__(self) -> None:
        ordered = tuple(sorted(self.subblocks))
        if not ordered:
            raise InvalidInputError("A block needs at least one subblock")
        object.__setattr__(self, "subblocks", ordered)
        object.__setattr__(self, "dimension", ordered[0].dimension)

    @classmethod
    def trivial(cls, dimension: int) -> "Block":
        if dimension < 1:
            raise InvalidInputError(f"Dimension must be positive, got {dimension}")
        return cls((Subblock.whole(dimension),))

    @classmethod
    def of(cls, *pieces: Sequence[str]) -> "Block":
        """Validated block from word tuples, e.g. Block.of(("0",), ("1",))."""
        subblocks = [Subblock(tuple(words)) for words in pieces]
        return validate_block(subblocks, subblocks[0].dimension if subblocks else 1)

    def __len__(self) -> int:
        return len(self.subblocks)

    def __iter__(self) -> Iterator[Subblock]:
        return iter(self.subblocks)

    def __getitem__(self, index: int) -> Subblock:
        return self.subblocks[index]

    @cached_property
    def _index(self) -> _PieceIndex:
        return _PieceIndex(self.subblocks)

    @cached_property
    def _positions(self) -> dict[Subblock, int]:
        return {sub: idx for idx, sub in enumerate(self.subblocks)}

    def position(self, sub: Subblock) -> Optional[int]:
        """Index of an exact member, or None."""
        return self._positions.get(sub)

    def locate(self, sub: Subblock) -> Optional[int]:
        """Index of the piece containing sub, or None."""
        return self._index.locate(sub)

    def meeting(self, sub: Subblock) -> Iterator[int]:
        return self._index.meeting(sub)

    def candidates(self, first_word: str) -> Iterator[int]:
        """Pieces whose first-coordinate word is a prefix of first_word."""
        return self._index.prefixed_by(first_word)

    @property
    def max_first_length(self) -> int:
        return self._index.max_first_length

    def words(self) -> list[tuple[str, ...]]:
        return [sub.words for sub in self.subblocks]

    def __str__(self) -> str:
        return "{" + ", ".join(str(sub) for sub in self.subblocks) + "}"


def validate_block(candidates: Iterable[Subblock], n: int) -> Block:
    pieces = list(candidates)
    for piece in pieces:
        _check_dimensions(n, piece.dimension)
    if not pieces:
        raise CoverageError(Fraction(1))

    index = _PieceIndex(pieces)
    for i, piece in enumerate(pieces):
        later = [j for j in index.meeting(piece) if j > i]
        if later:
            j = min(later)
            overlap = subblock_intersect(piece, pieces[j])
            assert overlap is not None
            raise PartitionError(i, j, overlap)

    depth = max(piece.depth for piece in pieces)
    total = sum(2 ** (depth - piece.depth) for piece in pieces)
    if total != 2**depth:
        raise CoverageError(Fraction(2**depth - total, 2**depth))
    return Block(tuple(pieces))


def _same_dimension(X: Block, Y: Block) -> None:
    _check_dimensions(X.dimension, Y.dimension)


def refines(X: Block, Y: Block) -> bool:
    """X ⪰ Y: every piece of X lies in some piece of Y."""
    _same_dimension(X, Y)
    return all(Y.locate(piece) is not None for piece in X)


def wedge(X: Block, Y: Block) -> Block:
    """Common refinement: all nonempty pairwise intersections."""
    _same_dimension(X, Y)
    pieces = []
    for x in X:
        for j in Y.meeting(x):
            meet = subblock_intersect(x, Y[j])
            assert meet is not None
            pieces.append(meet)
    return Block(tuple(pieces))


def wedge_all(blocks: Iterable[Block]) -> Block:
    result: Optional[Block] = None
    for block in blocks:
        result = block if result is None else wedge(result, block)
    if result is None:
        raise InvalidInputError("wedge_all needs at least one block")
    return result


def subdivide(X: Block, index: int, coordinate: int) -> Block:
    if not 0 <= index < len(X):
        raise InvalidInputError(f"Subblock index {index} out of range for {len(X)}")
    if not 0 <= coordinate < X.dimension:
        raise InvalidInputError(
            f"Coordinate {coordinate} out of range for dimension {X.dimension}"
        )
    target = X[index]
    pieces = [*X.subblocks[:index], *X.subblocks[index + 1 :]]
    pieces.append(target.child(coordinate, "0"))
    pieces.append(target.child(coordinate, "1"))
    return Block(tuple(pieces))


def random_block(n: int, length: int, rng: random.Random) -> Block:
    """Block of the given length reached by random subdivisions of the cube."""
    if length < 1:
        raise InvalidInputError(f"Block length must be positive, got {length}")
    block = Block.trivial(n)
    while len(block) < length:
        block = subdivide(block, rng.randrange(len(block)), rng.randrange(n))
    return block
