"""
Elements of the Brin-Thompson group nV as dyadic block pairs.

An element is a domain block X, a range block Y of the same length and a
pairing i -> pairing[i]; piece X_i is carried onto Y_pairing[i] by replacing
the prefix words of X_i with those of Y_pairing[i], coordinate by coordinate.

Products follow the group-theory convention gh = "apply g, then h".
"""

import random
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Mapping, Optional, Sequence, Union

from .dyadic_core import (
    Block,
    DimensionMismatchError,
    InvalidInputError,
    Subblock,
    random_block,
    refines,
    subblock_intersect,
    validate_block,
    validate_word,
    wedge,
)
from .logger import get_module_logger

logger = get_module_logger("element")

BlockLike = Union[Block, Sequence[Subblock]]
PairingLike = Union[Sequence[int], Mapping[int, int]]


class ElementError(InvalidInputError):
    """Raised when a block pair with pairing does not describe an element."""


class NotAdmissibleError(ElementError):
    def __init__(self, block: Block, reason: str = "does not refine the domain"):
        super().__init__(f"Block {block} is not admissible: {reason}")
        self.block: Block = block


def _canonical_tail(prefix: str, period: str) -> tuple[str, str]:
    validate_word(prefix)
    validate_word(period)
    if not period:
        raise InvalidInputError("A point period must be nonempty")
    size = len(period)
    for d in range(1, size + 1):
        if size % d == 0 and period[:d] * (size // d) == period:
            period = period[:d]
            break
    while prefix and prefix[-1] == period[-1]:
        prefix = prefix[:-1]
        period = period[-1] + period[:-1]
    return prefix, period


@dataclass(frozen=True)
class Point:
    """An eventually periodic point: per coordinate, prefix then period forever."""

    coordinates: tuple[tuple[str, str], ...]

    def __post_init__(self) -> None:
        if not self.coordinates:
            raise InvalidInputError("A point needs at least one coordinate")
        object.__setattr__(
            self,
            "coordinates",
            tuple(_canonical_tail(prefix, period) for prefix, period in self.coordinates),
        )

    @classmethod
    def of(cls, *coordinates: tuple[str, str]) -> "Point":
        return cls(tuple(coordinates))

    @property
    def dimension(self) -> int:
        return len(self.coordinates)

    def bits(self, coordinate: int, length: int) -> str:
        prefix, period = self.coordinates[coordinate]
        if len(prefix) >= length:
            return prefix[:length]
        repeats = -(-(length - len(prefix)) // len(period))
        return (prefix + period * repeats)[:length]

    def drop(self, coordinate: int, count: int) -> tuple[str, str]:
        prefix, period = self.coordinates[coordinate]
        if count <= len(prefix):
            return prefix[count:], period
        shift = (count - len(prefix)) % len(period)
        return "", period[shift:] + period[:shift]

    def in_subblock(self, sub: Subblock) -> bool:
        return all(
            self.bits(k, len(word)) == word for k, word in enumerate(sub.words)
        )


@dataclass(frozen=True)
class Element:
    domain: Block
    range: Block
    pairing: tuple[int, ...]

    @property
    def dimension(self) -> int:
        return self.domain.dimension

    def __len__(self) -> int:
        return len(self.domain)

    def pairs(self) -> Iterator[tuple[Subblock, Subblock]]:
        for i, x in enumerate(self.domain):
            yield x, self.range[self.pairing[i]]

    @cached_property
    def _preimage_index(self) -> tuple[int, ...]:
        inverse = [0] * len(self.pairing)
        for i, j in enumerate(self.pairing):
            inverse[j] = i
        return tuple(inverse)

    def carry(self, sub: Subblock) -> Subblock:
        """Image of a subblock lying inside one domain piece."""
        i = self.domain.locate(sub)
        if i is None:
            raise NotAdmissibleError(
                self.domain, f"{sub} lies in no single domain piece"
            )
        return sub.substitute(self.domain[i], self.range[self.pairing[i]])

    def carry_back(self, sub: Subblock) -> Subblock:
        """Preimage of a subblock lying inside one range piece."""
        j = self.range.locate(sub)
        if j is None:
            raise NotAdmissibleError(self.range, f"{sub} lies in no single range piece")
        return sub.substitute(self.range[j], self.domain[self._preimage_index[j]])

    def __str__(self) -> str:
        return "; ".join(f"{x} -> {y}" for x, y in self.pairs())


def _from_pairs(pairs: Sequence[tuple[Subblock, Subblock]]) -> Element:
    """Element from trusted (domain piece, range piece) pairs."""
    ordered = sorted(pairs)
    domain = Block(tuple(x for x, _ in ordered))
    codomain = Block(tuple(y for _, y in ordered))
    pairing = []
    for _, y in ordered:
        j = codomain.position(y)
        assert j is not None
        pairing.append(j)
    return Element(domain, codomain, tuple(pairing))


def _validated_pieces(block: BlockLike, dimension: int) -> list[Subblock]:
    pieces = list(block)
    if not isinstance(block, Block):
        validate_block(pieces, dimension)
    return pieces


def make_element(
    X: BlockLike, Y: BlockLike, pairing: Optional[PairingLike] = None
) -> Element:
    """Validated element; pairing indexes the given sequences (identity when omitted)."""
    xs = list(X)
    ys = list(Y)
    if len(xs) != len(ys):
        raise ElementError(f"Block length mismatch: {len(xs)} != {len(ys)}")
    if not xs:
        raise ElementError("An element needs nonempty blocks")
    n = xs[0].dimension
    if ys[0].dimension != n:
        raise DimensionMismatchError(n, ys[0].dimension)
    xs = _validated_pieces(X, n)
    ys = _validated_pieces(Y, n)

    m = len(xs)
    if pairing is None:
        targets = list(range(m))
    elif isinstance(pairing, Mapping):
        if sorted(pairing) != list(range(m)):
            raise ElementError(f"Pairing must be defined on 0..{m - 1}")
        targets = [pairing[i] for i in range(m)]
    else:
        targets = list(pairing)
    if sorted(targets) != list(range(m)):
        raise ElementError(f"Pairing {targets} is not a bijection on 0..{m - 1}")

    return _from_pairs([(xs[i], ys[targets[i]]) for i in range(m)])


def identity(n: int) -> Element:
    trivial = Block.trivial(n)
    return Element(trivial, trivial, (0,))


def inverse(g: Element) -> Element:
    return _from_pairs([(y, x) for x, y in g.pairs()])


def _same_dimension(a: int, b: int) -> None:
    if a != b:
        raise DimensionMismatchError(a, b)


def is_admissible(g: Element, Z: Block) -> bool:
    """Whether Z refines the stored domain; use refine_domain or image_block otherwise."""
    _same_dimension(g.dimension, Z.dimension)
    return refines(Z, g.domain)


def apply_block(g: Element, Z: Block) -> Block:
    if not is_admissible(g, Z):
        raise NotAdmissibleError(Z)
    return Block(tuple(g.carry(z) for z in Z))


def refine_domain(g: Element, Z: Block) -> Element:
    _same_dimension(g.dimension, Z.dimension)
    return _from_pairs([(w, g.carry(w)) for w in wedge(g.domain, Z)])


def image_block(g: Element, Z: Block) -> Block:
    """g(Z) for any Z the denoted map carries piecewise onto subblocks."""
    _same_dimension(g.dimension, Z.dimension)
    images = []
    for z in Z:
        target: Optional[tuple[str, ...]] = None
        for i in g.domain.meeting(z):
            x = g.domain[i]
            part = subblock_intersect(z, x)
            assert part is not None
            moved = part.substitute(x, g.range[g.pairing[i]])
            candidate = []
            for zw, pw, mw in zip(z.words, part.words, moved.words):
                suffix = pw[len(zw) :]
                if not mw.endswith(suffix):
                    raise NotAdmissibleError(Z, f"{z} is split by the map")
                candidate.append(mw[: len(mw) - len(suffix)])
            if target is None:
                target = tuple(candidate)
            elif target != tuple(candidate):
                raise NotAdmissibleError(Z, f"{z} is split by the map")
        assert target is not None
        images.append(Subblock(target))
    return Block(tuple(images))


def admits(g: Element, Z: Block) -> bool:
    try:
        image_block(g, Z)
    except NotAdmissibleError:
        return False
    return True


def apply_point(g: Element, p: Point) -> Point:
    _same_dimension(g.dimension, p.dimension)
    first = p.bits(0, g.domain.max_first_length)
    for i in g.domain.candidates(first):
        x = g.domain[i]
        if p.in_subblock(x):
            y = g.range[g.pairing[i]]
            coordinates = []
            for k in range(p.dimension):
                prefix, period = p.drop(k, len(x.words[k]))
                coordinates.append((y.words[k] + prefix, period))
            return Point(tuple(coordinates))
    raise ElementError(f"No domain piece contains {p}")  # unreachable for a partition


def compose(g: Element, h: Element) -> Element:
    """The product gh: apply g, then h."""
    _same_dimension(g.dimension, h.dimension)
    middle = wedge(g.range, h.domain)
    return _from_pairs([(g.carry_back(w), h.carry(w)) for w in middle])


def power(g: Element, k: int) -> Element:
    if k == 0:
        return identity(g.dimension)
    base = g if k > 0 else inverse(g)
    result = base
    for step in range(2, abs(k) + 1):
        result = compose(result, base)
        logger.debug(f"power step {step}: block length {len(result)}")
    return result


def power_block_formula(g: Element, i: int) -> Block:
    """Target block of the i-th power from the nested fold B <- g(B ∧ X)."""
    if i < 1:
        raise InvalidInputError(f"Power index must be positive, got {i}")
    X = g.domain
    B = X
    for _ in range(i):
        B = apply_block(g, wedge(B, X))
    return B


def is_identity(g: Element) -> bool:
    return all(x == y for x, y in g.pairs())


def equal(g: Element, h: Element) -> bool:
    _same_dimension(g.dimension, h.dimension)
    return is_identity(compose(g, inverse(h)))


def _replace(sub: Subblock, coordinate: int, word: str) -> Subblock:
    words = list(sub.words)
    words[coordinate] = word
    return Subblock(tuple(words))


def reduce(g: Element) -> Element:
    """Greedily merge sibling pieces whose images are siblings the same way."""
    mapping = dict(g.pairs())
    merged = True
    while merged:
        merged = False
        for k in range(g.dimension):
            for x in sorted(mapping):
                if x not in mapping:
                    continue
                word = x.words[k]
                if not word.endswith("0"):
                    continue
                sibling = _replace(x, k, word[:-1] + "1")
                if sibling not in mapping:
                    continue
                y0, y1 = mapping[x], mapping[sibling]
                image = y0.words[k]
                if not image.endswith("0") or y1 != _replace(y0, k, image[:-1] + "1"):
                    continue
                del mapping[x]
                del mapping[sibling]
                mapping[_replace(x, k, word[:-1])] = _replace(y0, k, image[:-1])
                merged = True
    reduced = _from_pairs(list(mapping.items()))
    logger.debug(f"reduce: {len(g)} -> {len(reduced)} pieces")
    return reduced


def complexity(g: Element) -> int:
    """Block length of the reduced representative."""
    return len(reduce(g))


def embed(g: Element, n: int) -> Element:
    """Lift g into nV, acting trivially on the added coordinates."""
    if n < g.dimension:
        raise InvalidInputError(f"Cannot embed dimension {g.dimension} into {n}")
    pad = ("",) * (n - g.dimension)
    return _from_pairs(
        [(Subblock(x.words + pad), Subblock(y.words + pad)) for x, y in g.pairs()]
    )


def random_element(n: int, target_blocks: int, seed: int) -> Element:
    rng = random.Random(seed)
    X = random_block(n, target_blocks, rng)
    Y = random_block(n, target_blocks, rng)
    targets = list(range(target_blocks))
    rng.shuffle(targets)
    return _from_pairs([(x, Y[targets[i]]) for i, x in enumerate(X)])


def random_torsion(
    n: int, target_blocks: int, seed: int, conjugate: bool = False
) -> Element:
    """Identical block pair (X, X, σ), optionally conjugated by a random element."""
    rng = random.Random(seed)
    X = random_block(n, target_blocks, rng)
    targets = list(range(target_blocks))
    rng.shuffle(targets)
    g = _from_pairs([(x, X[targets[i]]) for i, x in enumerate(X)])
    if conjugate:
        c = random_element(n, target_blocks, rng.randrange(2**32))
        g = compose(compose(inverse(c), g), c)
    return g
