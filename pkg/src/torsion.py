"""
Torsion detection, invariant blocks and finite closure of torsion subgroups.

A torsion element of nV fixes some block setwise and so acts on it as a
permutation of its pieces; a finitely generated torsion subgroup is finite
because all its generators permute one common invariant block. Caps stand in
for a termination proof: order and closure searches report running past a
limit as a result value, never as an exception.
"""

import math
from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence, Union

from .config import get_limit
from .constants import CONFIG_CLOSURE_ORDER_CAP, CONFIG_ORDER_CAP, CONFIG_SIZE_CAP
from .dyadic_core import (
    Block,
    DimensionMismatchError,
    InvalidInputError,
    Subblock,
    wedge,
    wedge_all,
)
from .element import (
    Element,
    NotAdmissibleError,
    apply_block,
    compose,
    is_identity,
    power,
    power_block_formula,
    refine_domain,
)
from .logger import get_module_logger

logger = get_module_logger("torsion")

Permutation = tuple[int, ...]


class InvalidOrderError(InvalidInputError):
    def __init__(self, p: int, message: Optional[str] = None):
        super().__init__(message or f"Element does not have order dividing {p}")
        self.p: int = p


class NotInvariantError(InvalidInputError):
    """The element does not carry the block onto itself."""


class ClosureConsistencyError(RuntimeError):
    pass


@dataclass(frozen=True)
class Finite:
    order: int


@dataclass(frozen=True)
class ExceedsCap:
    """A search ran past its limits; cap is None when only the size cap applies."""

    cap: Optional[int]
    size_cap: int
    max_block_size: int


OrderResult = Union[Finite, ExceedsCap]


@dataclass(frozen=True)
class STQuadruple:
    i: int
    S: Block
    T: Block
    D: Block
    R: Block


class ClosureStatus(Enum):
    COMPLETE = "complete"
    CAP_EXCEEDED = "cap_exceeded"


@dataclass(frozen=True)
class ClosureResult:
    status: ClosureStatus
    dimension: int
    invariant_block: Optional[Block] = None
    generator_permutations: tuple[Permutation, ...] = ()
    group_order: Optional[int] = None
    elements: Optional[tuple[Permutation, ...]] = None


def _check_dimensions(generators: Sequence[Element]) -> int:
    if not generators:
        raise InvalidInputError("At least one generator is required")
    n = generators[0].dimension
    for g in generators[1:]:
        if g.dimension != n:
            raise DimensionMismatchError(n, g.dimension)
    return n


def _strictly_nested(x: Subblock, y: Subblock) -> bool:
    """y lies strictly inside x, extending its word in every coordinate."""
    return x != y and all(map(str.startswith, y.words, x.words))


def nesting_piece(g: Element) -> Optional[int]:
    """
    Index of a domain piece carried strictly inside itself, or onto a strict enlargement of itself.

    Such a piece is a proof of infinite order: the prefix substitution repeats
    on the nested copy, so the measure of the image changes with every further
    power and never returns to the piece.
    """
    for i, (x, y) in enumerate(g.pairs()):
        if _strictly_nested(x, y) or _strictly_nested(y, x):
            return i
    return None


def order(
    g: Element, cap: Optional[int] = None, size_cap: Optional[int] = None
) -> OrderResult:
    cap = get_limit(CONFIG_ORDER_CAP, cap)
    size_cap = get_limit(CONFIG_SIZE_CAP, size_cap)

    current = g
    largest = len(g)
    for p in range(1, cap + 1):
        if p > 1:
            current = compose(current, g)
            largest = max(largest, len(current))
        if is_identity(current):
            logger.debug(f"order: finite, p = {p}, largest block {largest}")
            return Finite(p)
        if len(current) > size_cap:
            logger.info(f"order: block size {len(current)} passed {size_cap} at power {p}")
            return ExceedsCap(cap, size_cap, largest)
        nested = nesting_piece(current)
        if nested is not None:
            logger.info(f"order: power {p} nests piece {current.domain[nested]} in itself")
            return ExceedsCap(cap, size_cap, largest)
    logger.info(f"order: no identity power up to {cap}")
    return ExceedsCap(cap, size_cap, largest)


def invariant_block(g: Element, p: int) -> Block:
    """X ∧ g(X) ∧ … ∧ g^(p-1)(X) for X = domain(g); any multiple of the order is accepted."""
    if p < 1:
        raise InvalidOrderError(p, f"Order must be positive, got {p}")
    if not is_identity(power(g, p)):
        raise InvalidOrderError(p)
    return power_block_formula(g, p)


def identical_pair(
    g: Element, cap: Optional[int] = None, size_cap: Optional[int] = None
) -> Union[Element, ExceedsCap]:
    """Representative (B, B, σ) of a torsion element on its invariant block."""
    if g.domain == g.range:
        return g
    result = order(g, cap, size_cap)
    if isinstance(result, ExceedsCap):
        return result
    return refine_domain(g, invariant_block(g, result.order))


def _require_identical_pair(g: Element, name: str) -> None:
    if g.domain != g.range:
        raise NotInvariantError(f"{name} is not given on an invariant block: {g.domain}")


def st_sequence(g: Element, h: Element, i: int) -> list[STQuadruple]:
    """Source and target blocks of (gh)^j and (hg)^j for j = 1..i."""
    _check_dimensions([g, h])
    _require_identical_pair(g, "g")
    _require_identical_pair(h, "h")
    if i < 1:
        raise InvalidInputError(f"Step count must be positive, got {i}")

    gh = compose(g, h)
    hg = compose(h, g)
    forward, backward = gh, hg
    steps = []
    for j in range(1, i + 1):
        if j > 1:
            forward = compose(forward, gh)
            backward = compose(backward, hg)
        steps.append(
            STQuadruple(j, forward.domain, forward.range, backward.domain, backward.range)
        )
    return steps


def joint_invariant_block(
    generators: Sequence[Element], size_cap: Optional[int] = None
) -> Union[Block, ExceedsCap]:
    _check_dimensions(generators)
    size_cap = get_limit(CONFIG_SIZE_CAP, size_cap)
    B = wedge_all([g.domain for g in generators] + [g.range for g in generators])
    return _stabilize(B, generators, size_cap)


def _stabilize(
    B: Block, generators: Sequence[Element], size_cap: int
) -> Union[Block, ExceedsCap]:
    """Refine B by generator images until every generator maps it onto itself."""
    rounds = 0
    stable = False
    while not stable:
        stable = True
        rounds += 1
        for g in generators:
            image = apply_block(g, wedge(B, g.domain))
            refined = wedge(B, image)
            if len(refined) > size_cap:
                logger.info(
                    f"joint_invariant_block: {len(refined)} pieces after {rounds} rounds"
                )
                return ExceedsCap(None, size_cap, len(refined))
            if refined != B:
                B = refined
                stable = False
    logger.debug(f"joint_invariant_block: {len(B)} pieces after {rounds} rounds")
    return B


def pair_invariant_block(
    g: Element,
    h: Element,
    cap: Optional[int] = None,
    size_cap: Optional[int] = None,
) -> Union[Block, ExceedsCap]:
    """
    Block invariant under g and h, starting from the S/T/D/R recursion at p = order(gh).

    Tᵖ is fixed by gh and Rᵖ by hg, but neither is always fixed by g and h
    separately, so their wedge is refined further until it is.
    """
    _check_dimensions([g, h])
    size_cap = get_limit(CONFIG_SIZE_CAP, size_cap)
    g_pair = identical_pair(g, cap, size_cap)
    if isinstance(g_pair, ExceedsCap):
        return g_pair
    h_pair = identical_pair(h, cap, size_cap)
    if isinstance(h_pair, ExceedsCap):
        return h_pair
    result = order(compose(g_pair, h_pair), cap, size_cap)
    if isinstance(result, ExceedsCap):
        return result
    last = st_sequence(g_pair, h_pair, result.order)[-1]
    return _stabilize(wedge(last.T, last.R), [g_pair, h_pair], size_cap)


def permutation_on_block(g: Element, B: Block) -> Permutation:
    try:
        image = apply_block(g, B)
    except NotAdmissibleError as e:
        raise NotInvariantError(f"Block is not invariant: {e}") from e
    if image != B:
        raise NotInvariantError(f"Element moves block {B} to {image}")
    targets = []
    for piece in B:
        j = B.position(g.carry(piece))
        assert j is not None
        targets.append(j)
    return tuple(targets)


def permutation_order(sigma: Sequence[int]) -> int:
    seen = [False] * len(sigma)
    result = 1
    for start in range(len(sigma)):
        if seen[start]:
            continue
        length = 0
        i = start
        while not seen[i]:
            seen[i] = True
            i = sigma[i]
            length += 1
        result = math.lcm(result, length)
    return result


def _then(first: Permutation, second: Permutation) -> Permutation:
    return tuple(second[i] for i in first)


def enumerate_group(
    generators: Sequence[Permutation], order_cap: int
) -> Optional[list[Permutation]]:
    """Breadth-first product closure; None once more than order_cap elements appear."""
    size = len(generators[0]) if generators else 0
    start = tuple(range(size))
    seen = {start}
    found = [start]
    frontier = deque([start])
    while frontier:
        current = frontier.popleft()
        for gen in generators:
            nxt = _then(current, gen)
            if nxt not in seen:
                seen.add(nxt)
                found.append(nxt)
                if len(found) > order_cap:
                    return None
                frontier.append(nxt)
    return found


def closure(
    generators: Sequence[Element],
    size_cap: Optional[int] = None,
    order_cap: Optional[int] = None,
    cap: Optional[int] = None,
    keep_elements: bool = False,
) -> ClosureResult:
    n = _check_dimensions(generators)
    size_cap = get_limit(CONFIG_SIZE_CAP, size_cap)
    order_cap = get_limit(CONFIG_CLOSURE_ORDER_CAP, order_cap)
    cap = get_limit(CONFIG_ORDER_CAP, cap)

    for idx, g in enumerate(generators):
        if isinstance(order(g, cap, size_cap), ExceedsCap):
            logger.info(f"closure: generator {idx} is not detected as torsion")
            return ClosureResult(ClosureStatus.CAP_EXCEEDED, n)

    B = joint_invariant_block(generators, size_cap)
    if isinstance(B, ExceedsCap):
        return ClosureResult(ClosureStatus.CAP_EXCEEDED, n)

    try:
        perms = tuple(permutation_on_block(g, B) for g in generators)
    except NotInvariantError as e:
        raise ClosureConsistencyError(f"Joint invariant block is not invariant: {e}") from e

    group = enumerate_group(perms, order_cap)
    if group is None:
        logger.info(f"closure: more than {order_cap} elements on {len(B)} pieces")
        return ClosureResult(ClosureStatus.CAP_EXCEEDED, n, B, perms)

    logger.debug(f"closure: order {len(group)} on {len(B)} pieces")
    return ClosureResult(
        ClosureStatus.COMPLETE,
        n,
        B,
        perms,
        len(group),
        tuple(group) if keep_elements else None,
    )
