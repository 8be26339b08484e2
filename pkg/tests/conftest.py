"""
Shared pytest fixtures for the nv-blocks test suite.

Named elements used throughout: the half-swap s and the shift A of 1V, the
base shift h0 of 2V and identical pairs on the three-piece block {0, 10, 11}.
"""

import random
from typing import Iterator

import pytest

from src.config import reset_config_cache
from src.dyadic_core import Block, Subblock
from src.element import Element, make_element
from src.roots import base_shift
from tests.test_constants import TEST_SEED

pytest_plugins = ["tests.test_shared_fixtures"]


@pytest.fixture(autouse=True)
def fresh_config() -> Iterator[None]:
    reset_config_cache()
    yield
    reset_config_cache()


@pytest.fixture
def default_caps(monkeypatch: pytest.MonkeyPatch) -> None:
    """Run with the packaged limits whatever the environment sets."""
    for name in ("NV_ORDER_CAP", "NV_SIZE_CAP", "NV_CLOSURE_ORDER_CAP", "NV_CONFIG"):
        monkeypatch.delenv(name, raising=False)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(TEST_SEED)


@pytest.fixture
def halves() -> Block:
    return Block.of(("0",), ("1",))


@pytest.fixture
def three_pieces() -> Block:
    return Block.of(("0",), ("10",), ("11",))


@pytest.fixture
def s(halves: Block) -> Element:
    """Half-swap: 0 -> 1, 1 -> 0."""
    return make_element(halves, halves, [1, 0])


@pytest.fixture
def A() -> Element:
    """Shift of 1V: 0 -> 00, 10 -> 01, 11 -> 1."""
    return make_element(
        [Subblock.of("0"), Subblock.of("10"), Subblock.of("11")],
        [Subblock.of("00"), Subblock.of("01"), Subblock.of("1")],
    )


@pytest.fixture
def h0() -> Element:
    return base_shift()


@pytest.fixture
def transposition(three_pieces: Block) -> Element:
    return make_element(three_pieces, three_pieces, [1, 0, 2])


@pytest.fixture
def three_cycle(three_pieces: Block) -> Element:
    return make_element(three_pieces, three_pieces, [1, 2, 0])


@pytest.fixture
def vertical_swap() -> Element:
    """Swap of the two halves of coordinate 2 in 2V."""
    top = Subblock.of("", "0")
    bottom = Subblock.of("", "1")
    return make_element([top, bottom], [bottom, top])


@pytest.fixture
def baker() -> Element:
    """Baker's map of 2V: the first bit of coordinate 1 moves to the front of coordinate 2."""
    return make_element(
        [Subblock.of("0", ""), Subblock.of("1", "")],
        [Subblock.of("", "0"), Subblock.of("", "1")],
    )
