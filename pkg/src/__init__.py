"""
nv-blocks

Exact computation in the Brin-Thompson groups nV: dyadic block pairs,
composition and powers, torsion orders, invariant blocks, finite closures
of torsion subgroups and the square-root chain of the dyadic rationals in 2V.
"""

__version__ = "0.1.0"

from .dyadic_core import Block, Subblock, refines, validate_block, wedge
from .element import (
    Element,
    Point,
    apply_block,
    apply_point,
    compose,
    equal,
    identity,
    inverse,
    make_element,
    power,
    reduce,
)
from .roots import DyadicRational, base_shift, dyadic_to_element, root_chain
from .torsion import ExceedsCap, Finite, closure, invariant_block, order

__all__ = [
    "Block",
    "DyadicRational",
    "Element",
    "ExceedsCap",
    "Finite",
    "Point",
    "Subblock",
    "apply_block",
    "apply_point",
    "base_shift",
    "closure",
    "compose",
    "dyadic_to_element",
    "equal",
    "identity",
    "invariant_block",
    "inverse",
    "make_element",
    "order",
    "power",
    "reduce",
    "refines",
    "root_chain",
    "validate_block",
    "wedge",
    "__version__",
]
