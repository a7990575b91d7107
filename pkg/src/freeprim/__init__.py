"""Primitive elements of free groups: Whitehead test, exact counts for F_2,
growth rates, and simple closed geodesics on punctured tori."""

from .f2prim import (
    CountTable,
    PrimitiveClass,
    abelianization,
    christoffel,
    count_cyc_reduced_primitive_words,
    count_primitives,
    enumerate_classes,
)
from .whitehead import WhiteheadMove, all_moves, is_primitive, minimize
from .words import format_word, parse_word

__version__ = "0.1.0"
