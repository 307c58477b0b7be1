"""Prediction records shared by the case modules and the harness."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .projdyn import binary_tree_encoding, level_tree_encoding

# tree shape kinds
BINARY = "binary"  # root one child, other non-leaves two children
BARE = "bare"  # no tree at all
CASE2_INFINITY = "case2-infinity"  # root, level 2 single-child; rest binary
CASE3_SPECIAL = "case3-special"  # root and level 1 single-child; rest binary


def shape_encoding(shape: str, depth: int) -> str:
    if shape == BARE or depth <= 0:
        return "()"
    if shape == BINARY:
        return binary_tree_encoding(depth)
    if shape == CASE2_INFINITY:
        levels = [1, 2, 1] + [2] * max(depth - 3, 0)
        return level_tree_encoding(levels[:depth])
    if shape == CASE3_SPECIAL:
        return level_tree_encoding(([1, 1] + [2] * max(depth - 2, 0))[:depth])
    raise ValueError(f"unknown tree shape {shape!r}")


@dataclass(frozen=True)
class TreeSpec:
    """``roots`` cyclic vertices on cycles of length ``cycle_length`` all
    carry a tree of the given shape and depth."""

    tag: str
    cycle_length: int
    roots: int
    shape: str
    depth: int

    def encoding(self) -> str:
        return shape_encoding(self.shape, self.depth)


@dataclass
class StructureReport:
    cycle_spectrum: tuple[tuple[int, int], ...]
    tree_plan: list[TreeSpec]
    notes: list[str] = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    @property
    def components(self) -> int:
        return sum(c for _, c in self.cycle_spectrum)

    def rooted_shapes(self) -> Counter:
        out: Counter = Counter()
        for t in self.tree_plan:
            if t.roots:
                out[(t.cycle_length, t.encoding())] += t.roots
        return out

    def to_dict(self) -> dict:
        return {
            "cycle_spectrum": [list(x) for x in self.cycle_spectrum],
            "components": self.components,
            "tree_plan": [
                {
                    "tag": t.tag,
                    "cycle_length": t.cycle_length,
                    "roots": t.roots,
                    "shape": t.shape,
                    "depth": t.depth,
                }
                for t in self.tree_plan
            ],
            "notes": list(self.notes),
        }


def merge_spectrum(pairs) -> tuple[tuple[int, int], ...]:
    total: Counter = Counter()
    for length, count in pairs:
        if count:
            total[length] += count
    return tuple(sorted(total.items()))
