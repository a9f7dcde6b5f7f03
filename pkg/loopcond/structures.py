"""Finite digraphs and hypergraphs whose loop conditions are verified.

An edge enumeration (e_1, ..., e_m) of an n-ary structure induces n terms
s(e_1[i], ..., e_m[i]), one per position i; the loop condition makes them all
equal. The enumeration order is part of the structure.
"""

import os
import re
import sys
from dataclasses import dataclass
from itertools import permutations
from pathlib import Path
from typing import Sequence

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from logger_config import get_logger
from errors import ParseError
from orbits.factor import algebraic_length_one
from relations.relation import SymmetryGroup
from relations.relation_io import read_document
from relations.structure import StructureDocument

logger = get_logger(__name__)


@dataclass(frozen=True)
class ConditionStructure:
    name: str
    vertices: tuple[str, ...]
    edges: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not self.edges:
            raise ParseError(f"Structure {self.name} has no edges")
        arity = len(self.edges[0])
        if arity < 1 or any(len(e) != arity for e in self.edges):
            raise ParseError(f"Edges of {self.name} do not share one arity")
        if any(not 0 <= v < len(self.vertices) for e in self.edges for v in e):
            raise ParseError(f"An edge of {self.name} refers to an unknown vertex")
        if len(set(self.edges)) != len(self.edges):
            raise ParseError(f"The enumeration of {self.name} lists an edge twice")

    @property
    def arity(self) -> int:
        return len(self.edges[0])

    def edge_names(self) -> list[list[str]]:
        return [[self.vertices[v] for v in e] for e in self.edges]

    def to_document(self) -> StructureDocument:
        return StructureDocument(name=self.name, vertices=list(self.vertices), edges=self.edge_names())

    @classmethod
    def from_document(cls, doc: StructureDocument) -> "ConditionStructure":
        return structure_from_edges(doc.edges, doc.name, doc.vertices)


def structure_from_edges(edges: Sequence[Sequence[str]], name: str = "custom",
                         vertices: Sequence[str] | None = None) -> ConditionStructure:
    """Structure from edges given by vertex names; vertices default to first appearance order."""
    order = list(vertices) if vertices else []
    for edge in edges:
        for v in edge:
            if v not in order:
                if vertices:
                    raise ParseError(f"Vertex {v!r} is not declared")
                order.append(v)
    index = {v: i for i, v in enumerate(order)}
    return ConditionStructure(name, tuple(order), tuple(tuple(index[v] for v in e) for e in edges))


def load_structure(path: str | Path) -> ConditionStructure:
    return ConditionStructure.from_document(read_document(path, StructureDocument))


def siggers4() -> ConditionStructure:
    return structure_from_edges([("a", "r"), ("r", "a"), ("e", "r"), ("a", "e")], "siggers4")


def k3() -> ConditionStructure:
    pairs = [("x", "y"), ("y", "x"), ("x", "z"), ("z", "x"), ("y", "z"), ("z", "y")]
    return structure_from_edges(pairs, "k3")


def olsak() -> ConditionStructure:
    columns = ["xxy", "xyx", "yxx", "yyx", "yxy", "xyy"]
    return structure_from_edges([tuple(c) for c in columns], "olsak", ("x", "y"))


def wnu(n: int) -> ConditionStructure:
    """All placements of one y among n - 1 x's; edge l has y at position l."""
    if n < 2:
        raise ParseError(f"wnu needs arity at least 2, got {n}")
    edges = [tuple("y" if j == l else "x" for j in range(n)) for l in range(n)]
    return structure_from_edges(edges, f"wnu{n}", ("x", "y"))


def directed_cycle(n: int) -> ConditionStructure:
    if n < 1:
        raise ParseError(f"A directed cycle needs at least one vertex, got {n}")
    names = [f"x{i + 1}" for i in range(n)]
    return structure_from_edges([(names[i], names[(i + 1) % n]) for i in range(n)], f"cyclic{n}", names)


PRESET_NAMES = ("siggers4", "k3", "olsak", "wnuN", "cyclicN")


def presets(size: int = 3) -> dict[str, ConditionStructure]:
    """The five preset families, the sized ones instantiated at `size`."""
    return {
        "siggers4": siggers4(),
        "k3": k3(),
        "olsak": olsak(),
        f"wnu{size}": wnu(size),
        f"cyclic{size}": directed_cycle(size),
    }


def preset(name: str) -> ConditionStructure:
    """Preset by name: siggers4, k3, olsak, wnu<N>, cyclic<N>.

    Raises:
        ParseError: for an unknown name.
    """
    text = name.strip().lower()
    fixed = {"siggers4": siggers4, "k3": k3, "olsak": olsak}
    if text in fixed:
        return fixed[text]()
    match = re.fullmatch(r"(wnu|cyclic)(\d+)", text)
    if match:
        size = int(match.group(2))
        return wnu(size) if match.group(1) == "wnu" else directed_cycle(size)
    raise ParseError(f"Unknown preset {name!r}; known: {', '.join(PRESET_NAMES)}")


def condition_sides(s: ConditionStructure, symbol: str = "s") -> list[str]:
    """s(e_1[i], ..., e_m[i]) for every position i."""
    names = s.edge_names()
    return [f"{symbol}({','.join(edge[i] for edge in names)})" for i in range(s.arity)]


def condition_identities(s: ConditionStructure, pseudo: bool = False) -> str:
    """The loop condition as one chain of identities.

    With ``pseudo`` every side is wrapped into its own unary symbol u_i.
    """
    sides = condition_sides(s)
    if pseudo:
        sides = [f"u{i + 1}({side})" for i, side in enumerate(sides)]
    return " ≈ ".join(sides)


@dataclass(frozen=True)
class StructureFlags:
    arity: int
    smooth: bool | None
    algebraic_length_one: bool | None
    cyclic: bool
    symmetric: bool
    two_transitive: bool

    @property
    def satisfied(self) -> bool:
        """Smooth of algebraic length 1 for digraphs; cyclic and 2-transitive otherwise."""
        if self.arity == 2:
            return bool(self.smooth and self.algebraic_length_one)
        if self.arity >= 3:
            return self.cyclic and self.two_transitive
        return True

    def failures(self) -> list[str]:
        if self.arity == 2:
            flags = {"smooth": self.smooth, "algebraic length 1": self.algebraic_length_one}
        elif self.arity >= 3:
            flags = {"cyclic": self.cyclic, "2-transitive": self.two_transitive}
        else:
            flags = {}
        return [name for name, flag in flags.items() if not flag]

    def to_dict(self) -> dict:
        return {
            "smooth": self.smooth,
            "algebraic_length_one": self.algebraic_length_one,
            "cyclic": self.cyclic,
            "symmetric": self.symmetric,
            "two_transitive": self.two_transitive,
        }


def _invariant(edges: frozenset, perm: tuple[int, ...]) -> bool:
    return all(tuple(e[perm[j]] for j in range(len(perm))) in edges for e in edges)


def hypothesis_report(s: ConditionStructure) -> StructureFlags:
    n = s.arity
    edges = frozenset(s.edges)
    invariant = tuple(p for p in permutations(range(n)) if _invariant(edges, p))
    shift = tuple((i + 1) % n for i in range(n))
    smooth = length_one = None
    if n == 2:
        smooth = {e[0] for e in edges} == {e[1] for e in edges}
        length_one = algebraic_length_one(range(len(s.vertices)), edges)
    flags = StructureFlags(
        arity=n,
        smooth=smooth,
        algebraic_length_one=length_one,
        cyclic=shift in invariant,
        symmetric=len(invariant) == len(list(permutations(range(n)))),
        two_transitive=SymmetryGroup(n, invariant).is_two_transitive(),
    )
    logger.debug(f"{s.name}: {flags.to_dict()}")
    return flags
