"""Witness terms: composition trees over generator orbits.

A ``Generator(i)`` stands for the i-th basis orbit of a relation; an
``Apply`` node applies an operation to the values of two sub-terms arranged by
an ``Alignment``. Terms are DAGs (sub-terms are shared, never copied), so every
traversal here is iterative with a memo keyed by node identity.
"""

import os
import sys
from dataclasses import dataclass
from typing import Sequence, Union

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from errors import InconsistentAlignment, ParseError
from ops.alignment import Alignment, orbit_image
from ops.temporal_ops import OpKind, dual_of
from orbits.weak_order import WeakOrder


@dataclass(frozen=True, eq=False)
class Generator:
    index: int

    def __str__(self) -> str:
        return f"g{self.index}"


@dataclass(frozen=True, eq=False)
class Apply:
    kind: OpKind
    alignment: Alignment
    left: "Term"
    right: "Term"


Term = Union[Generator, Apply]


def postorder(root: Term) -> list[Term]:
    """Distinct nodes, children before parents."""
    order, seen = [], set()
    stack = [(root, False)]
    while stack:
        node, expanded = stack.pop()
        if id(node) in seen:
            continue
        if isinstance(node, Generator) or expanded:
            seen.add(id(node))
            order.append(node)
            continue
        stack.append((node, True))
        stack.append((node.right, False))
        stack.append((node.left, False))
    return order


def term_size(term: Term) -> int:
    return len(postorder(term))


def term_depth(term: Term) -> int:
    depth: dict[int, int] = {}
    for node in postorder(term):
        if isinstance(node, Generator):
            depth[id(node)] = 0
        else:
            depth[id(node)] = 1 + max(depth[id(node.left)], depth[id(node.right)])
    return depth[id(term)]


def generator_indices(term: Term) -> frozenset[int]:
    return frozenset(node.index for node in postorder(term) if isinstance(node, Generator))


def evaluate_orbit(term: Term, generators: Sequence[WeakOrder]) -> WeakOrder:
    """Orbit produced by a term when generator i ranges over orbit ``generators[i]``.

    Raises:
        ParseError: if a generator index is not bound.
        InconsistentAlignment: if an alignment does not restrict to its children's orbits.
    """
    value: dict[int, WeakOrder] = {}
    for node in postorder(term):
        if isinstance(node, Generator):
            if not 0 <= node.index < len(generators):
                raise ParseError(f"Generator {node.index} is not bound ({len(generators)} given)")
            value[id(node)] = generators[node.index]
            continue
        left, right = value[id(node.left)], value[id(node.right)]
        if not node.alignment.matches(left, right):
            raise InconsistentAlignment(
                f"Alignment {node.alignment.joint} does not restrict to {left} and {right}")
        value[id(node)] = orbit_image(node.kind, node.alignment)
    return value[id(term)]


def dualize_term(term: Term) -> Term:
    """The term computing the reversed orbit from reversed generators."""
    image: dict[int, Term] = {}
    for node in postorder(term):
        if isinstance(node, Generator):
            image[id(node)] = node
        else:
            al = node.alignment
            flipped = Alignment(al.joint.reversed_order(), al.width, al.constant)
            image[id(node)] = Apply(dual_of(node.kind), flipped, image[id(node.left)], image[id(node.right)])
    return image[id(term)]


def term_to_table(term: Term) -> tuple[list[dict], int]:
    """Node table (children first) and the root index; shared nodes appear once."""
    index: dict[int, int] = {}
    table: list[dict] = []
    for node in postorder(term):
        index[id(node)] = len(table)
        if isinstance(node, Generator):
            table.append({"op": "gen", "index": node.index})
        else:
            table.append({
                "op": str(node.kind),
                "alignment": node.alignment.to_dict(),
                "left": index[id(node.left)],
                "right": index[id(node.right)],
            })
    return table, index[id(term)]


def term_from_table(table: Sequence[dict], root: int) -> Term:
    nodes: list[Term] = []
    for position, entry in enumerate(table):
        if entry["op"] == "gen":
            nodes.append(Generator(int(entry["index"])))
            continue
        left, right = int(entry["left"]), int(entry["right"])
        if not (0 <= left < position and 0 <= right < position):
            raise ParseError(f"Term node {position} refers forward to {left}/{right}")
        nodes.append(Apply(OpKind.parse(entry["op"]), Alignment.from_dict(entry["alignment"]),
                           nodes[left], nodes[right]))
    if not 0 <= root < len(nodes):
        raise ParseError(f"Term root {root} outside of a table of {len(nodes)} nodes")
    return nodes[root]


def render(term: Term) -> str:
    """Compact infix rendering, e.g. ``min(g0, g1)``."""
    text: dict[int, str] = {}
    for node in postorder(term):
        if isinstance(node, Generator):
            text[id(node)] = str(node)
        else:
            text[id(node)] = f"{node.kind}({text[id(node.left)]}, {text[id(node.right)]})"
    return text[id(term)]
