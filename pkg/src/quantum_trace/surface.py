"""Combinatorial triangulated surfaces.

Only the dual combinatorics is stored: triangles with their sides listed clockwise and the
gluing classes of side slots (one edge label per class). Marked points are never materialized.

A `.surf` file lists one triangle per line::

    # once-punctured torus
    triangle t1: a b c
    triangle t2: a b c

An edge label used twice is internal, once is a boundary edge. Labels used three or more
times are rejected, and so are gluings that do not form a connected surface.
"""

from dataclasses import dataclass
from enum import Enum
import logging
import re
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import networkx as nx

from .errors import ConnectivityError, GluingError, ParseError, UnknownEdge

SideSlot = Tuple[int, int]
"""(triangle index, side index) with sides numbered 0, 1, 2 clockwise."""

_TRIANGLE_RE = re.compile(r"^triangle\s+(?P<name>[A-Za-z_][\w.]*)\s*:\s*(?P<sides>.*)$")
_LABEL_RE = re.compile(r"^[A-Za-z_][\w.]*$")


@dataclass(frozen=True)
class Triangle:
    """A triangle with three edge labels listed clockwise."""

    name: str
    sides: Tuple[str, str, str]


@dataclass(frozen=True)
class Corner:
    """The corner of a triangle between side ``first`` and the clockwise-next side."""

    triangle: int
    first: int

    @property
    def second(self) -> int:
        return (self.first + 1) % 3


class Triangulation:
    """A validated triangulation.

    Args:
        triangles (Sequence[Triangle]): Triangles in file order.
        lines (Optional[Sequence[int]]): Source line of every triangle, used in error messages.

    Raises:
        ParseError: If there is no triangle or a triangle name repeats.
        GluingError: If an edge label occupies three or more side slots.
        ConnectivityError: If the gluing has more than one component.
    """

    def __init__(
        self, triangles: Sequence[Triangle], lines: Optional[Sequence[int]] = None
    ) -> None:
        if not triangles:
            raise ParseError("a surface needs at least one triangle")
        self.triangles: Tuple[Triangle, ...] = tuple(triangles)
        self._index: Dict[str, int] = {}
        slots: Dict[str, List[SideSlot]] = {}
        for t_index, triangle in enumerate(self.triangles):
            line = lines[t_index] if lines else None
            if triangle.name in self._index:
                raise ParseError(f"triangle {triangle.name} defined twice", line=line)
            self._index[triangle.name] = t_index
            for side, label in enumerate(triangle.sides):
                slots.setdefault(label, []).append((t_index, side))
                if len(slots[label]) > 2:
                    raise GluingError(f"edge {label} used more than twice", line=line)
        self.edges: Tuple[str, ...] = tuple(slots)
        self.slots: Dict[str, Tuple[SideSlot, ...]] = {e: tuple(s) for e, s in slots.items()}
        self._check_connected()

    def _check_connected(self) -> None:
        graph = nx.Graph()
        graph.add_nodes_from(range(len(self.triangles)))
        for slot_list in self.slots.values():
            if len(slot_list) == 2:
                graph.add_edge(slot_list[0][0], slot_list[1][0])
        components = nx.number_connected_components(graph)
        if components != 1:
            raise ConnectivityError(f"gluing has {components} components, expected 1")

    @property
    def triangle_count(self) -> int:
        return len(self.triangles)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def triangle_index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownEdge(f"unknown triangle {name}") from None

    def edge_at(self, slot: SideSlot) -> str:
        t_index, side = slot
        return self.triangles[t_index].sides[side]

    def is_boundary(self, edge: str) -> bool:
        return len(self.edge_slots(edge)) == 1

    def is_self_folded(self, edge: str) -> bool:
        slot_list = self.edge_slots(edge)
        return len(slot_list) == 2 and slot_list[0][0] == slot_list[1][0]

    def edge_slots(self, edge: str) -> Tuple[SideSlot, ...]:
        try:
            return self.slots[edge]
        except KeyError:
            raise UnknownEdge(f"unknown edge {edge}") from None

    def other_slot(self, slot: SideSlot) -> Optional[SideSlot]:
        """Return the side slot glued to ``slot``, or None on a boundary edge."""
        for candidate in self.edge_slots(self.edge_at(slot)):
            if candidate != slot:
                return candidate
        return None

    def corners(self) -> Iterator[Corner]:
        """Iterate corners per (triangle, clockwise side pair)."""
        for t_index in range(len(self.triangles)):
            for first in range(3):
                yield Corner(t_index, first)


def parse_surface(text: str, path: Optional[str] = None) -> Triangulation:
    """Parse a `.surf` document.

    Args:
        text (str): File contents.
        path (Optional[str]): File name used in error messages.

    Raises:
        ParseError: On syntax errors.
        GluingError: If a label is used three or more times.
        ConnectivityError: If the surface is disconnected.

    Returns:
        Triangulation: The validated triangulation.
    """
    triangles: List[Triangle] = []
    lines: List[int] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        match = _TRIANGLE_RE.match(line)
        if match is None:
            raise ParseError(
                f"expected 'triangle <name>: <e> <e> <e>', got {line!r}", path, number
            )
        labels = match.group("sides").split()
        if len(labels) != 3 or not all(_LABEL_RE.match(label) for label in labels):
            raise ParseError("a triangle needs exactly three edge labels", path, number)
        if any(label.endswith("'") for label in labels):
            raise ParseError("edge labels may not end with a prime", path, number)
        triangles.append(Triangle(match.group("name"), (labels[0], labels[1], labels[2])))
        lines.append(number)
    try:
        surface = Triangulation(triangles, lines)
    except (ParseError, GluingError, ConnectivityError) as err:
        raise err.with_path(path) if path else err
    logging.info(f"Parsed surface: {surface.triangle_count} triangles, {surface.edge_count} edges")
    return surface


class ExchangeMatrix:
    """Antisymmetric signed corner count between edges.

    ``matrix[e, f]`` is the number of corners (e, f) minus the number of corners (f, e), read
    clockwise and summed over all triangles.
    """

    def __init__(self, edges: Sequence[str], entries: Dict[Tuple[str, str], int]) -> None:
        self.edges = tuple(edges)
        self._entries = dict(entries)

    def __getitem__(self, key: Tuple[str, str]) -> int:
        e, f = key
        if e not in self.edges or f not in self.edges:
            raise UnknownEdge(f"unknown edge pair ({e}, {f})")
        return self._entries.get((e, f), 0)

    def rows(self) -> List[List[int]]:
        return [[self[e, f] for f in self.edges] for e in self.edges]

    def is_antisymmetric(self) -> bool:
        return all(self[e, f] == -self[f, e] for e in self.edges for f in self.edges)


def exchange_matrix(surface: Triangulation) -> ExchangeMatrix:
    entries: Dict[Tuple[str, str], int] = {}
    for corner in surface.corners():
        sides = surface.triangles[corner.triangle].sides
        e, f = sides[corner.first], sides[corner.second]
        entries[(e, f)] = entries.get((e, f), 0) + 1
        entries[(f, e)] = entries.get((f, e), 0) - 1
    return ExchangeMatrix(surface.edges, entries)


class CopyRole(str, Enum):
    """Side of a biangle an edge copy belongs to.

    Attributes:
        OUT (str): Copy named ``e``; faces the triangle of the first side slot of ``e``.
        IN (str): Copy named ``e'``; faces the second side slot, or is a boundary arc.
    """

    OUT = "out"
    IN = "in"


@dataclass(frozen=True)
class EdgeCopy:
    """One of the two split copies of an edge.

    Attributes:
        name (str): ``e`` or ``e'``.
        edge (str): Edge label of the original triangulation.
        role (CopyRole): Biangle side.
        face (Optional[SideSlot]): Triangle side glued to the copy; None for a boundary arc.
    """

    name: str
    edge: str
    role: CopyRole
    face: Optional[SideSlot]

    @property
    def is_boundary_arc(self) -> bool:
        return self.face is None

    @property
    def orientation(self) -> int:
        """Biangle boundary orientation: +1 toward increasing slot, -1 toward decreasing."""
        return 1 if self.role == CopyRole.OUT else -1


class SplitStructure:
    """The split triangulation: one biangle per edge between copies ``e`` (out) and ``e'`` (in).

    Every triangle keeps three distinct side copies even when it is self-folded.
    """

    def __init__(self, surface: Triangulation) -> None:
        self.triangulation = surface
        self.copies: Dict[str, EdgeCopy] = {}
        sides: Dict[SideSlot, str] = {}
        for edge in surface.edges:
            slot_list = surface.edge_slots(edge)
            out_copy = EdgeCopy(edge, edge, CopyRole.OUT, slot_list[0])
            in_face = slot_list[1] if len(slot_list) == 2 else None
            in_copy = EdgeCopy(f"{edge}'", edge, CopyRole.IN, in_face)
            for copy in (out_copy, in_copy):
                self.copies[copy.name] = copy
                if copy.face is not None:
                    sides[copy.face] = copy.name
        self._sides = sides

    @property
    def biangles(self) -> Tuple[str, ...]:
        return self.triangulation.edges

    def copy(self, name: str) -> EdgeCopy:
        try:
            return self.copies[name]
        except KeyError:
            raise UnknownEdge(f"unknown edge copy {name}") from None

    def out_copy(self, edge: str) -> EdgeCopy:
        return self.copy(edge)

    def in_copy(self, edge: str) -> EdgeCopy:
        return self.copy(f"{edge}'")

    def side_copy(self, slot: SideSlot) -> EdgeCopy:
        """Return the copy glued to a triangle side."""
        return self.copies[self._sides[slot]]


def split(surface: Triangulation) -> SplitStructure:
    return SplitStructure(surface)
