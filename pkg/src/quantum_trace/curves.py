"""Compilation of simple multicurves given as corner-turn words.

A closed curve in minimal position with respect to the triangulation crosses every triangle as
a sequence of corner arcs. It is written as a cyclic word of steps ``t:<entry>-<exit>`` with
1-based side numbers, e.g. the once-punctured torus loop ``t1:2-3 t2:3-2``.

Parallel arcs around the same corner are nested by walking the two curves away from the corner
in both directions until they diverge: the strand that turns left first lies on the left. The
two walks must agree, otherwise the curves cross and the word is rejected with `NotSimple`.
"""

from dataclasses import dataclass
import functools
import logging
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import NotSimple, ParseError
from .surface import CopyRole, SideSlot, SplitStructure, Triangulation
from .tangle import (
    BiangleWord,
    CurveWord,
    Generator,
    Juncture,
    TanglePresentation,
    TriangleSegment,
)


@dataclass(frozen=True)
class _Arc:
    component: int
    index: int
    triangle: int
    entry: int
    exit: int

    @property
    def left(self) -> bool:
        return self.exit == (self.entry + 1) % 3

    @property
    def corner(self) -> int:
        return self.entry if self.left else self.exit


@dataclass(frozen=True)
class _Traveler:
    """An arc traversed from the first side of its corner to the second one."""

    arc: _Arc

    @property
    def reversed(self) -> bool:
        return not self.arc.left


def check_curve(surface: Triangulation, word: CurveWord) -> List[Tuple[int, int, int]]:
    """Validate the gluing of a corner-turn word.

    Args:
        surface (Triangulation): The surface.
        word (CurveWord): Cyclic sequence of corner steps.

    Raises:
        ParseError: If the word is empty or two consecutive steps are not glued.
        NotSimple: If the curve runs into a boundary edge.

    Returns:
        List[Tuple[int, int, int]]: (triangle index, entry side, exit side) per step.
    """
    if not word:
        raise ParseError("empty curve")
    steps = [(surface.triangle_index(s.triangle), s.entry, s.exit) for s in word]
    for position, (t_index, _, exit_side) in enumerate(steps):
        following = steps[(position + 1) % len(steps)]
        glued = surface.other_slot((t_index, exit_side))
        if glued is None:
            raise NotSimple(f"step {word[position]} leaves the surface through a boundary edge")
        if glued != (following[0], following[1]):
            raise ParseError(
                f"steps {word[position]} and {word[(position + 1) % len(word)]} are not glued"
            )
    return steps


def _rotation(
    surface: Triangulation, steps: Sequence[Tuple[int, int, int]], component: int
) -> int:
    counts: Dict[str, int] = {}
    for t_index, entry, _ in steps:
        edge = surface.edge_at((t_index, entry))
        counts[edge] = counts.get(edge, 0) + 1
    for position, (t_index, entry, _) in enumerate(steps):
        if counts[surface.edge_at((t_index, entry))] == 1:
            return position
    raise NotSimple(
        f"curve {component + 1} crosses every edge more than once; cannot choose a cut edge"
    )


class _Layout:
    def __init__(self, components: List[List[_Arc]]) -> None:
        self.components = components

    def _turn(self, arc: _Arc, step: int, reverse: bool) -> bool:
        arcs = self.components[arc.component]
        index = (arc.index - step if reverse else arc.index + step) % len(arcs)
        return arcs[index].left != reverse

    def _divergence(self, a: _Traveler, b: _Traveler, backward: bool) -> Optional[bool]:
        limit = len(self.components[a.arc.component]) + len(self.components[b.arc.component])
        for step in range(1, limit + 1):
            turn_a = self._turn(a.arc, step, a.reversed != backward)
            turn_b = self._turn(b.arc, step, b.reversed != backward)
            if turn_a != turn_b:
                return turn_a != backward
        return None

    def compare(self, a: _Arc, b: _Arc) -> int:
        """-1 if ``a`` is nested inside ``b`` at their common corner, 1 otherwise."""
        ta, tb = _Traveler(a), _Traveler(b)
        forward = self._divergence(ta, tb, backward=False)
        backward = self._divergence(ta, tb, backward=True)
        if forward is not None and backward is not None and forward != backward:
            raise NotSimple(
                f"arcs of curves {a.component + 1} and {b.component + 1} cross in triangle "
                f"{a.triangle + 1}"
            )
        a_inner = forward if forward is not None else backward
        if a_inner is None:
            if a.component == b.component:
                raise NotSimple(f"curve {a.component + 1} runs parallel to itself")
            if a.component < b.component:
                a_inner = not ta.reversed
            else:
                a_inner = tb.reversed
        return -1 if a_inner else 1


def compile_simple_multicurve(
    split_structure: SplitStructure, curves: Sequence[CurveWord]
) -> TanglePresentation:
    """Build the crossingless good-position presentation of a simple multicurve.

    Components are stacked in the given order (later components higher). Inside a component the
    elevation grows along the curve starting from a step whose entry edge the component crosses
    only once, so that the elevation jump never meets another strand of the same component.

    Args:
        split_structure (SplitStructure): Split triangulation.
        curves (Sequence[CurveWord]): One corner-turn word per component.

    Raises:
        ParseError: If a word is empty or not glued.
        NotSimple: If the arcs cannot be laid out without crossings.

    Returns:
        TanglePresentation: Presentation with one segment per step and identity biangle words.
    """
    surface = split_structure.triangulation
    components: List[List[_Arc]] = []
    for c_index, word in enumerate(curves):
        steps = check_curve(surface, word)
        start = _rotation(surface, steps, c_index)
        rotated = steps[start:] + steps[:start]
        components.append(
            [_Arc(c_index, j, t, entry, exit_) for j, (t, entry, exit_) in enumerate(rotated)]
        )
    layout = _Layout(components)

    corners: Dict[Tuple[int, int], List[_Arc]] = {}
    for arcs in components:
        for arc in arcs:
            corners.setdefault((arc.triangle, arc.corner), []).append(arc)
    for arcs in corners.values():
        arcs.sort(key=functools.cmp_to_key(layout.compare))

    # endpoints of every side, by increasing u
    sides: Dict[SideSlot, List[Tuple[_Arc, int]]] = {}
    for t_index in range(surface.triangle_count):
        for side in range(3):
            before = corners.get((t_index, (side - 1) % 3), [])
            after = corners.get((t_index, side), [])
            sides[(t_index, side)] = [(arc, side) for arc in before] + [
                (arc, side) for arc in reversed(after)
            ]

    slot_of: Dict[Tuple[_Arc, int], Juncture] = {}
    for face, points in sides.items():
        copy = split_structure.side_copy(face)
        n = len(points)
        for u_rank, point in enumerate(points):
            slot = n - 1 - u_rank if copy.role == CopyRole.OUT else u_rank
            slot_of[point] = Juncture(copy.name, slot)

    offsets = [0]
    for arcs in components:
        offsets.append(offsets[-1] + len(arcs))
    segments: List[TriangleSegment] = []
    for arcs in components:
        for arc in arcs:
            segments.append(
                TriangleSegment(
                    f"k{arc.component + 1}_{arc.index + 1}",
                    surface.triangles[arc.triangle].name,
                    offsets[arc.component] + arc.index,
                    slot_of[(arc, arc.entry)],
                    slot_of[(arc, arc.exit)],
                )
            )

    words: Dict[str, BiangleWord] = {}
    owner = {j: s for s in segments for j in (s.source, s.target)}
    for edge in surface.edges:
        out_copy, in_copy = split_structure.out_copy(edge), split_structure.in_copy(edge)
        outs = sides[out_copy.face] if out_copy.face is not None else []
        ins = sides[in_copy.face] if in_copy.face is not None else []
        if len(outs) != len(ins):
            raise NotSimple(f"edge {edge} is crossed inconsistently")
        gens: List[Generator] = []
        ranks: List[int] = []
        for slot in range(len(outs)):
            out_end, in_end = Juncture(edge, slot), Juncture(in_copy.name, slot)
            here, there = owner[out_end], owner[in_end]
            if here.source == out_end and there.target == in_end:
                gens.append(Generator.ID_FWD)
            elif here.target == out_end and there.source == in_end:
                gens.append(Generator.ID_BWD)
            else:
                raise NotSimple(f"strands through edge {edge} would cross")
            ranks.append(here.level)
        if not gens:
            continue
        order = sorted(range(len(ranks)), key=lambda position: ranks[position])
        cut = [0] * len(ranks)
        for rank, position in enumerate(order):
            cut[position] = rank
        words[edge] = BiangleWord.build(edge, [gens], {0: cut, 1: cut})

    logging.debug(
        "Compiled multicurve: "
        + "; ".join(f"{s.name}@{s.triangle} {s.source}->{s.target}" for s in segments)
    )
    return TanglePresentation(split_structure, segments, words, {}, curves=curves)
