"""Stated oriented tangles in good position over a split triangulation.

A presentation consists of

* triangle segments: constant-elevation arcs joining two distinct sides of a triangle, each
  with a level (elevation rank, unique within its triangle) and an orientation;
* one biangle word per edge: slices of elementary generators composed from the IN side
  (copy ``e'``) to the OUT side (copy ``e``), with a vertical order on every cut;
* boundary states on the junctures that lie on boundary arcs of the surface.

The biangle word is the authority for horizontal slots and vertical ranks on every edge copy;
segments refer to junctures as ``<copy>:<slot>``. A `.tng` file has the lines::

    segment k1 tri=t1 level=0 from=b:0 to=c':0 dir=fwd
    biangle b slice 0: id+
    biangle b cut 1: 0
    state a':0 +
    curve t1:2-3 t2:3-2

``curve`` lines describe simple multicurves by corner turns and may not be mixed with explicit
segments or biangle words.
"""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
import itertools
import logging
import re
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from networkx.utils import UnionFind

from .errors import (
    CompositionError,
    ElevationClash,
    InputError,
    JunctureMismatch,
    OrientationError,
    ParseError,
    StateDomainError,
    StateLimitExceeded,
    UnknownEdge,
)
from .qtorus import is_admissible
from .surface import CopyRole, EdgeCopy, SplitStructure


class Generator(str, Enum):
    """Elementary boundary-ordered oriented tangle diagrams in a biangle.

    Attributes:
        ID_FWD (str): Straight strand oriented from IN to OUT.
        ID_BWD (str): Straight strand oriented from OUT to IN.
        CUP_UP (str): Turnback attached to the OUT side, entering at the lower-slot point.
        CUP_DOWN (str): Turnback attached to the OUT side, leaving at the lower-slot point.
        CAP_UP (str): Turnback attached to the IN side, entering at the lower-slot point.
        CAP_DOWN (str): Turnback attached to the IN side, leaving at the lower-slot point.
        HX1 (str): Two strands exchanging heights, first point higher on the IN side.
        HX2 (str): Inverse height exchange.
        XPOS (str): Positive crossing.
        XNEG (str): Negative crossing.
    """

    ID_FWD = "id+"
    ID_BWD = "id-"
    CUP_UP = "cupU"
    CUP_DOWN = "cupD"
    CAP_UP = "capU"
    CAP_DOWN = "capD"
    HX1 = "hx1"
    HX2 = "hx2"
    XPOS = "xpos"
    XNEG = "xneg"


@dataclass(frozen=True)
class Shape:
    """Boundary data of a generator.

    Attributes:
        n_in (int): Points on the IN side of the piece.
        n_out (int): Points on the OUT side.
        in_order (Tuple[int, ...]): Relative vertical ranks of the IN points (higher is above).
        out_order (Tuple[int, ...]): Relative vertical ranks of the OUT points.
        links (Tuple[Tuple[int, int], ...]): (IN point, OUT point) pairs joined by a strand.
        fixed_in (Tuple[Optional[bool], ...]): Forced direction (True = fwd) of IN points.
        fixed_out (Tuple[Optional[bool], ...]): Forced direction of OUT points.
        crossing (int): Crossing sign, 0 for crossingless pieces.
    """

    n_in: int
    n_out: int
    in_order: Tuple[int, ...]
    out_order: Tuple[int, ...]
    links: Tuple[Tuple[int, int], ...] = ()
    fixed_in: Tuple[Optional[bool], ...] = ()
    fixed_out: Tuple[Optional[bool], ...] = ()
    crossing: int = 0


SHAPES: Dict[Generator, Shape] = {
    Generator.ID_FWD: Shape(1, 1, (0,), (0,), ((0, 0),), (True,), (True,)),
    Generator.ID_BWD: Shape(1, 1, (0,), (0,), ((0, 0),), (False,), (False,)),
    Generator.CUP_UP: Shape(0, 2, (), (1, 0), fixed_out=(False, True)),
    Generator.CUP_DOWN: Shape(0, 2, (), (1, 0), fixed_out=(True, False)),
    Generator.CAP_UP: Shape(2, 0, (1, 0), (), fixed_in=(True, False)),
    Generator.CAP_DOWN: Shape(2, 0, (1, 0), (), fixed_in=(False, True)),
    Generator.HX1: Shape(2, 2, (1, 0), (0, 1), ((0, 0), (1, 1))),
    Generator.HX2: Shape(2, 2, (0, 1), (1, 0), ((0, 0), (1, 1))),
    Generator.XPOS: Shape(2, 2, (1, 0), (1, 0), ((0, 1), (1, 0)), crossing=1),
    Generator.XNEG: Shape(2, 2, (1, 0), (1, 0), ((0, 1), (1, 0)), crossing=-1),
}


def _stacking(pieces: Sequence[Generator], out_side: bool) -> Tuple[int, ...]:
    ranks: List[int] = []
    base = 0
    for gen in pieces:
        shape = SHAPES[gen]
        order = shape.out_order if out_side else shape.in_order
        ranks.extend(base + r for r in order)
        base += len(order)
    return tuple(ranks)


def _is_contiguous(ranks: Sequence[int]) -> bool:
    return not ranks or max(ranks) - min(ranks) + 1 == len(ranks)


def _same_order(ranks: Sequence[int], order: Sequence[int]) -> bool:
    return all(
        (ranks[i] < ranks[j]) == (order[i] < order[j])
        for i, j in itertools.combinations(range(len(ranks)), 2)
    )


@dataclass(frozen=True)
class BiangleWord:
    """A sliced biangle word with its cut orders.

    ``cuts[k]`` lists the vertical rank of every point on cut k by horizontal position; cut 0
    is the IN side and ``cuts[-1]`` the OUT side. Build instances with `BiangleWord.build`,
    which fills in default cuts and validates composability.
    """

    edge: str
    slices: Tuple[Tuple[Generator, ...], ...]
    cuts: Tuple[Tuple[int, ...], ...]

    @classmethod
    def empty(cls, edge: str) -> "BiangleWord":
        return cls(edge, (), ((),))

    @classmethod
    def build(
        cls,
        edge: str,
        slices: Sequence[Sequence[Generator]],
        cut_overrides: Optional[Mapping[int, Sequence[int]]] = None,
    ) -> "BiangleWord":
        """Create a validated word.

        Args:
            edge (str): Edge whose biangle hosts the word.
            slices (Sequence[Sequence[Generator]]): Slices from the IN side outward, each a
                bottom-to-top list of generators.
            cut_overrides (Optional[Mapping[int, Sequence[int]]]): Explicit vertical ranks for
                some cuts.

        Raises:
            CompositionError: If adjacent slices do not compose or a cut order breaks the
                block rule.

        Returns:
            BiangleWord: The word with every cut resolved.
        """
        frozen = tuple(tuple(piece) for piece in slices)
        if not frozen:
            if cut_overrides and any(cut_overrides.values()):
                raise CompositionError(f"biangle {edge}: cut order given for an empty word")
            return cls.empty(edge)
        cuts = [_stacking(frozen[0], out_side=False)]
        cuts.extend(_stacking(piece, out_side=True) for piece in frozen)
        for index, ranks in (cut_overrides or {}).items():
            if not 0 <= index < len(cuts):
                raise CompositionError(f"biangle {edge}: no cut {index}")
            cuts[index] = tuple(ranks)
        word = cls(edge, frozen, tuple(cuts))
        word.validate()
        return word

    def validate(self) -> None:
        """Check arities, rank permutations and the block rule on every slice."""
        for index, ranks in enumerate(self.cuts):
            if sorted(ranks) != list(range(len(ranks))):
                raise CompositionError(
                    f"biangle {self.edge}: cut {index} ranks {list(ranks)} are not a permutation"
                )
        for index, piece_list in enumerate(self.slices):
            n_in = sum(SHAPES[g].n_in for g in piece_list)
            n_out = sum(SHAPES[g].n_out for g in piece_list)
            if n_in != len(self.cuts[index]) or n_out != len(self.cuts[index + 1]):
                raise CompositionError(
                    f"biangle {self.edge}: slice {index} maps {n_in} -> {n_out} points but its "
                    f"cuts have {len(self.cuts[index])} and {len(self.cuts[index + 1])}"
                )
            self._check_blocks(index)

    def _check_blocks(self, index: int) -> None:
        cut_in, cut_out = self.cuts[index], self.cuts[index + 1]
        through: List[Tuple[int, int]] = []
        for gen, in_pos, out_pos in self.piece_positions(index):
            shape = SHAPES[gen]
            in_ranks = cut_in[in_pos : in_pos + shape.n_in]
            out_ranks = cut_out[out_pos : out_pos + shape.n_out]
            if not (_is_contiguous(in_ranks) and _is_contiguous(out_ranks)):
                raise CompositionError(
                    f"biangle {self.edge}: {gen.value} in slice {index} is not vertically "
                    "contiguous"
                )
            if not (
                _same_order(in_ranks, shape.in_order) and _same_order(out_ranks, shape.out_order)
            ):
                raise CompositionError(
                    f"biangle {self.edge}: {gen.value} in slice {index} contradicts its "
                    "vertical order"
                )
            if in_ranks and out_ranks:
                through.append((min(in_ranks), min(out_ranks)))
        through.sort()
        if [b for _, b in through] != sorted(b for _, b in through):
            raise CompositionError(
                f"biangle {self.edge}: slice {index} reorders strands vertically"
            )

    def piece_positions(self, index: int) -> Iterator[Tuple[Generator, int, int]]:
        """Yield (generator, first IN position, first OUT position) for one slice."""
        in_pos = out_pos = 0
        for gen in self.slices[index]:
            yield gen, in_pos, out_pos
            in_pos += SHAPES[gen].n_in
            out_pos += SHAPES[gen].n_out

    @property
    def n_in(self) -> int:
        return len(self.cuts[0])

    @property
    def n_out(self) -> int:
        return len(self.cuts[-1])

    @property
    def writhe(self) -> int:
        return sum(SHAPES[gen].crossing for piece in self.slices for gen in piece)

    @property
    def crossing_count(self) -> int:
        return sum(1 for piece in self.slices for gen in piece if SHAPES[gen].crossing)


@dataclass(frozen=True, order=True)
class Juncture:
    """A point of the tangle on a split edge copy, addressed by horizontal slot."""

    copy: str
    slot: int

    def __str__(self) -> str:
        return f"{self.copy}:{self.slot}"

    @classmethod
    def parse(cls, text: str) -> "Juncture":
        copy, sep, slot = text.rpartition(":")
        if not sep or not copy or not slot.isdigit():
            raise ParseError(f"expected <copy>:<slot>, got {text!r}")
        return cls(copy, int(slot))


JunctureState = Dict[Juncture, int]
"""Sign (+1 or -1) for every juncture of a presentation."""


@dataclass(frozen=True)
class TriangleSegment:
    """Horizontal arc inside one triangle, oriented from ``source`` to ``target``."""

    name: str
    triangle: str
    level: int
    source: Juncture
    target: Juncture


@dataclass(frozen=True)
class JunctureInfo:
    """Registry entry of a juncture.

    Attributes:
        juncture (Juncture): The juncture.
        copy (EdgeCopy): Edge copy it lies on.
        rank (int): Vertical rank among the junctures of the same copy.
        forward (bool): Strand direction at the juncture (True = from IN toward OUT).
        segment (Optional[str]): Owning triangle segment; None on boundary arcs.
    """

    juncture: Juncture
    copy: EdgeCopy
    rank: int
    forward: bool
    segment: Optional[str]


@dataclass(frozen=True)
class CornerStep:
    """One step of a corner-turn word: cross triangle ``triangle`` from side ``entry`` to
    side ``exit`` (0-based, clockwise numbering)."""

    triangle: str
    entry: int
    exit: int

    def __str__(self) -> str:
        return f"{self.triangle}:{self.entry + 1}-{self.exit + 1}"


CurveWord = Tuple[CornerStep, ...]


class TanglePresentation:
    """A validated stated tangle in good position.

    Args:
        split_structure (SplitStructure): Split triangulation the tangle lives on.
        segments (Sequence[TriangleSegment]): All triangle segments.
        words (Mapping[str, BiangleWord]): Biangle word per edge; missing edges get the empty
            word.
        states (Mapping[Juncture, int]): Boundary states, exactly on boundary-arc junctures.
        curves (Sequence[CurveWord]): Corner-turn words the presentation was compiled from.
        lines (Optional[Mapping[str, int]]): Source line per segment name or ``biangle <e>``.

    Raises:
        UnknownEdge: On references to unknown triangles, edges or copies.
        JunctureMismatch: If segments and words disagree on junctures or vertical orders.
        OrientationError: If strand directions cannot be assigned.
        ElevationClash: If two segments of one triangle share a level.
        StateDomainError: If boundary states are missing or misplaced.
    """

    def __init__(
        self,
        split_structure: SplitStructure,
        segments: Sequence[TriangleSegment] = (),
        words: Optional[Mapping[str, BiangleWord]] = None,
        states: Optional[Mapping[Juncture, int]] = None,
        curves: Sequence[CurveWord] = (),
        lines: Optional[Mapping[str, int]] = None,
    ) -> None:
        self.split = split_structure
        self.surface = split_structure.triangulation
        self.segments: Tuple[TriangleSegment, ...] = tuple(segments)
        self.curves: Tuple[CurveWord, ...] = tuple(curves)
        self.states: Dict[Juncture, int] = dict(states or {})
        self._lines = dict(lines or {})
        self.words: Dict[str, BiangleWord] = {}
        for edge, word in (words or {}).items():
            if edge not in self.surface.slots:
                raise UnknownEdge(f"biangle word for unknown edge {edge}")
            self.words[edge] = word
        for edge in self.surface.edges:
            self.words.setdefault(edge, BiangleWord.empty(edge))
        self._segment_by_name: Dict[str, TriangleSegment] = {}
        self._owner: Dict[Juncture, TriangleSegment] = {}
        self._check_segments()
        self.junctures: Tuple[Juncture, ...] = tuple(self._all_junctures())
        self._check_coverage()
        self._check_levels()
        self._check_vertical_orders()
        self.directions = self._solve_directions()
        self._check_states()
        self.registry: Dict[Juncture, JunctureInfo] = {
            j: JunctureInfo(
                j,
                self.split.copy(j.copy),
                self.rank(j),
                self.directions[self.cut_node(j)],
                self._owner[j].name if j in self._owner else None,
            )
            for j in self.junctures
        }
        logging.info(
            f"Tangle presentation: {len(self.segments)} segments, {len(self.junctures)} "
            f"junctures, {sum(w.crossing_count for w in self.words.values())} biangle crossings"
        )

    def _line(self, key: str) -> Optional[int]:
        return self._lines.get(key)

    def _check_segments(self) -> None:
        for segment in self.segments:
            line = self._line(segment.name)
            if segment.name in self._segment_by_name:
                raise ParseError(f"segment {segment.name} defined twice", line=line)
            self._segment_by_name[segment.name] = segment
            t_index = self.surface.triangle_index(segment.triangle)
            sides = []
            for end in (segment.source, segment.target):
                copy = self.split.copy(end.copy)
                if copy.face is None or copy.face[0] != t_index:
                    raise JunctureMismatch(
                        f"segment {segment.name}: {end.copy} does not bound {segment.triangle}",
                        line=line,
                    )
                if not 0 <= end.slot < self.copy_size(copy.name):
                    raise JunctureMismatch(
                        f"segment {segment.name}: {end} is not a juncture of the biangle word",
                        line=line,
                    )
                if end in self._owner:
                    raise JunctureMismatch(
                        f"segment {segment.name}: juncture {end} already used by "
                        f"{self._owner[end].name}",
                        line=line,
                    )
                self._owner[end] = segment
                sides.append(copy.face[1])
            if sides[0] == sides[1]:
                raise JunctureMismatch(
                    f"segment {segment.name} starts and ends on the same side", line=line
                )

    def _all_junctures(self) -> Iterator[Juncture]:
        for edge in self.surface.edges:
            for copy in (self.split.out_copy(edge), self.split.in_copy(edge)):
                for slot in range(self.copy_size(copy.name)):
                    yield Juncture(copy.name, slot)

    def _check_coverage(self) -> None:
        for juncture in self.junctures:
            copy = self.split.copy(juncture.copy)
            if copy.face is not None and juncture not in self._owner:
                raise JunctureMismatch(
                    f"biangle {copy.edge} has an endpoint at {juncture} but no triangle "
                    "segment ends there",
                    line=self._line(f"biangle {copy.edge}"),
                )

    def _check_levels(self) -> None:
        seen: Dict[Tuple[str, int], str] = {}
        for segment in self.segments:
            key = (segment.triangle, segment.level)
            if key in seen:
                raise ElevationClash(
                    f"segments {seen[key]} and {segment.name} share level {segment.level} in "
                    f"{segment.triangle}",
                    line=self._line(segment.name),
                )
            seen[key] = segment.name

    def _check_vertical_orders(self) -> None:
        for copy in self.split.copies.values():
            if copy.face is None:
                continue
            slots = range(self.copy_size(copy.name))
            by_rank = sorted(slots, key=lambda s: self.rank(Juncture(copy.name, s)))
            by_level = sorted(slots, key=lambda s: self._owner[Juncture(copy.name, s)].level)
            if by_rank != by_level:
                raise JunctureMismatch(
                    f"vertical order on {copy.name} disagrees with segment levels",
                    line=self._line(f"biangle {copy.edge}"),
                )

    def _solve_directions(self) -> Dict[Tuple[str, int, int], bool]:
        forest = UnionFind()
        fixed: List[Tuple[Tuple[str, int, int], bool, str]] = []
        parallel: List[Tuple[Tuple[str, int, int], Tuple[str, int, int], str]] = []
        nodes: List[Tuple[str, int, int]] = []
        for edge, word in self.words.items():
            for cut, ranks in enumerate(word.cuts):
                nodes.extend((edge, cut, pos) for pos in range(len(ranks)))
            for index in range(len(word.slices)):
                for gen, in_pos, out_pos in word.piece_positions(index):
                    shape = SHAPES[gen]
                    where = f"{gen.value} in biangle {edge} slice {index}"
                    for i, value in enumerate(shape.fixed_in):
                        if value is not None:
                            fixed.append(((edge, index, in_pos + i), value, where))
                    for i, value in enumerate(shape.fixed_out):
                        if value is not None:
                            fixed.append(((edge, index + 1, out_pos + i), value, where))
                    for i, j in shape.links:
                        forest.union((edge, index, in_pos + i), (edge, index + 1, out_pos + j))
                    if shape.crossing:
                        parallel.append(((edge, index, in_pos), (edge, index, in_pos + 1), where))
        for juncture, segment in self._owner.items():
            copy = self.split.copy(juncture.copy)
            forward = (
                segment.source == juncture
                if copy.role == CopyRole.OUT
                else segment.target == juncture
            )
            fixed.append((self.cut_node(juncture), forward, f"segment {segment.name}"))
        values: Dict[Tuple[str, int, int], Tuple[bool, str]] = {}
        for node, value, where in fixed:
            root = forest[node]
            if root in values and values[root][0] != value:
                raise OrientationError(
                    f"strand through {node[0]} cut {node[1]} position {node[2]} is oriented "
                    f"both ways ({values[root][1]} vs {where})"
                )
            values[root] = (value, where)
        directions: Dict[Tuple[str, int, int], bool] = {}
        for node in nodes:
            root = forest[node]
            if root not in values:
                raise OrientationError(
                    f"cannot orient the strand through biangle {node[0]} cut {node[1]} "
                    f"position {node[2]}"
                )
            directions[node] = values[root][0]
        for first, second, where in parallel:
            if directions[first] != directions[second]:
                raise OrientationError(f"crossing strands of {where} are not parallel")
        return directions

    def _check_states(self) -> None:
        boundary = {j for j in self.junctures if self.split.copy(j.copy).is_boundary_arc}
        for juncture, value in self.states.items():
            if juncture not in boundary:
                raise StateDomainError(
                    f"state given on {juncture}, which is not on a boundary arc"
                )
            if value not in (1, -1):
                raise StateDomainError(f"state of {juncture} must be + or -")
        missing = sorted(boundary - set(self.states))
        if missing:
            raise StateDomainError(
                f"missing boundary states on {', '.join(str(j) for j in missing)}"
            )

    def copy_size(self, copy_name: str) -> int:
        """Number of junctures on an edge copy."""
        copy = self.split.copy(copy_name)
        word = self.words[copy.edge]
        return word.n_out if copy.role == CopyRole.OUT else word.n_in

    def cut_node(self, juncture: Juncture) -> Tuple[str, int, int]:
        copy = self.split.copy(juncture.copy)
        word = self.words[copy.edge]
        cut = len(word.cuts) - 1 if copy.role == CopyRole.OUT else 0
        return copy.edge, cut, juncture.slot

    def rank(self, juncture: Juncture) -> int:
        edge, cut, pos = self.cut_node(juncture)
        return self.words[edge].cuts[cut][pos]

    def u_rank(self, juncture: Juncture) -> int:
        """Position along the triangle side, counted in the clockwise direction."""
        copy = self.split.copy(juncture.copy)
        if copy.role == CopyRole.OUT:
            return self.copy_size(copy.name) - 1 - juncture.slot
        return juncture.slot

    def side_of(self, juncture: Juncture) -> int:
        face = self.split.copy(juncture.copy).face
        if face is None:
            raise UnknownEdge(f"{juncture} lies on a boundary arc, not on a triangle side")
        return face[1]

    def segment(self, name: str) -> TriangleSegment:
        return self._segment_by_name[name]

    def owner(self, juncture: Juncture) -> Optional[TriangleSegment]:
        return self._owner.get(juncture)

    def segments_in(self, triangle: str) -> List[TriangleSegment]:
        """Segments of one triangle in increasing level order."""
        return sorted(
            (s for s in self.segments if s.triangle == triangle), key=lambda s: s.level
        )

    def copy_junctures(self, copy_name: str) -> List[Juncture]:
        return [Juncture(copy_name, slot) for slot in range(self.copy_size(copy_name))]

    def word_states(
        self, edge: str, state: Mapping[Juncture, int]
    ) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
        """IN and OUT boundary states of a biangle word, by horizontal position."""
        in_states = tuple(state[j] for j in self.copy_junctures(f"{edge}'"))
        out_states = tuple(state[j] for j in self.copy_junctures(edge))
        return in_states, out_states

    def with_word(self, word: BiangleWord) -> "TanglePresentation":
        """Return a presentation with one biangle word replaced."""
        words = dict(self.words)
        words[word.edge] = word
        return TanglePresentation(self.split, self.segments, words, self.states, self.curves)

    def with_states(self, states: Mapping[Juncture, int]) -> "TanglePresentation":
        return TanglePresentation(self.split, self.segments, self.words, states, self.curves)

    @property
    def is_closed(self) -> bool:
        return not self.states

    def placed(self, segment: TriangleSegment) -> "PlacedSegment":
        """Exact position of a segment inside the model triangle."""
        return PlacedSegment(
            segment.name,
            segment.level,
            self._end(segment.source),
            self._end(segment.target),
        )

    def _end(self, juncture: Juncture) -> "SegmentEnd":
        n = self.copy_size(juncture.copy)
        u = Fraction(self.u_rank(juncture) + 1, n + 1)
        return SegmentEnd(juncture, self.side_of(juncture), u)


_VERTICES = (
    (Fraction(0), Fraction(2)),
    (Fraction(2), Fraction(-1)),
    (Fraction(-2), Fraction(-1)),
)


@dataclass(frozen=True)
class SegmentEnd:
    """Endpoint of a placed segment: side index and clockwise parameter u in (0, 1)."""

    juncture: Juncture
    side: int
    u: Fraction

    @property
    def boundary_parameter(self) -> Fraction:
        return self.side + self.u

    def point(self) -> Tuple[Fraction, Fraction]:
        start, end = _VERTICES[self.side], _VERTICES[(self.side + 1) % 3]
        return (start[0] + self.u * (end[0] - start[0]), start[1] + self.u * (end[1] - start[1]))


@dataclass(frozen=True)
class PlacedSegment:
    """A triangle segment with exact endpoint positions in the model triangle."""

    name: str
    level: int
    source: SegmentEnd
    target: SegmentEnd

    @property
    def corner(self) -> int:
        """First side (clockwise) of the corner the segment turns around."""
        a, b = self.source.side, self.target.side
        return a if b == (a + 1) % 3 else b

    def end_on(self, side: int) -> SegmentEnd:
        for end in (self.source, self.target):
            if end.side == side:
                return end
        raise ValueError(f"segment {self.name} does not touch side {side}")

    def starts_on(self, side: int) -> bool:
        return self.source.side == side

    def direction(self) -> Tuple[Fraction, Fraction]:
        (x0, y0), (x1, y1) = self.source.point(), self.target.point()
        return x1 - x0, y1 - y0


def segments_cross(a: PlacedSegment, b: PlacedSegment) -> bool:
    """True iff the endpoints of the two chords interleave along the triangle boundary."""
    low, high = sorted((a.source.boundary_parameter, a.target.boundary_parameter))

    def inside(end: SegmentEnd) -> bool:
        return low < end.boundary_parameter < high

    return inside(b.source) != inside(b.target)


def crossing_sign(a: PlacedSegment, b: PlacedSegment) -> int:
    """Sign of the projected crossing of two segments, over = higher level; 0 if disjoint."""
    if not segments_cross(a, b):
        return 0
    over, under = (a, b) if a.level > b.level else (b, a)
    (ox, oy), (ux, uy) = over.direction(), under.direction()
    cross = ox * uy - oy * ux
    return 1 if cross > 0 else -1


class PairCase(int, Enum):
    """Relative position of two segments in one triangle.

    Attributes:
        SAME_CORNER (int): Nested around the same corner.
        DISTINCT_CORNERS (int): Around different corners, disjoint.
        SAME_CORNER_CROSSING (int): Same corner, nesting orders disagree.
        DISTINCT_CORNERS_CROSSING (int): Different corners, overlapping on the shared side.
    """

    SAME_CORNER = 1
    DISTINCT_CORNERS = 2
    SAME_CORNER_CROSSING = 3
    DISTINCT_CORNERS_CROSSING = 4


@dataclass(frozen=True)
class PairConfig:
    """A classified segment pair.

    ``ends`` are x1, x2 on k1 and x3, x4 on k2. For same-corner cases x1, x3 lie on the
    clockwise-first side of the corner and x2, x4 on the second. For distinct corners x2 and
    x3 lie on the shared side, x1 on the side before it and x4 on the side after it.
    """

    case: PairCase
    k1: PlacedSegment
    k2: PlacedSegment
    ends: Tuple[SegmentEnd, SegmentEnd, SegmentEnd, SegmentEnd]
    parallel: bool

    @property
    def k1_lower(self) -> bool:
        return self.k1.level < self.k2.level


def classify_pair(a: PlacedSegment, b: PlacedSegment) -> PairConfig:
    """Classify two segments of one triangle into one of the four `PairCase` values."""
    if a.corner == b.corner:
        first, second = a.corner, (a.corner + 1) % 3
        inner_first = a.end_on(first).u > b.end_on(first).u
        inner_second = a.end_on(second).u < b.end_on(second).u
        if inner_first == inner_second:
            case = PairCase.SAME_CORNER
            k1, k2 = (a, b) if inner_first else (b, a)
        else:
            case = PairCase.SAME_CORNER_CROSSING
            k1, k2 = (a, b) if inner_second else (b, a)
        ends = (k1.end_on(first), k1.end_on(second), k2.end_on(first), k2.end_on(second))
        return PairConfig(case, k1, k2, ends, k1.starts_on(first) == k2.starts_on(first))
    shared = ({a.source.side, a.target.side} & {b.source.side, b.target.side}).pop()
    before, after = (shared - 1) % 3, (shared + 1) % 3
    k1, k2 = (a, b) if before in (a.source.side, a.target.side) else (b, a)
    x2, x3 = k1.end_on(shared), k2.end_on(shared)
    case = PairCase.DISTINCT_CORNERS if x2.u < x3.u else PairCase.DISTINCT_CORNERS_CROSSING
    ends = (k1.end_on(before), x2, x3, k2.end_on(after))
    parallel = (k1.source == x2) == (k2.source == x3)
    return PairConfig(case, k1, k2, ends, parallel)


def signed_order_correction(
    points: Sequence[Tuple[int, int, int]], orientation: int
) -> int:
    """Sum over vertically ordered pairs x < y of sgn(x -> y) * s(x) * s(y).

    Args:
        points (Sequence[Tuple[int, int, int]]): (position, vertical rank, state) triples.
        orientation (int): +1 if the arc runs toward increasing position, -1 otherwise.

    Returns:
        int: The signed order correction amount.
    """
    total = 0
    for x, y in itertools.combinations(points, 2):
        lower, upper = (x, y) if x[1] < y[1] else (y, x)
        sign = 1 if (upper[0] - lower[0]) * orientation > 0 else -1
        total += sign * lower[2] * upper[2]
    return total


def writhe_surface(presentation: TanglePresentation) -> int:
    """Signed crossing count of biangle generators plus projected triangle crossings."""
    total = sum(word.writhe for word in presentation.words.values())
    for triangle in presentation.surface.triangles:
        placed = [presentation.placed(s) for s in presentation.segments_in(triangle.name)]
        total += sum(crossing_sign(a, b) for a, b in itertools.combinations(placed, 2))
    return total


def boundary_correction(presentation: TanglePresentation) -> int:
    """Signed order correction of the boundary states over all boundary arcs."""
    total = 0
    for copy in presentation.split.copies.values():
        if not copy.is_boundary_arc:
            continue
        points = [
            (j.slot, presentation.rank(j), presentation.states[j])
            for j in presentation.copy_junctures(copy.name)
        ]
        total += signed_order_correction(points, copy.orientation)
    return total


@dataclass
class _Check:
    kind: str
    payload: Tuple[Juncture, ...]
    extra: Tuple[Juncture, ...] = field(default_factory=tuple)


def enumerate_states(
    presentation: TanglePresentation, limit: Optional[int] = None
) -> Iterator[JunctureState]:
    """Yield the admissible, charge-conserving juncture states extending the boundary state.

    Junctures are assigned in registry order (edge order, OUT copy before IN copy, slot order)
    with + tried before -, so the output order is deterministic.

    Args:
        presentation (TanglePresentation): The tangle.
        limit (Optional[int]): Raise `StateLimitExceeded` after this many states.

    Yields:
        JunctureState: One state per surviving lift.
    """
    order = list(presentation.junctures)
    position = {j: i for i, j in enumerate(order)}
    checks: Dict[int, List[_Check]] = {}
    for segment in presentation.segments:
        first, second = segment.source, segment.target
        side_a, side_b = presentation.side_of(first), presentation.side_of(second)
        if side_a != (side_b + 1) % 3:
            pair = (first, second)
        else:
            pair = (second, first)
        due = max(position[first], position[second])
        checks.setdefault(due, []).append(_Check("corner", pair))
    for edge in presentation.surface.edges:
        outs = tuple(presentation.copy_junctures(edge))
        ins = tuple(presentation.copy_junctures(f"{edge}'"))
        if not outs and not ins:
            continue
        due = max(position[j] for j in outs + ins)
        checks.setdefault(due, []).append(_Check("charge", ins, outs))

    state: JunctureState = {}
    produced = 0

    def consistent(index: int) -> bool:
        for check in checks.get(index, ()):
            if check.kind == "corner":
                first, second = check.payload
                if not is_admissible(state[first], state[second]):
                    return False
            elif sum(state[j] for j in check.payload) != sum(state[j] for j in check.extra):
                return False
        return True

    def backtrack(index: int) -> Iterator[JunctureState]:
        nonlocal produced
        if index == len(order):
            produced += 1
            if limit and produced > limit:
                raise StateLimitExceeded(f"more than {limit} juncture states")
            yield dict(state)
            return
        juncture = order[index]
        choices = (presentation.states[juncture],) if juncture in presentation.states else (1, -1)
        for value in choices:
            state[juncture] = value
            if consistent(index):
                yield from backtrack(index + 1)
        del state[juncture]

    yield from backtrack(0)
    logging.debug(f"Enumerated {produced} juncture states")


_SEGMENT_KEYS = {"tri", "level", "from", "to", "dir"}
_BIANGLE_RE = re.compile(
    r"^biangle\s+(?P<edge>\S+)\s+(?P<kind>slice|cut)\s+(?P<index>\d+)\s*:(?P<body>.*)$"
)
_STEP_RE = re.compile(r"^(?P<tri>[A-Za-z_][\w.]*):(?P<entry>[1-3])-(?P<exit>[1-3])$")


def parse_curve_step(text: str, line: Optional[int] = None) -> CornerStep:
    match = _STEP_RE.match(text)
    if match is None:
        raise ParseError(f"expected <triangle>:<entry>-<exit>, got {text!r}", line=line)
    entry, exit_ = int(match.group("entry")) - 1, int(match.group("exit")) - 1
    if entry == exit_:
        raise ParseError(f"curve step {text} enters and exits on the same side", line=line)
    return CornerStep(match.group("tri"), entry, exit_)


def parse_curve(text: str, line: Optional[int] = None) -> CurveWord:
    """Parse a whitespace separated corner-turn word such as ``t1:2-3 t2:3-2``."""
    return tuple(parse_curve_step(token, line) for token in text.split())


def _parse_segment(tokens: Sequence[str], number: int) -> TriangleSegment:
    if len(tokens) < 2:
        raise ParseError("segment needs a name", line=number)
    values: Dict[str, str] = {}
    for token in tokens[2:]:
        key, sep, value = token.partition("=")
        if not sep or key not in _SEGMENT_KEYS or key in values:
            raise ParseError(f"unexpected segment field {token!r}", line=number)
        values[key] = value
    missing = _SEGMENT_KEYS - set(values)
    if missing:
        raise ParseError(f"segment misses {', '.join(sorted(missing))}", line=number)
    try:
        level = int(values["level"])
        source, target = Juncture.parse(values["from"]), Juncture.parse(values["to"])
    except ValueError:
        raise ParseError(f"bad level {values['level']!r}", line=number) from None
    except ParseError as err:
        raise ParseError(err.message, line=number) from None
    if values["dir"] not in ("fwd", "bwd"):
        raise ParseError(f"dir must be fwd or bwd, got {values['dir']!r}", line=number)
    if values["dir"] == "bwd":
        source, target = target, source
    return TriangleSegment(tokens[1], values["tri"], level, source, target)


def parse_tangle(
    text: str, split_structure: SplitStructure, path: Optional[str] = None
) -> TanglePresentation:
    """Parse a `.tng` document into a validated presentation.

    Args:
        text (str): File contents.
        split_structure (SplitStructure): Split triangulation of the surface.
        path (Optional[str]): File name used in error messages.

    Raises:
        ParseError: On syntax errors.
        JunctureMismatch: If the biangle words and segments disagree.
        ElevationClash: If two segments of a triangle share a level.
        StateDomainError: If boundary states are missing or misplaced.

    Returns:
        TanglePresentation: The validated presentation.
    """
    segments: List[TriangleSegment] = []
    slices: Dict[str, Dict[int, List[Generator]]] = {}
    cuts: Dict[str, Dict[int, List[int]]] = {}
    states: Dict[Juncture, int] = {}
    curves: List[CurveWord] = []
    lines: Dict[str, int] = {}
    try:
        for number, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            keyword = line.split()[0]
            if keyword == "segment":
                segment = _parse_segment(line.split(), number)
                segments.append(segment)
                lines.setdefault(segment.name, number)
            elif keyword == "biangle":
                _parse_biangle_line(line, number, slices, cuts, lines)
            elif keyword == "state":
                _parse_state_line(line, number, states)
            elif keyword == "curve":
                curves.append(parse_curve(line[len("curve") :], number))
            else:
                raise ParseError(f"unknown directive {keyword!r}", line=number)
        if curves and (segments or slices or cuts):
            raise ParseError("curve lines cannot be mixed with segments or biangle words")
        if curves:
            from .curves import compile_simple_multicurve

            presentation = compile_simple_multicurve(split_structure, curves)
            if states:
                presentation = presentation.with_states(states)
            return presentation
        words = {}
        for edge in sorted(set(slices) | set(cuts)):
            edge_slices = slices.get(edge, {})
            if sorted(edge_slices) != list(range(len(edge_slices))):
                raise ParseError(
                    f"biangle {edge}: slices must be numbered 0..{len(edge_slices) - 1}",
                    line=lines.get(f"biangle {edge}"),
                )
            try:
                words[edge] = BiangleWord.build(
                    edge, [edge_slices[k] for k in range(len(edge_slices))], cuts.get(edge, {})
                )
            except CompositionError as err:
                err.line = lines.get(f"biangle {edge}")
                raise
        return TanglePresentation(split_structure, segments, words, states, lines=lines)
    except InputError as err:
        raise err.with_path(path) if path else err


def _parse_biangle_line(
    line: str,
    number: int,
    slices: Dict[str, Dict[int, List[Generator]]],
    cuts: Dict[str, Dict[int, List[int]]],
    lines: Dict[str, int],
) -> None:
    match = _BIANGLE_RE.match(line)
    if match is None:
        raise ParseError("expected 'biangle <edge> slice|cut <k>: ...'", line=number)
    edge, index, body = match.group("edge"), int(match.group("index")), match.group("body")
    lines.setdefault(f"biangle {edge}", number)
    if match.group("kind") == "slice":
        try:
            gens = [Generator(token.strip()) for token in body.split(",") if token.strip()]
        except ValueError:
            raise ParseError(f"unknown generator in {body.strip()!r}", line=number) from None
        if not gens or index in slices.setdefault(edge, {}):
            raise ParseError(f"biangle {edge}: slice {index} empty or repeated", line=number)
        slices[edge][index] = gens
    else:
        try:
            ranks = [int(token) for token in body.split()]
        except ValueError:
            raise ParseError(f"bad cut ranks {body.strip()!r}", line=number) from None
        if index in cuts.setdefault(edge, {}):
            raise ParseError(f"biangle {edge}: cut {index} repeated", line=number)
        cuts[edge][index] = ranks


def _parse_state_line(line: str, number: int, states: Dict[Juncture, int]) -> None:
    tokens = line.split()
    if len(tokens) != 3 or tokens[2] not in ("+", "-"):
        raise ParseError("expected 'state <copy>:<slot> +|-'", line=number)
    try:
        juncture = Juncture.parse(tokens[1])
    except ParseError as err:
        raise ParseError(err.message, line=number) from None
    if juncture in states:
        raise ParseError(f"state of {juncture} given twice", line=number)
    states[juncture] = 1 if tokens[2] == "+" else -1
