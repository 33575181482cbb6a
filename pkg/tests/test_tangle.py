from pathlib import Path
from typing import Callable

import pytest

from quantum_trace.errors import (
    CompositionError,
    ElevationClash,
    JunctureMismatch,
    OrientationError,
    ParseError,
    StateDomainError,
    StateLimitExceeded,
    UnknownEdge,
)
from quantum_trace.surface import SplitStructure
from quantum_trace.tangle import (
    BiangleWord,
    CornerStep,
    Generator,
    Juncture,
    PairCase,
    TanglePresentation,
    boundary_correction,
    classify_pair,
    enumerate_states,
    parse_curve,
    parse_tangle,
    signed_order_correction,
    writhe_surface,
)

Loader = Callable[[str, str], TanglePresentation]

KINK = [
    [Generator.ID_FWD, Generator.CUP_DOWN],
    [Generator.XPOS, Generator.ID_BWD],
    [Generator.ID_FWD, Generator.CAP_UP],
]


def test_build_kink_word() -> None:
    word = BiangleWord.build("e", KINK, {1: (2, 1, 0), 2: (2, 1, 0)})
    assert (word.n_in, word.n_out) == (1, 1)
    assert word.cuts[0] == (0,) and word.cuts[-1] == (0,)
    assert word.writhe == 1
    assert word.crossing_count == 1


def test_default_cuts() -> None:
    word = BiangleWord.build("e", [[Generator.XPOS], [Generator.HX1]])
    assert word.cuts == ((1, 0), (1, 0), (0, 1))
    assert BiangleWord.build("e", []) == BiangleWord.empty("e")


@pytest.mark.parametrize(
    "slices, cuts",
    [
        ([[Generator.ID_FWD], [Generator.HX1]], {}),
        ([[Generator.HX1]], {0: (0, 0)}),
        ([[Generator.ID_FWD, Generator.CUP_DOWN]], {1: (1, 0, 2)}),
        ([[Generator.ID_FWD, Generator.ID_FWD]], {0: (0, 1), 1: (1, 0)}),
        ([[Generator.XPOS], [Generator.HX1]], {2: (1, 0)}),
        ([[Generator.ID_FWD]], {5: (0,)}),
        ([], {0: (0,)}),
    ],
)
def test_composition_errors(slices: list, cuts: dict) -> None:  # type: ignore
    with pytest.raises(CompositionError):
        BiangleWord.build("e", slices, cuts)


def test_juncture_text() -> None:
    assert Juncture.parse("a':0") == Juncture("a'", 0)
    assert str(Juncture("b", 3)) == "b:3"
    for bad in ("a'", "a':x", ":1"):
        with pytest.raises(ParseError):
            Juncture.parse(bad)


def test_parse_curve() -> None:
    assert parse_curve("t1:2-3 t2:3-2") == (CornerStep("t1", 1, 2), CornerStep("t2", 2, 1))
    assert str(CornerStep("t1", 0, 2)) == "t1:1-3"
    for bad in ("t1:2-2", "t1:4-1", "t1-2"):
        with pytest.raises(ParseError):
            parse_curve(bad, line=3)


def test_corner_arc_registry(load: Loader) -> None:
    presentation = load("triangle.surf", "corner_arc.tng")
    assert presentation.junctures == (
        Juncture("a", 0),
        Juncture("a'", 0),
        Juncture("b", 0),
        Juncture("b'", 0),
    )
    assert presentation.registry[Juncture("a", 0)].forward
    assert not presentation.registry[Juncture("b", 0)].forward
    assert presentation.registry[Juncture("b", 0)].segment == "k1"
    assert presentation.registry[Juncture("a'", 0)].segment is None
    assert not presentation.is_closed
    state = {j: 1 for j in presentation.junctures}
    assert presentation.word_states("a", state) == ((1,), (1,))
    assert presentation.word_states("c", state) == ((), ())


def test_writhe_and_boundary_correction(load: Loader) -> None:
    crossing = load("triangle.surf", "triangle_crossing.tng")
    assert writhe_surface(crossing) == -1
    assert boundary_correction(crossing) == 2
    crossed = load("triangle.surf", "crossed_arcs.tng")
    assert writhe_surface(crossed) == 1
    assert boundary_correction(crossed) == -2
    assert writhe_surface(load("torus.surf", "kinked_loop.tng")) == 1
    assert writhe_surface(load("torus.surf", "loop11.tng")) == 0


def test_classify_pairs(load: Loader) -> None:
    crossing = load("triangle.surf", "triangle_crossing.tng")
    a, b = (crossing.placed(s) for s in crossing.segments_in("t1"))
    assert classify_pair(a, b).case == PairCase.SAME_CORNER_CROSSING
    nested = load("triangle.surf", "crossed_arcs.tng")
    a, b = (nested.placed(s) for s in nested.segments_in("t1"))
    config = classify_pair(a, b)
    assert config.case == PairCase.SAME_CORNER
    assert config.parallel


def test_signed_order_correction() -> None:
    points = [(0, 0, 1), (1, 1, 1)]
    assert signed_order_correction(points, 1) == 1
    assert signed_order_correction(points, -1) == -1
    assert signed_order_correction([(0, 1, 1), (1, 0, -1)], 1) == 1
    assert signed_order_correction([(0, 0, 1)], 1) == 0


def test_enumerate_states(load: Loader) -> None:
    loop = load("torus.surf", "loop10.tng")
    states = list(enumerate_states(loop))
    assert len(states) == 3
    assert all(s[Juncture("b", 0)] == s[Juncture("b'", 0)] for s in states)
    with pytest.raises(StateLimitExceeded):
        list(enumerate_states(loop, limit=2))
    arc = load("triangle.surf", "corner_arc.tng")
    allowed = arc.with_states({Juncture("a'", 0): 1, Juncture("b'", 0): -1})
    assert len(list(enumerate_states(allowed))) == 1
    forbidden = arc.with_states({Juncture("a'", 0): -1, Juncture("b'", 0): 1})
    assert not list(enumerate_states(forbidden))


CORNER_ARC = """
segment k1 tri=t1 level=0 from=a:0 to=b:0 dir=fwd
biangle a slice 0: id+
biangle b slice 0: id-
"""
STATES = "state a':0 +\nstate b':0 +\n"


@pytest.mark.parametrize(
    "text, error",
    [
        ("bogus line\n", ParseError),
        ("biangle a slice 0: foo\n", ParseError),
        ("segment k1 tri=t1 level=0\n", ParseError),
        ("segment k1 tri=t1 level=x from=a:0 to=b:0 dir=fwd\n", ParseError),
        ("segment k1 tri=t1 level=0 from=a:0 to=b:0 dir=up\n", ParseError),
        ("curve t1:1-2\n" + CORNER_ARC, ParseError),
        ("biangle z slice 0: id+\n", UnknownEdge),
        (CORNER_ARC.replace("tri=t1", "tri=t9") + STATES, UnknownEdge),
        (CORNER_ARC.replace("from=a:0", "from=a:1") + STATES, JunctureMismatch),
        (CORNER_ARC.replace("to=b:0", "to=a:0") + STATES, JunctureMismatch),
        ("biangle a slice 0: id+\nstate a':0 +\n", JunctureMismatch),
        (
            "biangle a slice 0: xpos\nbiangle a slice 1: hx1\nbiangle a cut 2: 1 0\n",
            CompositionError,
        ),
        (CORNER_ARC, StateDomainError),
        (CORNER_ARC + STATES + "state a:0 +\n", StateDomainError),
        (CORNER_ARC.replace("id-", "id+") + STATES, OrientationError),
    ],
)
def test_tangle_errors(triangle_split: SplitStructure, text: str, error: type) -> None:
    with pytest.raises(error) as info:
        parse_tangle(text, triangle_split, "bad.tng")
    assert str(info.value).startswith("bad.tng")


def test_error_line_numbers(triangle_split: SplitStructure) -> None:
    with pytest.raises(ParseError) as info:
        parse_tangle("# comment\n\nsegment k1 oops\n", triangle_split, "bad.tng")
    assert info.value.line == 3
    assert str(info.value).startswith("bad.tng:3: ")


def test_level_clash_and_order(corpus_dir: str, triangle_split: SplitStructure) -> None:
    text = (Path(corpus_dir) / "triangle_crossing.tng").read_text()
    with pytest.raises(ElevationClash):
        parse_tangle(text.replace("level=1", "level=0"), triangle_split)
    swapped = text.replace("level=0", "level=2").replace("level=1", "level=0")
    with pytest.raises(JunctureMismatch):
        parse_tangle(swapped, triangle_split)


def test_inconsistent_orientation(torus_split: SplitStructure) -> None:
    with pytest.raises(OrientationError):
        parse_tangle("biangle a slice 0: cupU\nbiangle a slice 1: capU\n", torus_split)
    closed = parse_tangle("biangle a slice 0: cupU\nbiangle a slice 1: capD\n", torus_split)
    assert closed.is_closed and closed.junctures == ()
