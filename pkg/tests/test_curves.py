from typing import Callable

import pytest

from quantum_trace.curves import check_curve, compile_simple_multicurve
from quantum_trace.engines import bw_trace, intersection_numbers, trhol
from quantum_trace.errors import NotSimple, ParseError
from quantum_trace.surface import SplitStructure, Triangulation
from quantum_trace.tangle import Generator, Juncture, TanglePresentation, parse_curve

Loader = Callable[[str, str], TanglePresentation]


def test_compile_simple_loop(torus_split: SplitStructure) -> None:
    presentation = compile_simple_multicurve(torus_split, [parse_curve("t1:2-3 t2:3-2")])
    assert [s.name for s in presentation.segments] == ["k1_1", "k1_2"]
    first, second = presentation.segments
    assert (first.source, first.target) == (Juncture("b", 0), Juncture("c", 0))
    assert (second.source, second.target) == (Juncture("c'", 0), Juncture("b'", 0))
    assert presentation.words["b"].slices == ((Generator.ID_FWD,),)
    assert presentation.words["c"].slices == ((Generator.ID_BWD,),)
    assert presentation.words["a"].n_in == 0
    assert presentation.is_closed


def test_compile_parallel_copies(load: Loader) -> None:
    presentation = load("torus.surf", "multicurve.tng")
    assert len(presentation.segments) == 4
    assert len(presentation.curves) == 2
    for copy in ("b", "b'", "c", "c'"):
        assert presentation.copy_size(copy) == 2
    levels = {(s.triangle, s.level) for s in presentation.segments}
    assert len(levels) == 4


def test_compile_loop_crossing_an_edge_twice(load: Loader) -> None:
    presentation = load("torus.surf", "loop11.tng")
    assert len(presentation.segments) == 4
    assert presentation.copy_size("b") == 2
    assert presentation.copy_size("a") == presentation.copy_size("c") == 1


def test_compile_self_folded(load: Loader) -> None:
    presentation = load("selffolded.surf", "selffolded_loop.tng")
    (segment,) = presentation.segments
    assert {segment.source.copy, segment.target.copy} == {"a", "a'"}


def test_intersection_numbers(torus: Triangulation) -> None:
    curve = parse_curve("t1:1-2 t2:2-3 t1:3-2 t2:2-1")
    assert intersection_numbers(curve, torus) == {"a": 1, "b": 2, "c": 1}


def test_check_curve(torus: Triangulation, triangle: Triangulation) -> None:
    assert check_curve(torus, parse_curve("t1:2-3 t2:3-2")) == [(0, 1, 2), (1, 2, 1)]
    with pytest.raises(ParseError):
        check_curve(torus, ())
    with pytest.raises(ParseError):
        check_curve(torus, parse_curve("t1:2-3 t2:2-3"))
    with pytest.raises(NotSimple):
        check_curve(triangle, parse_curve("t1:1-2"))


def test_rejects_boundary_curves(triangle_split: SplitStructure) -> None:
    with pytest.raises(NotSimple):
        compile_simple_multicurve(triangle_split, [parse_curve("t1:1-2")])


@pytest.mark.parametrize(
    "word",
    [
        "t2:2-3 t1:3-2 t2:2-1 t1:1-2",
        "t2:1-2 t1:2-3 t2:3-2 t1:2-1",
    ],
)
def test_presentation_independence(torus_split: SplitStructure, word: str) -> None:
    reference = compile_simple_multicurve(
        torus_split, [parse_curve("t1:1-2 t2:2-3 t1:3-2 t2:2-1")]
    )
    other = compile_simple_multicurve(torus_split, [parse_curve(word)])
    assert bw_trace(other) == bw_trace(reference)
    assert trhol(other) == trhol(reference)
