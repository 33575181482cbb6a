import itertools
from typing import Callable, Dict

import pytest
import sympy

from quantum_trace import engines
from quantum_trace.errors import (
    BadConfig,
    InputError,
    NoUniqueMax,
    UnbalancedJuncture,
    ZeroFactor,
)
from quantum_trace.omega_ring import ONE, w
from quantum_trace.qtorus import QTElement, QuantumTorus
from quantum_trace.surface import Triangulation
from quantum_trace.tangle import (
    BiangleWord,
    Generator,
    Juncture,
    PairCase,
    TanglePresentation,
    boundary_correction,
    crossing_sign,
    enumerate_states,
    writhe_surface,
)

Loader = Callable[[str, str], TanglePresentation]

CORPUS_PAIRS = [
    ("torus.surf", "empty.tng"),
    ("torus.surf", "contractible.tng"),
    ("torus.surf", "loop10.tng"),
    ("torus.surf", "loop01.tng"),
    ("torus.surf", "loop1m1.tng"),
    ("torus.surf", "loop11.tng"),
    ("torus.surf", "multicurve.tng"),
    ("torus.surf", "kinked_loop.tng"),
    ("triangle.surf", "corner_arc.tng"),
    ("triangle.surf", "kinked_arc.tng"),
    ("triangle.surf", "crossed_arcs.tng"),
    ("triangle.surf", "triangle_crossing.tng"),
    ("selffolded.surf", "selffolded_loop.tng"),
]


def edge_element(surface: Triangulation, exponents: Dict[str, int]) -> QTElement:
    algebra = QuantumTorus(surface)
    return algebra.monomial(algebra.edge_combination(exponents))


@pytest.mark.parametrize("surface_name, tangle_name", CORPUS_PAIRS)
def test_trace_matches_twisted_holonomy(load: Loader, surface_name: str, tangle_name: str) -> None:
    report = engines.check_main_theorem(load(surface_name, tangle_name))
    assert report.global_ok
    assert not report.failures
    assert report.passed
    assert report.as_json()["verdict"] == "PASS"


@pytest.mark.parametrize(
    "first, second, count", [(1, 1, 1), (1, -1, 1), (-1, -1, 1), (-1, 1, 0)]
)
def test_corner_arc_states(load: Loader, first: int, second: int, count: int) -> None:
    arc = load("triangle.surf", "corner_arc.tng").with_states(
        {Juncture("a'", 0): first, Juncture("b'", 0): second}
    )
    report = engines.check_main_theorem(arc)
    assert report.passed
    assert len(report.terms) == count
    assert report.bw.is_zero() == (count == 0)
    assert report.holonomy.is_zero() == (count == 0)


def test_empty_and_contractible(load: Loader) -> None:
    assert engines.bw_trace(load("torus.surf", "empty.tng")).render() == "1"
    contractible = load("torus.surf", "contractible.tng")
    assert engines.bw_trace(contractible).render() == "-1*w^-4 - 1*w^4"
    assert engines.trhol(contractible) == engines.bw_trace(contractible)


def test_simple_loop(load: Loader, torus: Triangulation) -> None:
    loop = load("torus.surf", "loop10.tng")
    expected = (
        edge_element(torus, {"b": 1, "c": 1})
        + edge_element(torus, {"b": 1, "c": -1})
        + edge_element(torus, {"b": -1, "c": -1})
    )
    assert engines.state_count(loop) == 3
    assert engines.bw_trace(loop) == expected
    assert engines.trhol(loop) == expected
    assert engines.twist_factor(loop) == ONE


def test_original_normalization(load: Loader, torus: Triangulation) -> None:
    value = engines.gabella_original(load("torus.surf", "loop10.tng"))
    algebra = QuantumTorus(torus)
    exponents = sorted(
        (e["a"], e["b"], e["c"]) for e in (algebra.edge_exponents(k) for k, _ in value.items())
    )
    assert exponents == [(0, 0, 0), (0, 2, 0), (0, 2, 2)]
    assert all(c == ONE for _, c in value.items())


def test_longer_loop(load: Loader) -> None:
    loop = load("torus.surf", "loop11.tng")
    # five admissible states vanish: the two strands over b carry opposite orders
    assert engines.state_count(loop) == 11
    nonzero = [s for s in enumerate_states(loop) if not engines.bw_term(loop, s).is_zero()]
    assert len(nonzero) == 6
    z_a, z_b, z_c = sympy.symbols("Z_a Z_b Z_c")
    comparison = engines.compare_classical(loop)
    expected = (
        z_a * z_b ** 2 * z_c
        + z_a * z_b ** 2 / z_c
        + 2 * z_a / z_c
        + z_a / (z_b ** 2 * z_c)
        + 1 / (z_a * z_b ** 2 * z_c)
    )
    assert sympy.expand(comparison.classical - expected) == 0
    assert comparison.matches


@pytest.mark.parametrize(
    "tangle_name", ["loop10.tng", "loop01.tng", "loop1m1.tng", "loop11.tng", "multicurve.tng"]
)
def test_classical_limit(load: Loader, tangle_name: str) -> None:
    assert engines.compare_classical(load("torus.surf", tangle_name)).matches


def test_classical_trace_of_simple_loop(load: Loader, torus: Triangulation) -> None:
    z_b, z_c = sympy.symbols("Z_b Z_c")
    loop = load("torus.surf", "loop10.tng")
    value = engines.classical_trace(loop.curves, torus)
    assert sympy.expand(value - (z_b * z_c + z_b / z_c + 1 / (z_b * z_c))) == 0


def test_classical_needs_curves(load: Loader) -> None:
    with pytest.raises(InputError):
        engines.compare_classical(load("triangle.surf", "corner_arc.tng"))


@pytest.mark.parametrize(
    "surface_name, tangle_name",
    [
        ("torus.surf", "loop10.tng"),
        ("torus.surf", "loop01.tng"),
        ("torus.surf", "loop1m1.tng"),
        ("torus.surf", "loop11.tng"),
        ("selffolded.surf", "selffolded_loop.tng"),
    ],
)
def test_simple_loop_properties(load: Loader, surface_name: str, tangle_name: str) -> None:
    found = engines.properties(load(surface_name, tangle_name))
    assert found.q_positive
    assert found.star_invariant
    assert found.highest_coefficient == ONE
    assert found.highest_matches_intersections


def test_properties(load: Loader) -> None:
    found = engines.properties(load("torus.surf", "loop10.tng"))
    assert found.highest_exponents == {"a": 0, "b": 1, "c": 1}
    assert found.intersections == {"a": 0, "b": 1, "c": 1}

    longer = engines.properties(load("torus.surf", "loop11.tng"))
    assert longer.intersections == {"a": 1, "b": 2, "c": 1}
    assert longer.highest_matches_intersections


def test_kinks(load: Loader) -> None:
    loop = engines.bw_trace(load("torus.surf", "loop10.tng"))
    assert engines.bw_trace(load("torus.surf", "kinked_loop.tng")) == loop.scale(w(-6, -1))

    kinked = load("triangle.surf", "kinked_arc.tng")
    plain = load("triangle.surf", "corner_arc.tng").with_states(
        {Juncture("a'", 0): 1, Juncture("b'", 0): 1}
    )
    assert engines.bw_trace(kinked) == engines.bw_trace(plain).scale(w(-6, -1))
    assert engines.twist_factor(kinked) == w(2)


def test_parallel_copies_multiply(load: Loader) -> None:
    loop = engines.bw_trace(load("torus.surf", "loop10.tng"))
    assert engines.bw_trace(load("torus.surf", "multicurve.tng")) == loop * loop


def test_writhe_and_correction_reported(load: Loader) -> None:
    report = engines.check_main_theorem(load("triangle.surf", "triangle_crossing.tng"))
    assert (report.writhe, report.boundary_correction) == (-1, 2)
    report = engines.check_main_theorem(load("triangle.surf", "crossed_arcs.tng"))
    assert (report.writhe, report.boundary_correction) == (1, -2)


@pytest.mark.parametrize(
    "case, parallel, k1_lower",
    list(itertools.product(list(PairCase), [True, False], [True, False])),
)
def test_pair_deviation_identity(case: PairCase, parallel: bool, k1_lower: bool) -> None:
    config = engines.model_pair(case, parallel, k1_lower)
    assert config.case == case
    checked = 0
    for states in itertools.product((1, -1), repeat=4):
        try:
            deviation = engines.pair_deviation(config, states)
        except ZeroFactor:
            continue
        writhe = engines.pair_cover_writhe(config.case, states, config.parallel, config.k1_lower)
        expected = (
            -4 * writhe
            + 2 * crossing_sign(config.k1, config.k2)
            + engines.pair_boundary_correction(config, states)
        )
        assert deviation == expected, states
        checked += 1
    assert checked == 9


def test_pair_cover_writhe_rejects_bad_input() -> None:
    with pytest.raises(BadConfig):
        engines.pair_cover_writhe(PairCase.SAME_CORNER, (1, 1, 1), True)
    with pytest.raises(BadConfig):
        engines.pair_cover_writhe(PairCase.SAME_CORNER, (1, 1, 0, 1), True)


def test_highest_term_needs_unique_maximum(torus: Triangulation) -> None:
    element = edge_element(torus, {"a": 1}) + edge_element(torus, {"b": 1})
    with pytest.raises(NoUniqueMax):
        engines.highest_term(element)
    exponents, coefficient = engines.highest_term(element + edge_element(torus, {"a": 1, "b": 1}))
    assert exponents == {"a": 1, "b": 1, "c": 0}
    assert coefficient == ONE


def test_unbalanced_charges(load: Loader) -> None:
    arc = load("triangle.surf", "corner_arc.tng")
    state = {
        Juncture("a", 0): 1,
        Juncture("a'", 0): -1,
        Juncture("b", 0): -1,
        Juncture("b'", 0): -1,
    }
    with pytest.raises(UnbalancedJuncture):
        engines.edge_charges(arc, state)


def test_term_report_json(load: Loader) -> None:
    (term,) = engines.term_reports(load("triangle.surf", "corner_arc.tng"))
    data = term.as_json()
    assert data["state"] == {"a:0": "+", "a':0": "+", "b:0": "-", "b':0": "-"}
    assert data["cover_writhe"] == 0


def test_single_state_terms(load: Loader, triangle: Triangulation) -> None:
    arc = load("triangle.surf", "corner_arc.tng")
    (state,) = enumerate_states(arc)
    assert engines.bw_term(arc, state) == engines.bw_trace(arc)
    monomial = engines.gabella_monomial(arc, state)
    ((key, coefficient),) = monomial.items()
    assert QuantumTorus(triangle).edge_exponents(key) == {"a": 1, "b": -1, "c": 0}
    assert coefficient == ONE


@pytest.mark.parametrize(
    "case, parallel, k1_lower",
    list(itertools.product(list(PairCase), [True, False], [True, False])),
)
def test_pair_boundary_correction_is_even(case: PairCase, parallel: bool, k1_lower: bool) -> None:
    config = engines.model_pair(case, parallel, k1_lower)
    for states in itertools.product((1, -1), repeat=4):
        flipped = tuple(-s for s in states)
        value = engines.pair_boundary_correction(config, states)
        assert engines.pair_boundary_correction(config, flipped) == value


@pytest.mark.parametrize(
    "tangle_name", ["corner_arc.tng", "crossed_arcs.tng", "triangle_crossing.tng"]
)
def test_boundary_correction_is_even(load: Loader, tangle_name: str) -> None:
    presentation = load("triangle.surf", tangle_name)
    flipped = presentation.with_states({j: -s for j, s in presentation.states.items()})
    assert boundary_correction(flipped) == boundary_correction(presentation)


def test_height_exchange_pair_changes_nothing(load: Loader) -> None:
    arcs = load("triangle.surf", "crossed_arcs.tng")
    word = arcs.words["a"]
    padded = arcs.with_word(
        BiangleWord.build(
            "a", [*word.slices[:1], [Generator.HX1], [Generator.HX2], *word.slices[1:]]
        )
    )
    assert len(padded.words["a"].slices) == len(word.slices) + 2
    assert writhe_surface(padded) == writhe_surface(arcs)
    assert boundary_correction(padded) == boundary_correction(arcs)
    assert engines.bw_trace(padded) == engines.bw_trace(arcs)
    assert engines.trhol(padded) == engines.trhol(arcs)
    assert engines.check_main_theorem(padded).passed

    restored = padded.with_word(word)
    assert restored.words == arcs.words
    assert engines.bw_trace(restored) == engines.bw_trace(arcs)


def test_sliding_boundary_endpoints(load: Loader) -> None:
    crossing = load("triangle.surf", "triangle_crossing.tng")
    # the higher endpoint on a' moves to the other side of the lower one, heights kept
    slide = BiangleWord.build(
        "a", [[Generator.XPOS], [Generator.HX1], [Generator.ID_FWD, Generator.ID_FWD]]
    )
    first, second = Juncture("a'", 0), Juncture("a'", 1)
    states = {**crossing.states, first: crossing.states[second], second: crossing.states[first]}
    slid = crossing.with_word(slide).with_states(states)
    assert slid.words["a"].cuts[0] == (1, 0)
    assert writhe_surface(slid) == writhe_surface(crossing) + 1
    assert boundary_correction(slid) == boundary_correction(crossing) - 2
    assert engines.twist_factor(slid) == engines.twist_factor(crossing)
    assert engines.bw_trace(slid) == engines.bw_trace(crossing)
    assert engines.trhol(slid) == engines.trhol(crossing)
    assert engines.check_main_theorem(slid).passed
