"""State-sum engines.

`bw_trace` sums, over all admissible juncture states, the product of biangle matrix elements of
``F`` and of the elevation-ordered corner factors of every triangle. `trhol` sums the same states
with Weyl monomials of the edge charges, weighted by ``G`` matrix elements and ``q^-wr`` where
``wr`` is the writhe of the lift over the triangles. The two are related by the twist factor
``w^(2 wr(K)) w^(dC)`` globally and term by term; `check_main_theorem` verifies both.
"""

from dataclasses import dataclass, field
from fractions import Fraction
import itertools
import logging
from typing import Any, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

import sympy

from .biangle_ops import Invariant, word_matrix_element
from .errors import (
    BadConfig,
    InputError,
    NoUniqueMax,
    ParityError,
    UnbalancedJuncture,
    ZeroFactor,
)
from .omega_ring import ONE, OmegaPoly, w
from .qtorus import QTElement, QuantumTorus, corner_factor
from .surface import Triangle, Triangulation
from .tangle import (
    CurveWord,
    Juncture,
    JunctureState,
    PairCase,
    PairConfig,
    PlacedSegment,
    SegmentEnd,
    TanglePresentation,
    boundary_correction,
    classify_pair,
    enumerate_states,
    writhe_surface,
)


@dataclass
class TermReport:
    """One juncture state and both of its terms.

    Attributes:
        state (JunctureState): The juncture state J.
        bw (QTElement): Bonahon-Wong term of J.
        monomial (QTElement): Weyl monomial of the edge charges of J.
        coefficient (OmegaPoly): Holonomy coefficient of J (G factors times q^-wr).
        cover_writhe (int): Writhe of the lift of J over the triangles.
    """

    state: JunctureState
    bw: QTElement
    monomial: QTElement
    coefficient: OmegaPoly
    cover_writhe: int

    def holonomy_term(self) -> QTElement:
        return self.monomial.scale(self.coefficient)

    def as_json(self) -> Dict[str, Any]:
        return {
            "state": {str(j): "+" if s > 0 else "-" for j, s in sorted(self.state.items())},
            "bw": self.bw.render(),
            "monomial": self.monomial.render(),
            "coeff": str(self.coefficient),
            "cover_writhe": self.cover_writhe,
        }


def _algebra(presentation: TanglePresentation) -> QuantumTorus:
    return QuantumTorus(presentation.surface)


def _biangle_factor(
    presentation: TanglePresentation, state: Mapping[Juncture, int], which: Invariant
) -> OmegaPoly:
    value = ONE
    for edge, word in presentation.words.items():
        s_in, s_out = presentation.word_states(edge, state)
        value = value * word_matrix_element(word, which, s_in, s_out)
        if not value:
            break
    return value


def triangle_factor(
    presentation: TanglePresentation, triangle: str, state: Mapping[Juncture, int]
) -> QTElement:
    """Product of the corner factors of a triangle's segments, lowest level first."""
    algebra = _algebra(presentation)
    t_index = presentation.surface.triangle_index(triangle)
    value = algebra.one()
    for segment in presentation.segments_in(triangle):
        value = value * corner_factor(
            algebra,
            t_index,
            presentation.side_of(segment.source),
            presentation.side_of(segment.target),
            state[segment.source],
            state[segment.target],
        )
    return value


def bw_term(presentation: TanglePresentation, state: Mapping[Juncture, int]) -> QTElement:
    """Bonahon-Wong term of one juncture state."""
    value = _algebra(presentation).one().scale(
        _biangle_factor(presentation, state, Invariant.F)
    )
    for triangle in presentation.surface.triangles:
        if value.is_zero():
            break
        value = value * triangle_factor(presentation, triangle.name, state)
    return value


def bw_trace(presentation: TanglePresentation, limit: Optional[int] = None) -> QTElement:
    """Quantum trace of the stated tangle by the state-sum formula."""
    algebra = _algebra(presentation)
    total = algebra.zero()
    count = 0
    for state in enumerate_states(presentation, limit):
        total = total + bw_term(presentation, state)
        count += 1
    logging.info(f"Quantum trace: {count} juncture states, {len(total.terms)} terms")
    return total


def pair_cover_writhe(
    case: PairCase, states: Sequence[int], parallel: bool, k1_lower: bool = True
) -> int:
    """Writhe of the lifts of a stated segment pair over their triangle.

    Args:
        case (PairCase): Relative position of the pair.
        states (Sequence[int]): Signs at x1, x2 (on k1) and x3, x4 (on k2).
        parallel (bool): Whether the two segments run in parallel directions.
        k1_lower (bool): Whether k1 is the lower segment.

    Raises:
        BadConfig: If the configuration or the states are malformed.

    Returns:
        int: The pair contribution to the cover writhe.
    """
    if case not in tuple(PairCase) or len(states) != 4 or any(s not in (1, -1) for s in states):
        raise BadConfig(f"bad pair configuration {case!r} with states {list(states)}")
    e1, e2, e3, e4 = states
    if case in (PairCase.SAME_CORNER, PairCase.SAME_CORNER_CROSSING):
        value = -((e1 - e2) * (e3 + e4)) // 4
    else:
        value = -((e1 - e2) * (e3 - e4)) // 4
    if case == PairCase.SAME_CORNER_CROSSING:
        value += (e1 * e3 + (1 if parallel else -1)) // 2
    elif case == PairCase.DISTINCT_CORNERS_CROSSING:
        value += ((-1 if parallel else 1) - e2 * e3) // 2
    return value if k1_lower else -value


def _pair_states(config: PairConfig, state: Mapping[Juncture, int]) -> Tuple[int, ...]:
    return tuple(state[end.juncture] for end in config.ends)


def cover_writhe(presentation: TanglePresentation, state: Mapping[Juncture, int]) -> int:
    """Sum of the pair contributions over all triangles; single segments contribute 0."""
    total = 0
    for triangle in presentation.surface.triangles:
        placed = [presentation.placed(s) for s in presentation.segments_in(triangle.name)]
        for a, b in itertools.combinations(placed, 2):
            config = classify_pair(a, b)
            total += pair_cover_writhe(
                config.case, _pair_states(config, state), config.parallel, config.k1_lower
            )
    return total


_MODEL = QuantumTorus(Triangulation([Triangle("model", ("s0", "s1", "s2"))]))


def pair_deviation(config: PairConfig, states: Sequence[int]) -> int:
    """Exponent d with (lower factor)(upper factor) = w^d [product]_Weyl, by multiplication.

    Raises:
        ZeroFactor: If one of the corner factors vanishes.
    """
    factors: Dict[str, QTElement] = {}
    for segment, (first, second) in (
        (config.k1, (0, 1)),
        (config.k2, (2, 3)),
    ):
        ends = config.ends
        factor = corner_factor(
            _MODEL, 0, ends[first].side, ends[second].side, states[first], states[second]
        )
        if factor.is_zero():
            raise ZeroFactor(f"corner factor of {segment.name} vanishes for {list(states)}")
        factors[segment.name] = factor
    lower, upper = (config.k1, config.k2) if config.k1_lower else (config.k2, config.k1)
    product = factors[lower.name] * factors[upper.name]
    ((_, coefficient),) = product.items()
    exponent, unit = coefficient.single_term()
    if unit != 1:
        raise ZeroFactor(f"unexpected coefficient {coefficient}")
    return exponent


def pair_boundary_correction(config: PairConfig, states: Sequence[int]) -> int:
    """Signed order correction of a pair over the triangle sides both segments meet."""
    lower, upper = ((0, 1), (2, 3)) if config.k1_lower else ((2, 3), (0, 1))
    total = 0
    for i in lower:
        for j in upper:
            x, y = config.ends[i], config.ends[j]
            if x.side == y.side:
                total += (1 if y.u > x.u else -1) * states[i] * states[j]
    return total


def model_pair(case: PairCase, parallel: bool, k1_lower: bool) -> PairConfig:
    """A concrete segment pair of the model triangle realising a configuration."""
    third, half, two_thirds = Fraction(1, 3), Fraction(1, 2), Fraction(2, 3)
    if case in (PairCase.SAME_CORNER, PairCase.SAME_CORNER_CROSSING):
        k1_first = two_thirds if case == PairCase.SAME_CORNER else third
        k2_first = third if case == PairCase.SAME_CORNER else two_thirds
        ends = [(0, k1_first), (1, third), (0, k2_first), (1, two_thirds)]
        k2_reversed = not parallel
    else:
        if case == PairCase.DISTINCT_CORNERS:
            inside, outside = third, two_thirds
        else:
            inside, outside = two_thirds, third
        ends = [(0, half), (1, inside), (1, outside), (2, half)]
        k2_reversed = parallel
    points = [SegmentEnd(Juncture(f"x{i + 1}", 0), side, u) for i, (side, u) in enumerate(ends)]
    levels = (0, 1) if k1_lower else (1, 0)
    k1 = PlacedSegment("k1", levels[0], points[0], points[1])
    k2 = (
        PlacedSegment("k2", levels[1], points[3], points[2])
        if k2_reversed
        else PlacedSegment("k2", levels[1], points[2], points[3])
    )
    config = classify_pair(k1, k2)
    if config.case != case:
        raise BadConfig(f"model pair classified as {config.case!r}, expected {case!r}")
    return config


def edge_charges(
    presentation: TanglePresentation, state: Mapping[Juncture, int]
) -> Dict[str, int]:
    """Sign sum b_e(J) per edge.

    Raises:
        UnbalancedJuncture: If the two copies of an edge carry different sums.
    """
    charges: Dict[str, int] = {}
    for edge in presentation.surface.edges:
        out_sum = sum(state[j] for j in presentation.copy_junctures(edge))
        in_sum = sum(state[j] for j in presentation.copy_junctures(f"{edge}'"))
        if out_sum != in_sum:
            raise UnbalancedJuncture(f"edge {edge}: charges {out_sum} and {in_sum} differ")
        charges[edge] = out_sum
    return charges


def gabella_monomial(
    presentation: TanglePresentation, state: Mapping[Juncture, int]
) -> QTElement:
    """Weyl monomial of the edge generators raised to the charges b_e(J)."""
    algebra = _algebra(presentation)
    return algebra.monomial(algebra.edge_combination(edge_charges(presentation, state)))


def gabella_coefficient(
    presentation: TanglePresentation, state: Mapping[Juncture, int]
) -> Tuple[OmegaPoly, int]:
    """Holonomy coefficient of a state and the cover writhe it uses."""
    writhe = cover_writhe(presentation, state)
    return _biangle_factor(presentation, state, Invariant.G) * w(-4 * writhe), writhe


def term_reports(
    presentation: TanglePresentation, limit: Optional[int] = None
) -> Iterator[TermReport]:
    """Per-state reports in enumeration order."""
    for state in enumerate_states(presentation, limit):
        coefficient, writhe = gabella_coefficient(presentation, state)
        report = TermReport(
            state,
            bw_term(presentation, state),
            gabella_monomial(presentation, state),
            coefficient,
            writhe,
        )
        logging.debug(f"State {_render_state(state)}: coeff {coefficient}, cover writhe {writhe}")
        yield report


def _render_state(state: Mapping[Juncture, int]) -> str:
    return " ".join(f"{j}{'+' if s > 0 else '-'}" for j, s in sorted(state.items()))


def trhol(presentation: TanglePresentation, limit: Optional[int] = None) -> QTElement:
    """Quantum holonomy: sum of coefficient times monomial over the admissible states."""
    total = _algebra(presentation).zero()
    for report in term_reports(presentation, limit):
        total = total + report.holonomy_term()
    return total


def gabella_original(presentation: TanglePresentation, limit: Optional[int] = None) -> QTElement:
    """Quantum holonomy in the X-normalization: exponents (b_e + n_e) / 2 of X_e = Z_e^2.

    Raises:
        ParityError: If some b_e + n_e is odd.
    """
    algebra = _algebra(presentation)
    counts = {edge: presentation.copy_size(edge) for edge in presentation.surface.edges}
    total = algebra.zero()
    for report in term_reports(presentation, limit):
        shifted = {}
        for edge, charge in edge_charges(presentation, report.state).items():
            if (charge + counts[edge]) % 2:
                raise ParityError(f"edge {edge}: exponent ({charge} + {counts[edge]})/2")
            shifted[edge] = charge + counts[edge]
        total = total + algebra.monomial(algebra.edge_combination(shifted), report.coefficient)
    return total


def twist_factor(presentation: TanglePresentation) -> OmegaPoly:
    """``w^(2 wr(K) + dC(K, s))``."""
    return w(2 * writhe_surface(presentation) + boundary_correction(presentation))


@dataclass
class TheoremReport:
    """Outcome of `check_main_theorem`.

    Attributes:
        twist (OmegaPoly): Twist factor of the presentation.
        writhe (int): Surface writhe.
        boundary_correction (int): Signed order correction of the boundary states.
        bw (QTElement): Quantum trace.
        holonomy (QTElement): Quantum holonomy.
        terms (List[TermReport]): Every state.
        failures (List[TermReport]): States whose terms disagree.
    """

    twist: OmegaPoly
    writhe: int
    boundary_correction: int
    bw: QTElement
    holonomy: QTElement
    terms: List[TermReport] = field(default_factory=list)
    failures: List[TermReport] = field(default_factory=list)

    @property
    def global_ok(self) -> bool:
        return self.bw == self.holonomy.scale(self.twist)

    @property
    def passed(self) -> bool:
        return self.global_ok and not self.failures

    def as_json(self) -> Dict[str, Any]:
        return {
            "schema": 1,
            "verdict": "PASS" if self.passed else "FAIL",
            "twist": str(self.twist),
            "writhe": self.writhe,
            "boundary_correction": self.boundary_correction,
            "global": self.global_ok,
            "bw": self.bw.render(),
            "holonomy": self.holonomy.render(),
            "failures": [t.as_json() for t in self.failures],
        }


def check_main_theorem(
    presentation: TanglePresentation, limit: Optional[int] = None
) -> TheoremReport:
    """Compare the quantum trace with the twisted quantum holonomy, globally and per state."""
    algebra = _algebra(presentation)
    twist = twist_factor(presentation)
    report = TheoremReport(
        twist,
        writhe_surface(presentation),
        boundary_correction(presentation),
        algebra.zero(),
        algebra.zero(),
    )
    for term in term_reports(presentation, limit):
        report.terms.append(term)
        report.bw = report.bw + term.bw
        report.holonomy = report.holonomy + term.holonomy_term()
        if term.bw != term.holonomy_term().scale(twist):
            report.failures.append(term)
    verdict = "PASS" if report.passed else "FAIL"
    logging.info(
        f"Trace against twisted holonomy: {verdict} over {len(report.terms)} states, "
        f"twist {twist}"
    )
    return report


def highest_term(element: QTElement) -> Tuple[Dict[str, int], OmegaPoly]:
    """The term whose edge exponents dominate every other term componentwise.

    Raises:
        NotEdgeMonomial: If a term is not a monomial in the edge generators.
        NoUniqueMax: If no single term is maximal.
    """
    algebra = element.algebra
    terms = [(algebra.edge_exponents(k), c) for k, c in element.items()]
    maximal = [
        (exps, c)
        for exps, c in terms
        if not any(
            other != exps and all(other[e] >= exps[e] for e in exps) for other, _ in terms
        )
    ]
    if len(maximal) != 1:
        raise NoUniqueMax(f"{len(maximal)} maximal terms")
    return maximal[0]


def intersection_numbers(curve: CurveWord, surface: Triangulation) -> Dict[str, int]:
    """Number of times the curve crosses every edge."""
    counts = {edge: 0 for edge in surface.edges}
    for step in curve:
        counts[surface.edge_at((surface.triangle_index(step.triangle), step.entry))] += 1
    return counts


def edge_symbols(surface: Triangulation) -> Dict[str, sympy.Symbol]:
    return {edge: sympy.Symbol(f"Z_{edge}") for edge in surface.edges}


_LEFT = sympy.Matrix([[1, 1], [0, 1]])
_RIGHT = sympy.Matrix([[1, 0], [1, 1]])


def _normalize_sign(expr: sympy.Expr) -> sympy.Expr:
    expr = sympy.expand(expr)
    if expr == 0:
        return expr
    leading = expr.as_ordered_terms()[0]
    return -expr if leading.as_coeff_Mul()[0] < 0 else expr


def classical_trace(curves: Sequence[CurveWord], surface: Triangulation) -> sympy.Expr:
    """Trace of the classical monodromy, multiplied over components, with a positive leading
    coefficient."""
    symbols = edge_symbols(surface)
    value: sympy.Expr = sympy.Integer(1)
    for curve in curves:
        monodromy = sympy.eye(2)
        for step in curve:
            z = symbols[surface.edge_at((surface.triangle_index(step.triangle), step.entry))]
            turn = _LEFT if step.exit == (step.entry + 1) % 3 else _RIGHT
            monodromy = monodromy * sympy.diag(z, 1 / z) * turn
        value = value * monodromy.trace()
    return _normalize_sign(value)


def specialize_classical(element: QTElement) -> sympy.Expr:
    """Value of a quantum torus element at w = 1 as a Laurent polynomial in the Z_e."""
    algebra = element.algebra
    symbols = edge_symbols(algebra.surface)
    value: sympy.Expr = sympy.Integer(0)
    for k, c in element.items():
        term: sympy.Expr = sympy.Integer(c.specialize_one())
        for edge, exp in algebra.edge_exponents(k).items():
            term = term * symbols[edge] ** exp
        value = value + term
    return sympy.expand(value)


@dataclass
class ClassicalComparison:
    """Classical oracle against the quantum trace at w = 1."""

    classical: sympy.Expr
    specialized: sympy.Expr

    @property
    def matches(self) -> bool:
        return bool(
            sympy.expand(self.classical - self.specialized) == 0
            or sympy.expand(self.classical + self.specialized) == 0
        )


def compare_classical(
    presentation: TanglePresentation, limit: Optional[int] = None
) -> ClassicalComparison:
    if not presentation.curves:
        raise InputError("the classical trace needs a tangle given by curve lines")
    comparison = ClassicalComparison(
        classical_trace(presentation.curves, presentation.surface),
        specialize_classical(bw_trace(presentation, limit)),
    )
    if not comparison.matches:
        logging.warning(
            f"Classical trace {comparison.classical} differs from {comparison.specialized}"
        )
    return comparison


@dataclass
class PropertyReport:
    """Structural properties of the quantum holonomy of a closed multicurve."""

    highest_exponents: Dict[str, int]
    highest_coefficient: OmegaPoly
    q_positive: bool
    star_invariant: bool
    intersections: Optional[Dict[str, int]]

    @property
    def highest_matches_intersections(self) -> bool:
        return self.intersections is not None and self.highest_exponents == self.intersections


def properties(presentation: TanglePresentation, limit: Optional[int] = None) -> PropertyReport:
    """Highest term, positivity and symmetry of the holonomy coefficients.

    Raises:
        NoUniqueMax: If the holonomy has no unique highest term.
    """
    reports = list(term_reports(presentation, limit))
    algebra = _algebra(presentation)
    holonomy = algebra.zero()
    for report in reports:
        holonomy = holonomy + report.holonomy_term()
    exponents, coefficient = highest_term(holonomy)
    intersections: Optional[Dict[str, int]] = None
    if presentation.curves:
        intersections = {edge: 0 for edge in presentation.surface.edges}
        for curve in presentation.curves:
            for edge, count in intersection_numbers(curve, presentation.surface).items():
                intersections[edge] += count
    coefficients = [c for _, c in holonomy.items()]
    return PropertyReport(
        exponents,
        coefficient,
        all(c.is_q_positive() for c in coefficients),
        all(c.star() == c for c in coefficients),
        intersections,
    )


def state_count(presentation: TanglePresentation, limit: Optional[int] = None) -> int:
    return sum(1 for _ in enumerate_states(presentation, limit))

