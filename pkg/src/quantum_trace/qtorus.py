"""The quantum torus of a triangulation.

The algebra is the tensor product of one triangle algebra per triangle. Each triangle algebra
is generated by Z_{t,0}, Z_{t,1}, Z_{t,2} (sides clockwise) with
``Z_{t,i} Z_{t,i+1} = w^2 Z_{t,i+1} Z_{t,i}``; generators of different triangles commute.

Elements are stored in the Weyl basis: a `QTElement` maps half-edge exponents k to
coefficients c_k and stands for ``sum c_k [Z^k]_Weyl``. Products follow
``[Z^k][Z^l] = w^sigma(k, l) [Z^(k+l)]`` with sigma the antisymmetric half-edge form.
"""

from typing import Dict, Iterator, List, Mapping, Optional, Tuple, Union

from .errors import DegenerateCorner, MismatchedAlgebra, NotEdgeMonomial
from .omega_ring import ONE, ZERO, OmegaPoly, Scalar
from .surface import SideSlot, SplitStructure, Triangulation


class HalfEdgeExponent:
    """Integer exponent per (triangle, side) pair with finite support."""

    __slots__ = ("_items", "_hash")

    def __init__(self, values: Optional[Mapping[SideSlot, int]] = None) -> None:
        self._items: Tuple[Tuple[SideSlot, int], ...] = tuple(
            sorted((slot, exp) for slot, exp in (values or {}).items() if exp)
        )
        self._hash = hash(self._items)

    @classmethod
    def unit(cls, t_index: int, side: int, exp: int = 1) -> "HalfEdgeExponent":
        return cls({(t_index, side): exp})

    def items(self) -> Iterator[Tuple[SideSlot, int]]:
        return iter(self._items)

    def get(self, slot: SideSlot) -> int:
        for key, exp in self._items:
            if key == slot:
                return exp
        return 0

    def as_dict(self) -> Dict[SideSlot, int]:
        return dict(self._items)

    def is_zero(self) -> bool:
        return not self._items

    def triangle_sum(self, t_index: int) -> int:
        return sum(exp for (t, _), exp in self._items if t == t_index)

    def __add__(self, other: "HalfEdgeExponent") -> "HalfEdgeExponent":
        merged = dict(self._items)
        for slot, exp in other._items:
            merged[slot] = merged.get(slot, 0) + exp
        return HalfEdgeExponent(merged)

    def __neg__(self) -> "HalfEdgeExponent":
        return HalfEdgeExponent({slot: -exp for slot, exp in self._items})

    def __mul__(self, factor: int) -> "HalfEdgeExponent":
        return HalfEdgeExponent({slot: exp * factor for slot, exp in self._items})

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HalfEdgeExponent):
            return NotImplemented
        return self._items == other._items

    def __lt__(self, other: "HalfEdgeExponent") -> bool:
        return self._items < other._items

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"HalfEdgeExponent({dict(self._items)!r})"


def sigma(k: HalfEdgeExponent, l: HalfEdgeExponent) -> int:  # noqa: E741
    """Antisymmetric form sum eps(u, v) k_u l_v with eps(s_i, s_{i+1}) = 1 per triangle."""
    total = 0
    other = l.as_dict()
    for (t_index, side), exp in k.items():
        total += exp * other.get((t_index, (side + 1) % 3), 0)
        total -= exp * other.get((t_index, (side - 1) % 3), 0)
    return total


class QuantumTorus:
    """The tensor product of the triangle algebras of a triangulation."""

    def __init__(self, surface: Triangulation) -> None:
        self.surface = surface
        self.key = tuple((t.name, t.sides) for t in surface.triangles)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QuantumTorus):
            return NotImplemented
        return self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def zero(self) -> "QTElement":
        return QTElement(self, {})

    def one(self) -> "QTElement":
        return QTElement(self, {HalfEdgeExponent(): ONE})

    def monomial(self, k: HalfEdgeExponent, c: Scalar = 1) -> "QTElement":
        return QTElement(self, {k: OmegaPoly.coerce(c)})

    def edge_vector(self, edge: str) -> HalfEdgeExponent:
        """Sum of the unit exponents of the side slots carrying ``edge``."""
        total = HalfEdgeExponent()
        for t_index, side in self.surface.edge_slots(edge):
            total = total + HalfEdgeExponent.unit(t_index, side)
        return total

    def edge_combination(self, exponents: Mapping[str, int]) -> HalfEdgeExponent:
        total = HalfEdgeExponent()
        for edge, exp in exponents.items():
            total = total + self.edge_vector(edge) * exp
        return total

    def edge_exponents(self, k: HalfEdgeExponent) -> Dict[str, int]:
        """Write ``k`` as a combination of edge vectors.

        Raises:
            NotEdgeMonomial: If the two slots of some edge carry different exponents.
        """
        result = {edge: k.get(self.surface.edge_slots(edge)[0]) for edge in self.surface.edges}
        if self.edge_combination(result) != k:
            raise NotEdgeMonomial(f"{self.render_exponent(k)} is not an edge monomial")
        return result

    def render_exponent(self, k: HalfEdgeExponent) -> str:
        return " ".join(
            f"({self.surface.triangles[t].name},{side + 1})^{exp}" for (t, side), exp in k.items()
        )


class QTElement:
    """Element ``sum c_k [Z^k]_Weyl`` of a quantum torus."""

    __slots__ = ("algebra", "_terms")

    def __init__(
        self, algebra: QuantumTorus, terms: Mapping[HalfEdgeExponent, OmegaPoly]
    ) -> None:
        self.algebra = algebra
        self._terms: Dict[HalfEdgeExponent, OmegaPoly] = {
            k: c for k, c in terms.items() if not c.is_zero()
        }

    @property
    def terms(self) -> Dict[HalfEdgeExponent, OmegaPoly]:
        return dict(self._terms)

    def items(self) -> List[Tuple[HalfEdgeExponent, OmegaPoly]]:
        return sorted(self._terms.items(), key=lambda item: item[0])

    def coefficient(self, k: HalfEdgeExponent) -> OmegaPoly:
        return self._terms.get(k, ZERO)

    def is_zero(self) -> bool:
        return not self._terms

    def _check(self, other: "QTElement") -> None:
        if self.algebra != other.algebra:
            raise MismatchedAlgebra("elements belong to different quantum tori")

    def __add__(self, other: "QTElement") -> "QTElement":
        self._check(other)
        merged = dict(self._terms)
        for k, c in other._terms.items():
            merged[k] = merged.get(k, ZERO) + c
        return QTElement(self.algebra, merged)

    def __neg__(self) -> "QTElement":
        return QTElement(self.algebra, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other: "QTElement") -> "QTElement":
        return self + (-other)

    def scale(self, factor: Scalar) -> "QTElement":
        scalar = OmegaPoly.coerce(factor)
        return QTElement(self.algebra, {k: c * scalar for k, c in self._terms.items()})

    def __mul__(self, other: Union["QTElement", Scalar]) -> "QTElement":
        if isinstance(other, (int, OmegaPoly)):
            return self.scale(other)
        if not isinstance(other, QTElement):
            return NotImplemented
        self._check(other)
        product: Dict[HalfEdgeExponent, OmegaPoly] = {}
        for k, c in self._terms.items():
            for l, d in other._terms.items():  # noqa: E741
                key = k + l
                product[key] = product.get(key, ZERO) + (c * d).shift(sigma(k, l))
        return QTElement(self.algebra, product)

    def __rmul__(self, other: Scalar) -> "QTElement":
        return self.scale(other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QTElement):
            return NotImplemented
        return self.algebra == other.algebra and self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def render(self) -> str:
        """Canonical text: one line per term, terms sorted by exponent.

        A term with empty exponent prints its coefficient alone, so the identity is ``1``.
        """
        if not self._terms:
            return "0"
        lines = []
        for k, c in self.items():
            if k.is_zero():
                lines.append(_scalar_text(c))
                continue
            coeff = str(c) if c.is_monomial() else f"({c})"
            lines.append(f"{coeff} * {self.algebra.render_exponent(k)}")
        return "\n".join(lines)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"QTElement({self.render()!r})"


def _scalar_text(c: OmegaPoly) -> str:
    """Integer constants print as plain integers, other scalars in omega_ring form."""
    if c.is_monomial():
        exp, coeff = c.single_term()
        if exp == 0:
            return str(coeff)
    return str(c)


def weyl_monomial(algebra: QuantumTorus, k: HalfEdgeExponent, c: Scalar = 1) -> QTElement:
    return algebra.monomial(k, c)


def qt_multiply(a: QTElement, b: QTElement) -> QTElement:
    return a * b


def edge_generator(split_structure: SplitStructure, edge: str, power: int = 1) -> QTElement:
    """Return ``Z_e^power``, the Weyl monomial of ``power`` times the edge vector.

    Covers boundary, internal and self-folded edges alike. Raises `UnknownEdge` for labels that
    are not edges of the triangulation.
    """
    algebra = QuantumTorus(split_structure.triangulation)
    return algebra.monomial(algebra.edge_vector(edge) * power)


def is_balanced(a: QTElement) -> bool:
    """True iff every term has an even exponent sum in every triangle."""
    count = a.algebra.surface.triangle_count
    return all(k.triangle_sum(t) % 2 == 0 for k in a.terms for t in range(count))


def is_admissible(first_sign: int, second_sign: int) -> bool:
    """False exactly for the pattern (-, +) read in clockwise corner order."""
    return not (first_sign < 0 and second_sign > 0)


def corner_factor(
    algebra: QuantumTorus, t_index: int, side_in: int, side_out: int, s_in: int, s_out: int
) -> QTElement:
    """Triangle value of a stated corner arc.

    Args:
        algebra (QuantumTorus): Target algebra.
        t_index (int): Triangle index.
        side_in (int): Side of the first endpoint.
        side_out (int): Side of the second endpoint.
        s_in (int): State (+1/-1) of the endpoint on ``side_in``.
        s_out (int): State of the endpoint on ``side_out``.

    Raises:
        DegenerateCorner: If both endpoints are on the same side.

    Returns:
        QTElement: Zero for (-, +) in clockwise order, else [Z_first^s1 Z_second^s2]_Weyl.
    """
    if side_in == side_out:
        raise DegenerateCorner(f"corner with both endpoints on side {side_in}")
    if side_out == (side_in + 1) % 3:
        first, second = (side_in, s_in), (side_out, s_out)
    else:
        first, second = (side_out, s_out), (side_in, s_in)
    if not is_admissible(first[1], second[1]):
        return algebra.zero()
    exponent = HalfEdgeExponent({(t_index, first[0]): first[1], (t_index, second[0]): second[1]})
    return algebra.monomial(exponent)
