"""Exact arithmetic in the Laurent ring Z[w, w^-1].

`OmegaPoly` is the coefficient ring of every other structure in the package. Elements are
immutable; the fixed powers ``A = w^-2`` and ``q = w^4`` are exported as constants.

Textual form, accepted by `OmegaPoly.parse` and emitted by ``str()``::

    poly  := "0" | term (("+" | "-") term)*
    term  := ["-"] [digits ["*"]] "w" ["^" ["-"] digits] | ["-"] digits

Emitted terms always use the long form ``c*w^k`` sorted by increasing exponent, e.g.
``3*w^-5 + 1*w^0 - 2*w^4``.
"""

import re
from typing import Dict, Iterable, Iterator, Mapping, Optional, Tuple, Union

from .errors import ExponentOverflow, ParseError

EXPONENT_LIMIT = 2**31

_TERM_RE = re.compile(
    r"(?P<sign>[+-]?)(?P<coeff>\d+)?(?:\*?(?P<w>w)(?:\^(?P<exp>-?\d+))?)?"
)

Scalar = Union[int, "OmegaPoly"]


def _check_exponent(exp: int) -> int:
    if not -EXPONENT_LIMIT < exp < EXPONENT_LIMIT:
        raise ExponentOverflow(f"w-exponent {exp} outside the supported range")
    return exp


class OmegaPoly:
    """Laurent polynomial in w with integer coefficients.

    The stored map never contains a zero coefficient, so two polynomials are equal iff their
    term maps are equal.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[Mapping[int, int]] = None) -> None:
        clean: Dict[int, int] = {}
        for exp, coeff in (terms or {}).items():
            if coeff:
                clean[_check_exponent(int(exp))] = int(coeff)
        self._terms: Tuple[Tuple[int, int], ...] = tuple(sorted(clean.items()))
        self._hash: Optional[int] = None

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> "OmegaPoly":
        """Return ``coeff * w^exp``."""
        return cls({exp: coeff})

    @classmethod
    def constant(cls, value: int) -> "OmegaPoly":
        return cls({0: value})

    @classmethod
    def coerce(cls, value: Scalar) -> "OmegaPoly":
        if isinstance(value, OmegaPoly):
            return value
        if isinstance(value, int):
            return cls.constant(value)
        raise TypeError(f"cannot use {type(value).__name__} as an OmegaPoly")

    @classmethod
    def parse(cls, text: str) -> "OmegaPoly":
        """Parse the textual form described in the module documentation.

        Args:
            text (str): Polynomial such as ``"3*w^-5 + 1*w^0 - 2*w^4"``.

        Raises:
            ParseError: If the text does not follow the grammar.

        Returns:
            OmegaPoly: The parsed polynomial.
        """
        compact = "".join(text.split())
        if not compact:
            raise ParseError("empty polynomial")
        terms: Dict[int, int] = {}
        pos = 0
        while pos < len(compact):
            match = _TERM_RE.match(compact, pos)
            if match is None or match.end() == pos:
                raise ParseError(f"cannot parse polynomial {text!r} at offset {pos}")
            sign, coeff, var, exp = match.group("sign", "coeff", "w", "exp")
            if pos > 0 and not sign:
                raise ParseError(f"missing operator in polynomial {text!r} at offset {pos}")
            if coeff is None and var is None:
                raise ParseError(f"dangling sign in polynomial {text!r}")
            value = int(coeff) if coeff is not None else 1
            power = 0 if var is None else (int(exp) if exp is not None else 1)
            if sign == "-":
                value = -value
            terms[power] = terms.get(power, 0) + value
            pos = match.end()
        return cls(terms)

    @property
    def terms(self) -> Dict[int, int]:
        """Copy of the exponent to coefficient map."""
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[int, int]]:
        return iter(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def single_term(self) -> Tuple[int, int]:
        """Return ``(exponent, coefficient)`` of a monomial.

        Raises:
            ValueError: If the polynomial does not have exactly one term.
        """
        if len(self._terms) != 1:
            raise ValueError(f"{self} is not a monomial")
        return self._terms[0]

    def shift(self, exp: int) -> "OmegaPoly":
        """Multiply by ``w^exp``."""
        return OmegaPoly({e + exp: c for e, c in self._terms})

    def star(self) -> "OmegaPoly":
        """Substitute w -> w^-1."""
        return OmegaPoly({-e: c for e, c in self._terms})

    def specialize_one(self) -> int:
        """Evaluate at w = 1."""
        return sum(c for _, c in self._terms)

    def is_q_positive(self) -> bool:
        """True iff the polynomial lies in Z_{>=0}[q, q^-1] with q = w^4."""
        return all(e % 4 == 0 and c >= 0 for e, c in self._terms)

    def __add__(self, other: Scalar) -> "OmegaPoly":
        if not isinstance(other, (int, OmegaPoly)):
            return NotImplemented
        merged = dict(self._terms)
        for exp, coeff in OmegaPoly.coerce(other)._terms:
            merged[exp] = merged.get(exp, 0) + coeff
        return OmegaPoly(merged)

    __radd__ = __add__

    def __neg__(self) -> "OmegaPoly":
        return OmegaPoly({e: -c for e, c in self._terms})

    def __sub__(self, other: Scalar) -> "OmegaPoly":
        if not isinstance(other, (int, OmegaPoly)):
            return NotImplemented
        return self + (-OmegaPoly.coerce(other))

    def __rsub__(self, other: Scalar) -> "OmegaPoly":
        return OmegaPoly.coerce(other) - self

    def __mul__(self, other: Scalar) -> "OmegaPoly":
        if not isinstance(other, (int, OmegaPoly)):
            return NotImplemented
        product: Dict[int, int] = {}
        for e1, c1 in self._terms:
            for e2, c2 in OmegaPoly.coerce(other)._terms:
                product[e1 + e2] = product.get(e1 + e2, 0) + c1 * c2
        return OmegaPoly(product)

    __rmul__ = __mul__

    def __pow__(self, power: int) -> "OmegaPoly":
        if power < 0:
            if not self.is_monomial() or abs(self._terms[0][1]) != 1:
                raise ValueError(f"{self} is not invertible")
            exp, coeff = self._terms[0]
            return OmegaPoly.monomial(-exp * -power, coeff ** (-power))
        result = ONE
        for _ in range(power):
            result = result * self
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = OmegaPoly.constant(other)
        if not isinstance(other, OmegaPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._terms)
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for index, (exp, coeff) in enumerate(self._terms):
            text = f"{abs(coeff)}*w^{exp}"
            if index == 0:
                parts.append(text if coeff > 0 else f"-{text}")
            else:
                parts.append(f"{'+' if coeff > 0 else '-'} {text}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"OmegaPoly({str(self)!r})"


ZERO = OmegaPoly()
ONE = OmegaPoly.constant(1)
OMEGA = OmegaPoly.monomial(1)
A = OmegaPoly.monomial(-2)
Q = OmegaPoly.monomial(4)


def w(exp: int, coeff: int = 1) -> OmegaPoly:
    """Shorthand for ``coeff * w^exp``."""
    return OmegaPoly.monomial(exp, coeff)


def multiply(a: OmegaPoly, b: OmegaPoly) -> OmegaPoly:
    return a * b


def star(a: OmegaPoly) -> OmegaPoly:
    return a.star()


def specialize_one(a: OmegaPoly) -> int:
    return a.specialize_one()


def is_q_positive(a: OmegaPoly) -> bool:
    return a.is_q_positive()


def poly_sum(values: Iterable[OmegaPoly]) -> OmegaPoly:
    total = ZERO
    for value in values:
        total = total + value
    return total
