import pytest

from quantum_trace.errors import ExponentOverflow, ParseError
from quantum_trace.omega_ring import (
    A,
    EXPONENT_LIMIT,
    OMEGA,
    ONE,
    Q,
    ZERO,
    OmegaPoly,
    is_q_positive,
    multiply,
    poly_sum,
    star,
    w,
)


def test_canonical_text() -> None:
    text = "3*w^-5 + 1*w^0 - 2*w^4"
    assert str(OmegaPoly.parse(text)) == text
    assert str(ZERO) == "0"
    assert str(w(-1, -1)) == "-1*w^-1"


@pytest.mark.parametrize(
    "text, expected",
    [
        ("w", OMEGA),
        ("-w^2 + 3", w(2, -1) + 3),
        ("2w^-3-w", w(-3, 2) - w(1)),
        ("0", ZERO),
        ("1*w^4 - 1*w^4", ZERO),
    ],
)
def test_parse_short_forms(text: str, expected: OmegaPoly) -> None:
    assert OmegaPoly.parse(text) == expected


@pytest.mark.parametrize("text", ["", "x", "w^", "3*w^2*4", "+-w"])
def test_parse_errors(text: str) -> None:
    with pytest.raises(ParseError):
        OmegaPoly.parse(text)


def test_ring_arithmetic() -> None:
    assert (w(1) + 1) * (w(1) - 1) == w(2) - 1
    assert A == w(-2)
    assert Q == w(4)
    assert A ** -2 == Q
    assert (w(3, -1)) ** -1 == w(-3, -1)
    assert OMEGA ** 0 == ONE
    assert 2 - w(1) == -(w(1) - 2)
    assert ONE == 1 and ZERO == 0


def test_non_invertible_power() -> None:
    with pytest.raises(ValueError):
        (w(1) + 1) ** -1


def test_star_and_specialization() -> None:
    value = w(4, 2) - w(-2) + 5
    assert star(value) == w(-4, 2) - w(2) + 5
    assert star(star(value)) == value
    assert value.specialize_one() == 6
    assert value.shift(2) == w(6, 2) - 1 + w(2, 5)


def test_q_positivity() -> None:
    assert is_q_positive(w(4) + 2 + w(-4))
    assert not is_q_positive(w(2))
    assert not is_q_positive(w(4, -1))
    assert is_q_positive(ZERO)


def test_single_term() -> None:
    assert w(-7, 3).single_term() == (-7, 3)
    with pytest.raises(ValueError):
        (w(1) + 1).single_term()


def test_exponent_overflow() -> None:
    with pytest.raises(ExponentOverflow):
        OmegaPoly.monomial(EXPONENT_LIMIT)


def test_coercion() -> None:
    assert OmegaPoly.coerce(3) == w(0, 3)
    with pytest.raises(TypeError):
        OmegaPoly.coerce(1.5)  # type: ignore
    assert poly_sum([w(1), w(1), w(-1)]) == w(1, 2) + w(-1)
    assert hash(w(2) + 1) == hash(1 + w(2))


def test_multiply_distributes() -> None:
    a, b = w(1) + 1, w(-1, 2) - w(3)
    assert multiply(a, b) == w(0, 2) - w(4) + w(-1, 2) - w(3)
    assert multiply(a, ZERO) == ZERO
    assert multiply(a, ONE) == a
