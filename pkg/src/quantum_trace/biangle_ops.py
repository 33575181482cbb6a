"""Operator invariants of biangle words.

Both invariants act on tensor powers of V = span(xi_+, xi_-). Basis vectors of V^n are sign
sequences ordered by horizontal position, and operators are stored sparsely as
``{input signs: {output signs: coefficient}}``.

* ``F`` is the Reshetikhin-Turaev functor, which agrees with the biangle quantum trace.
* ``G`` is the operator invariant used by the quantum holonomy.

For every word the two are related by
``F(w) = w^(2 wr(w)) C(out, +1) o G(w) o C(in, -1)``, where ``C`` is the signed order correction
operator of a boundary cut.
"""

from enum import Enum
import functools
import itertools
from typing import Callable, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from networkx.utils import UnionFind

from .errors import ArityMismatch, NoCrossing, StateArityMismatch
from .omega_ring import A, ONE, ZERO, OmegaPoly, Scalar, w
from .tangle import SHAPES, BiangleWord, Generator, signed_order_correction

SignSeq = Tuple[int, ...]
Vector = Dict[SignSeq, OmegaPoly]

PP: SignSeq = (1, 1)
PM: SignSeq = (1, -1)
MP: SignSeq = (-1, 1)
MM: SignSeq = (-1, -1)


class Invariant(str, Enum):
    """Which operator invariant to evaluate.

    Attributes:
        F (str): Reshetikhin-Turaev operator.
        G (str): Quantum holonomy operator.
    """

    F = "F"
    G = "G"


def sign_sequences(n: int) -> Iterator[SignSeq]:
    """All sign sequences of length n, + before - position by position."""
    return itertools.product((1, -1), repeat=n)


class LinearOp:
    """Sparse linear map V^n_in -> V^n_out with `OmegaPoly` coefficients.

    Args:
        n_in (int): Input arity.
        n_out (int): Output arity.
        table (Mapping[SignSeq, Mapping[SignSeq, Scalar]]): Image of every basis vector; missing
            inputs map to zero.

    Raises:
        ArityMismatch: If a sign sequence has the wrong length.
    """

    __slots__ = ("n_in", "n_out", "_table")

    def __init__(
        self, n_in: int, n_out: int, table: Mapping[SignSeq, Mapping[SignSeq, Scalar]]
    ) -> None:
        self.n_in = n_in
        self.n_out = n_out
        self._table: Dict[SignSeq, Vector] = {}
        for s_in, column in table.items():
            if len(s_in) != n_in:
                raise ArityMismatch(f"input {s_in} does not have arity {n_in}")
            clean: Vector = {}
            for s_out, coeff in column.items():
                if len(s_out) != n_out:
                    raise ArityMismatch(f"output {s_out} does not have arity {n_out}")
                value = OmegaPoly.coerce(coeff)
                if value:
                    clean[tuple(s_out)] = value
            if clean:
                self._table[tuple(s_in)] = clean

    @classmethod
    def identity(cls, n: int) -> "LinearOp":
        return cls(n, n, {s: {s: ONE} for s in sign_sequences(n)})

    @classmethod
    def diagonal(cls, n: int, value: Callable[[SignSeq], OmegaPoly]) -> "LinearOp":
        return cls(n, n, {s: {s: value(s)} for s in sign_sequences(n)})

    def column(self, s_in: SignSeq) -> Vector:
        return dict(self._table.get(tuple(s_in), {}))

    def entries(self) -> List[Tuple[SignSeq, SignSeq, OmegaPoly]]:
        """All nonzero entries as (input, output, coefficient), + before -."""
        key = functools.cmp_to_key(_sign_order)
        return [
            (s_in, s_out, self._table[s_in][s_out])
            for s_in in sorted(self._table, key=key)
            for s_out in sorted(self._table[s_in], key=key)
        ]

    def apply(self, vector: Mapping[SignSeq, OmegaPoly]) -> Vector:
        result: Vector = {}
        for s_in, coeff in vector.items():
            for s_out, entry in self._table.get(s_in, {}).items():
                result[s_out] = result.get(s_out, ZERO) + coeff * entry
        return {s: c for s, c in result.items() if c}

    def compose(self, inner: "LinearOp") -> "LinearOp":
        """Return ``self o inner``.

        Raises:
            ArityMismatch: If ``inner`` does not land in the domain of ``self``.
        """
        if inner.n_out != self.n_in:
            raise ArityMismatch(
                f"cannot compose {self.n_in}->{self.n_out} after {inner.n_in}->{inner.n_out}"
            )
        return LinearOp(
            inner.n_in,
            self.n_out,
            {s_in: self.apply(column) for s_in, column in inner._table.items()},
        )

    __matmul__ = compose

    def tensor(self, other: "LinearOp") -> "LinearOp":
        table: Dict[SignSeq, Vector] = {}
        for (a_in, a_col), (b_in, b_col) in itertools.product(
            self._table.items(), other._table.items()
        ):
            table[a_in + b_in] = {
                a_out + b_out: ca * cb
                for (a_out, ca), (b_out, cb) in itertools.product(a_col.items(), b_col.items())
            }
        return LinearOp(self.n_in + other.n_in, self.n_out + other.n_out, table)

    def scale(self, factor: Scalar) -> "LinearOp":
        scalar = OmegaPoly.coerce(factor)
        return LinearOp(
            self.n_in,
            self.n_out,
            {s: {t: c * scalar for t, c in col.items()} for s, col in self._table.items()},
        )

    def __add__(self, other: "LinearOp") -> "LinearOp":
        if (self.n_in, self.n_out) != (other.n_in, other.n_out):
            raise ArityMismatch("cannot add operators of different arities")
        table: Dict[SignSeq, Vector] = {s: dict(col) for s, col in self._table.items()}
        for s_in, column in other._table.items():
            row = table.setdefault(s_in, {})
            for s_out, coeff in column.items():
                row[s_out] = row.get(s_out, ZERO) + coeff
        return LinearOp(self.n_in, self.n_out, table)

    def __neg__(self) -> "LinearOp":
        return self.scale(-1)

    def __sub__(self, other: "LinearOp") -> "LinearOp":
        return self + (-other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LinearOp):
            return NotImplemented
        return (self.n_in, self.n_out, self._table) == (other.n_in, other.n_out, other._table)

    __hash__ = None  # type: ignore

    def matrix_element(self, s_in: Sequence[int], s_out: Sequence[int]) -> OmegaPoly:
        return matrix_element(self, s_in, s_out)

    def render(self) -> str:
        if not self._table:
            return "0"
        return "\n".join(
            f"{_render_signs(s_in)} -> {_render_signs(s_out)}: {c}"
            for s_in, s_out, c in self.entries()
        )

    def __repr__(self) -> str:
        return f"LinearOp({self.n_in}->{self.n_out}, {len(self._table)} columns)"


def _sign_order(a: SignSeq, b: SignSeq) -> int:
    ka, kb = tuple(-s for s in a), tuple(-s for s in b)
    return (ka > kb) - (ka < kb)


def _render_signs(signs: SignSeq) -> str:
    return "".join("+" if s > 0 else "-" for s in signs) or "()"


def _op(n_in: int, n_out: int, table: Mapping[SignSeq, Mapping[SignSeq, Scalar]]) -> LinearOp:
    return LinearOp(n_in, n_out, table)


_IDENTITY_1 = LinearOp.identity(1)

_RT_TABLES: Dict[Generator, LinearOp] = {
    Generator.ID_FWD: _IDENTITY_1,
    Generator.ID_BWD: _IDENTITY_1,
    Generator.CUP_UP: _op(0, 2, {(): {PM: w(1), MP: w(5, -1)}}),
    Generator.CUP_DOWN: _op(0, 2, {(): {PM: w(1), MP: w(5, -1)}}),
    Generator.CAP_UP: _op(2, 0, {PM: {(): w(-5, -1)}, MP: {(): w(-1)}}),
    Generator.CAP_DOWN: _op(2, 0, {PM: {(): w(-5, -1)}, MP: {(): w(-1)}}),
    Generator.HX1: _op(
        2,
        2,
        {
            PP: {PP: w(2)},
            MM: {MM: w(2)},
            PM: {PM: w(-2), MP: w(2) - w(-6)},
            MP: {MP: w(-2)},
        },
    ),
    Generator.HX2: _op(
        2,
        2,
        {
            PP: {PP: w(-2)},
            MM: {MM: w(-2)},
            PM: {PM: w(2), MP: w(-2) - w(6)},
            MP: {MP: w(2)},
        },
    ),
    Generator.XPOS: _op(
        2,
        2,
        {
            PP: {PP: w(-2)},
            MM: {MM: w(-2)},
            PM: {MP: w(2)},
            MP: {PM: w(2), MP: w(-2) - w(6)},
        },
    ),
    Generator.XNEG: _op(
        2,
        2,
        {
            PP: {PP: w(2)},
            MM: {MM: w(2)},
            PM: {PM: w(2) - w(-6), MP: w(-2)},
            MP: {PM: w(-2)},
        },
    ),
}

_GB_TABLES: Dict[Generator, LinearOp] = {
    Generator.ID_FWD: _IDENTITY_1,
    Generator.ID_BWD: _IDENTITY_1,
    Generator.CUP_UP: _op(0, 2, {(): {PM: ONE, MP: w(4, -1)}}),
    Generator.CUP_DOWN: _op(0, 2, {(): {PM: ONE, MP: w(4, -1)}}),
    Generator.CAP_UP: _op(2, 0, {PM: {(): w(-4, -1)}, MP: {(): ONE}}),
    Generator.CAP_DOWN: _op(2, 0, {PM: {(): w(-4, -1)}, MP: {(): ONE}}),
    Generator.HX1: _op(
        2, 2, {PP: {PP: ONE}, MM: {MM: ONE}, PM: {PM: ONE, MP: w(4) - w(-4)}, MP: {MP: ONE}}
    ),
    Generator.HX2: _op(
        2, 2, {PP: {PP: ONE}, MM: {MM: ONE}, PM: {PM: ONE, MP: w(-4) - w(4)}, MP: {MP: ONE}}
    ),
    Generator.XPOS: _op(
        2,
        2,
        {PP: {PP: w(-4)}, MM: {MM: w(-4)}, PM: {MP: ONE}, MP: {PM: ONE, MP: w(-4) - w(4)}},
    ),
    Generator.XNEG: _op(
        2,
        2,
        {PP: {PP: w(4)}, MM: {MM: w(4)}, PM: {PM: w(4) - w(-4), MP: ONE}, MP: {PM: ONE}},
    ),
}


def rt_elementary(gen: Generator) -> LinearOp:
    """Reshetikhin-Turaev operator of an elementary generator."""
    return _RT_TABLES[gen]


def gabella_elementary(gen: Generator) -> LinearOp:
    """Quantum holonomy operator of an elementary generator."""
    return _GB_TABLES[gen]


def elementary(gen: Generator, which: Invariant) -> LinearOp:
    return rt_elementary(gen) if which == Invariant.F else gabella_elementary(gen)


def _apply_pieces(ops: Sequence[LinearOp], vector: Mapping[SignSeq, OmegaPoly]) -> Vector:
    result: Vector = {}
    for signs, coeff in vector.items():
        partial: List[Tuple[SignSeq, OmegaPoly]] = [((), coeff)]
        offset = 0
        for op in ops:
            column = op.column(signs[offset : offset + op.n_in])
            offset += op.n_in
            partial = [
                (prefix + s_out, c * entry)
                for prefix, c in partial
                for s_out, entry in column.items()
            ]
            if not partial:
                break
        for s_out, c in partial:
            result[s_out] = result.get(s_out, ZERO) + c
    return {s: c for s, c in result.items() if c}


def _slice_ops(
    pieces: Sequence[Generator], which: Invariant, replace: Optional[Tuple[int, LinearOp]] = None
) -> List[LinearOp]:
    ops = [elementary(gen, which) for gen in pieces]
    if replace is not None:
        ops[replace[0]] = replace[1]
    return ops


def _push(
    word: BiangleWord,
    which: Invariant,
    vector: Mapping[SignSeq, OmegaPoly],
    replace: Optional[Tuple[int, int, LinearOp]] = None,
) -> Vector:
    current: Vector = dict(vector)
    for index, pieces in enumerate(word.slices):
        swap = (replace[1], replace[2]) if replace and replace[0] == index else None
        current = _apply_pieces(_slice_ops(pieces, which, swap), current)
        if not current:
            break
    return current


def _evaluate(
    word: BiangleWord, which: Invariant, replace: Optional[Tuple[int, int, LinearOp]] = None
) -> LinearOp:
    table = {s: _push(word, which, {s: ONE}, replace) for s in sign_sequences(word.n_in)}
    return LinearOp(word.n_in, word.n_out, table)


@functools.lru_cache(maxsize=None)
def evaluate_word(word: BiangleWord, which: Invariant = Invariant.F) -> LinearOp:
    """Operator of a whole word: slices composed from the IN side, pieces tensored in order.

    Args:
        word (BiangleWord): A validated word.
        which (Invariant): ``F`` or ``G``.

    Returns:
        LinearOp: Operator V^n_in -> V^n_out; the empty word gives the identity of arity 0.
    """
    return _evaluate(word, which)


def matrix_element(op: LinearOp, s_in: Sequence[int], s_out: Sequence[int]) -> OmegaPoly:
    """The pairing <xi^s_out, op xi^s_in>.

    Raises:
        StateArityMismatch: If the state lengths differ from the operator arities.
    """
    if len(s_in) != op.n_in or len(s_out) != op.n_out:
        raise StateArityMismatch(
            f"state of shape {len(s_in)}->{len(s_out)} for an operator {op.n_in}->{op.n_out}"
        )
    return op.column(tuple(s_in)).get(tuple(s_out), ZERO)


@functools.lru_cache(maxsize=None)
def word_matrix_element(
    word: BiangleWord, which: Invariant, s_in: SignSeq, s_out: SignSeq
) -> OmegaPoly:
    """Matrix element of a word, pushing a single basis vector through the slices."""
    if len(s_in) != word.n_in or len(s_out) != word.n_out:
        raise StateArityMismatch(
            f"biangle {word.edge}: state of shape {len(s_in)}->{len(s_out)} for a word "
            f"{word.n_in}->{word.n_out}"
        )
    return _push(word, which, {s_in: ONE}).get(s_out, ZERO)


def correction_operator(ranks: Sequence[int], orientation: int, inverse: bool = False) -> LinearOp:
    """Diagonal signed order correction operator of a cut.

    Args:
        ranks (Sequence[int]): Vertical rank of every point, by horizontal position.
        orientation (int): +1 if the arc runs toward increasing position, -1 otherwise.
        inverse (bool): Negate every exponent.

    Returns:
        LinearOp: ``xi^s -> w^(+-C(s)) xi^s``.
    """
    sign = -1 if inverse else 1

    def value(signs: SignSeq) -> OmegaPoly:
        points = [(pos, ranks[pos], signs[pos]) for pos in range(len(ranks))]
        return w(sign * signed_order_correction(points, orientation))

    return LinearOp.diagonal(len(ranks), value)


def twist_relation(word: BiangleWord) -> LinearOp:
    """Right-hand side ``w^(2 wr) C(out, +1) o G(word) o C(in, -1)``; equals ``F(word)``."""
    outer = correction_operator(word.cuts[-1], 1)
    inner = correction_operator(word.cuts[0], -1)
    return (outer @ evaluate_word(word, Invariant.G) @ inner).scale(w(2 * word.writhe))


def kauffman_check(word: BiangleWord) -> bool:
    """Check the Kauffman bracket relation at every crossing of the word.

    Each crossing is replaced at the operator level by its two smoothings: the pair of parallel
    strands ``hx2 o hx1`` and the turnback ``cup o cap``. The word must satisfy
    ``F = A F(strands) + A^-1 F(turnback)`` at a positive crossing and the mirrored relation
    at a negative one.

    Raises:
        NoCrossing: If the word has no crossing generator.
    """
    crossings = [
        (index, position, gen)
        for index, pieces in enumerate(word.slices)
        for position, gen in enumerate(pieces)
        if SHAPES[gen].crossing
    ]
    if not crossings:
        raise NoCrossing(f"biangle {word.edge}: word has no crossing")
    strands = rt_elementary(Generator.HX2) @ rt_elementary(Generator.HX1)
    turnback = rt_elementary(Generator.CUP_UP) @ rt_elementary(Generator.CAP_UP)
    target = evaluate_word(word, Invariant.F)
    for index, position, gen in crossings:
        factor = A if gen == Generator.XPOS else A ** -1
        smoothed = _evaluate(word, Invariant.F, (index, position, strands)).scale(factor) + (
            _evaluate(word, Invariant.F, (index, position, turnback)).scale(factor ** -1)
        )
        if smoothed != target:
            return False
    return True


def strand_directions(word: BiangleWord) -> Dict[Tuple[int, int], bool]:
    """Directions (True = fwd) at every (cut, position) implied by the word alone.

    Strands whose direction the word leaves open default to fwd; crossing strands are kept
    parallel.
    """
    forest = UnionFind()
    values: Dict[Tuple[int, int], bool] = {}
    for index in range(len(word.slices)):
        for gen, in_pos, out_pos in word.piece_positions(index):
            shape = SHAPES[gen]
            for i, j in shape.links:
                forest.union((index, in_pos + i), (index + 1, out_pos + j))
            if shape.crossing:
                forest.union((index, in_pos), (index, in_pos + 1))
            for i, value in enumerate(shape.fixed_in):
                if value is not None:
                    values[(index, in_pos + i)] = value
            for i, value in enumerate(shape.fixed_out):
                if value is not None:
                    values[(index + 1, out_pos + i)] = value
    by_root = {forest[node]: value for node, value in values.items()}
    return {
        (cut, pos): by_root.get(forest[(cut, pos)], True)
        for cut, ranks in enumerate(word.cuts)
        for pos in range(len(ranks))
    }


_REVERSED: Dict[Generator, Tuple[Generator, ...]] = {
    Generator.CUP_UP: (Generator.HX2, Generator.CAP_DOWN),
    Generator.CUP_DOWN: (Generator.HX2, Generator.CAP_UP),
    Generator.CAP_UP: (Generator.CUP_DOWN, Generator.HX1),
    Generator.CAP_DOWN: (Generator.CUP_UP, Generator.HX1),
    Generator.HX1: (Generator.HX1,),
    Generator.HX2: (Generator.HX2,),
    Generator.XPOS: (Generator.HX2, Generator.XPOS, Generator.HX1),
    Generator.XNEG: (Generator.HX2, Generator.XNEG, Generator.HX1),
}


def _identity_for(forward: bool) -> Generator:
    return Generator.ID_FWD if forward else Generator.ID_BWD


def reverse_word(
    word: BiangleWord, directions: Optional[Mapping[Tuple[int, int], bool]] = None
) -> BiangleWord:
    """The same tangle seen from the other side of the biangle.

    IN and OUT sides are exchanged, horizontal order is reversed and elevations are kept.
    Cups and caps trade places behind a height exchange, crossings are conjugated by height
    exchanges, and matrix elements satisfy
    ``<b| F(word) |a> = <rev a| F(reverse_word(word)) |rev b>`` (the same for ``G``).

    Args:
        word (BiangleWord): The word to reverse.
        directions (Optional[Mapping[Tuple[int, int], bool]]): Strand directions per
            (cut, position); defaults to `strand_directions`.

    Returns:
        BiangleWord: The reversed word.
    """
    dirs = dict(directions) if directions is not None else strand_directions(word)
    slices: List[List[Generator]] = []
    cuts: List[Tuple[int, ...]] = [tuple(reversed(word.cuts[-1]))]
    for index in reversed(range(len(word.slices))):
        block_slices, interior = _reverse_slice(word, index, dirs)
        slices.extend(block_slices)
        cuts.extend(interior)
        cuts.append(tuple(reversed(word.cuts[index])))
    if not slices:
        return BiangleWord.empty(word.edge)
    return BiangleWord.build(word.edge, slices, dict(enumerate(cuts)))


def _reverse_slice(
    word: BiangleWord, index: int, dirs: Mapping[Tuple[int, int], bool]
) -> Tuple[List[List[Generator]], List[Tuple[int, ...]]]:
    cut_in, cut_out = word.cuts[index], word.cuts[index + 1]
    pieces = list(word.piece_positions(index))
    expansions: List[Tuple[Generator, ...]] = []
    for gen, in_pos, _ in pieces:
        if gen in (Generator.ID_FWD, Generator.ID_BWD):
            expansions.append((_identity_for(not dirs[(index, in_pos)]),))
        else:
            expansions.append(_REVERSED[gen])
    length = max((len(e) for e in expansions), default=1)

    through = sorted(
        (p for p, (gen, _, _) in enumerate(pieces) if SHAPES[gen].n_in and SHAPES[gen].n_out),
        key=lambda p: min(_out_ranks(pieces[p], cut_out)),
    )

    def gap(ranks: Sequence[int], out_side: bool) -> int:
        side_ranks = _out_ranks if out_side else _in_ranks
        cut = cut_out if out_side else cut_in
        return sum(1 for p in through if min(side_ranks(pieces[p], cut)) < min(ranks))

    # blocks bottom to top: per gap between through pieces, former cups then former caps
    cups = {
        p: _out_ranks(piece, cut_out)
        for p, piece in enumerate(pieces)
        if not SHAPES[piece[0]].n_in
    }
    caps = {
        p: _in_ranks(piece, cut_in)
        for p, piece in enumerate(pieces)
        if not SHAPES[piece[0]].n_out
    }
    vertical: List[int] = []
    for slot in range(len(through) + 1):
        below = [p for p in cups if gap(cups[p], True) == slot]
        above = [p for p in caps if gap(caps[p], False) == slot]
        vertical.extend(sorted(below, key=lambda p: min(cups[p])))
        vertical.extend(sorted(above, key=lambda p: min(caps[p])))
        if slot < len(through):
            vertical.append(through[slot])

    interior: List[Tuple[int, ...]] = []
    for stage in range(1, length):
        base: Dict[int, int] = {}
        offset = 0
        for p in vertical:
            base[p] = offset
            offset += len(_stage_order(expansions[p], stage))
        ranks: List[int] = []
        for p in reversed(range(len(pieces))):
            ranks.extend(base[p] + r for r in _stage_order(expansions[p], stage))
        interior.append(tuple(ranks))

    block: List[List[Generator]] = [[] for _ in range(length)]
    for p in reversed(range(len(pieces))):
        gen, in_pos, _ = pieces[p]
        expansion = expansions[p]
        n_in = SHAPES[gen].n_in
        for stage in range(length):
            if stage < len(expansion):
                block[stage].append(expansion[stage])
            else:
                block[stage].extend(
                    _identity_for(not dirs[(index, in_pos + n_in - 1 - j)]) for j in range(n_in)
                )
    return block, interior


def _stage_order(expansion: Tuple[Generator, ...], stage: int) -> Tuple[int, ...]:
    """Internal vertical order of a piece's points after ``stage`` slices of its expansion."""
    return SHAPES[expansion[min(stage, len(expansion)) - 1]].out_order


def _in_ranks(piece: Tuple[Generator, int, int], cut_in: Sequence[int]) -> Tuple[int, ...]:
    gen, in_pos, _ = piece
    return tuple(cut_in[in_pos : in_pos + SHAPES[gen].n_in])


def _out_ranks(piece: Tuple[Generator, int, int], cut_out: Sequence[int]) -> Tuple[int, ...]:
    gen, _, out_pos = piece
    return tuple(cut_out[out_pos : out_pos + SHAPES[gen].n_out])


def r2_check(word: BiangleWord, cut: int, position: int) -> bool:
    """Insert a positive crossing followed by its inverse at a cut and compare F and G.

    Args:
        word (BiangleWord): A word.
        cut (int): Cut where the pair is inserted.
        position (int): Horizontal position of the first of the two strands; the strand at
            ``position`` must lie directly above the one at ``position + 1``.

    Raises:
        CompositionError: If the two strands are not vertically adjacent in that order.

    Returns:
        bool: True iff both invariants are unchanged.
    """
    dirs = strand_directions(word)
    ranks = word.cuts[cut]
    pads = [_identity_for(dirs[(cut, p)]) for p in range(len(ranks))]
    inserted = [
        pads[:position] + [gen] + pads[position + 2 :]
        for gen in (Generator.XPOS, Generator.XNEG)
    ]
    slices = [list(s) for s in word.slices[:cut]] + inserted + [list(s) for s in word.slices[cut:]]
    overrides = dict(enumerate(word.cuts[: cut + 1]))
    overrides.update({cut + 1: ranks, cut + 2: ranks})
    overrides.update({k + 2: r for k, r in enumerate(word.cuts) if k > cut})
    longer = BiangleWord.build(word.edge, slices, overrides)
    return all(evaluate_word(longer, which) == evaluate_word(word, which) for which in Invariant)


def kink_word(edge: str = "kink") -> BiangleWord:
    """A single strand with one positive framed kink, oriented fwd."""
    return BiangleWord.build(
        edge,
        [
            [Generator.ID_FWD, Generator.CUP_DOWN],
            [Generator.XPOS, Generator.ID_BWD],
            [Generator.ID_FWD, Generator.CAP_UP],
        ],
        {1: (2, 1, 0), 2: (2, 1, 0)},
    )


def kink_value(which: Invariant = Invariant.F) -> OmegaPoly:
    """Scalar by which the positive kink acts on V."""
    return matrix_element(evaluate_word(kink_word(), which), (1,), (1,))
