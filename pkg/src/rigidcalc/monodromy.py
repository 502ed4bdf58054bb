"""Monodromy tuples on the projective line minus punctures.

A local system of rank n on P^1 minus r finite punctures and infinity is
stored as the ordered matrices (A_1, ..., A_r) at the finite punctures; the
monodromy at infinity is derived as (A_1 ... A_r)^-1 so the product over all
punctures is the identity.

The module also provides the conjugation-invariant local data: Jordan types
of quasi-unipotent matrices, centralizer dimensions, the rigidity index
(2 - r')n^2 + sum of centralizer dimensions, absolute irreducibility via the
Burnside span criterion, and the somewhere-maximal regularity certificate.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .cyclotomic import CycNumber
from .errors import (
    DimensionMismatch,
    DuplicatePuncture,
    NotQuasiUnipotent,
    SingularMatrix,
    UnknownPuncture,
)
from .linalg import ExactMatrix


@dataclass(frozen=True)
class Puncture:
    """A point of P^1(Q): a finite rational label, or infinity (label None)."""

    label: Fraction | None

    @classmethod
    def finite(cls, value) -> "Puncture":
        if isinstance(value, Puncture):
            if value.is_infinity:
                raise ValueError("expected a finite puncture")
            return value
        return cls(Fraction(value))

    @classmethod
    def infinity(cls) -> "Puncture":
        return INFINITY

    @classmethod
    def parse(cls, text: str) -> "Puncture":
        text = text.strip()
        if text in ("inf", "infinity", "oo"):
            return INFINITY
        return cls(Fraction(text))

    @property
    def is_infinity(self) -> bool:
        return self.label is None

    def __str__(self):
        return "inf" if self.label is None else str(self.label)


INFINITY = Puncture(None)


def _eigenvalue_class(value: CycNumber):
    # 1 first, then -1, then the rest by canonical key: matches how the
    # tables in this domain are usually written.
    if value.is_one():
        return (0,)
    if value == -1:
        return (1,)
    return (2,) + value.sort_key()


@dataclass(frozen=True)
class JordanType:
    """Multiset of (eigenvalue, block size) pairs of a quasi-unipotent matrix.

    blocks are stored sorted (eigenvalue class, size descending) with
    repetitions, so equal multisets compare equal as tuples.
    """

    blocks: tuple[tuple[CycNumber, int], ...]

    @classmethod
    def from_blocks(cls, blocks) -> "JordanType":
        items = [(CycNumber.coerce(e), int(s)) for e, s in blocks]
        items.sort(key=lambda b: (_eigenvalue_class(b[0]), -b[1]))
        return cls(tuple(items))

    @property
    def total_size(self) -> int:
        return sum(size for _, size in self.blocks)

    @property
    def block_count(self) -> int:
        return len(self.blocks)

    def with_multiplicities(self) -> list[tuple[CycNumber, int, int]]:
        """Distinct (eigenvalue, size, multiplicity) triples, sorted."""
        out = []
        for (eig, size), group in itertools.groupby(self.blocks):
            out.append((eig, size, sum(1 for _ in group)))
        return out

    def eigenvalue_multiplicities(self) -> dict[CycNumber, int]:
        counts: dict[CycNumber, int] = {}
        for eig, size in self.blocks:
            counts[eig] = counts.get(eig, 0) + size
        return counts

    def notation(self) -> str:
        """Display string in the usual direct-sum notation.

        A unipotent block of size k >= 2 prints as U(k); other blocks print
        their eigenvalue, tensored with U(k) when k >= 2; multiplicities
        become ^{+m} exponents, e.g. "1^{+3} (+) (-1)^{+4}" or "U(7)".
        """
        parts = []
        for eig, size, mult in self.with_multiplicities():
            if eig.is_one() and size >= 2:
                atom = f"U({size})"
            else:
                text = str(eig)
                atom = text if text.lstrip("-").isdigit() and not text.startswith("-") else f"({text})"
                if size >= 2:
                    atom = f"{atom} (x) U({size})"
            if mult >= 2:
                atom = f"{atom}^{{+{mult}}}"
            parts.append(atom)
        return " (+) ".join(parts)

    def __str__(self):
        return self.notation()


@dataclass(frozen=True)
class RegularityCertificate:
    """Outcome of the single-Jordan-block sufficient test for regularity."""

    witness: Puncture | None

    @classmethod
    def via_lemma(cls, witness: Puncture) -> "RegularityCertificate":
        return cls(witness)

    @classmethod
    def unknown(cls) -> "RegularityCertificate":
        return cls(None)

    @property
    def is_regular_via_lemma(self) -> bool:
        return self.witness is not None

    def __str__(self):
        if self.witness is None:
            return "Unknown"
        return f"RegularViaLemma({self.witness})"


class MonodromyTuple:
    """Ordered invertible matrices at labeled finite punctures."""

    __slots__ = ("order", "rank", "punctures", "matrices", "_at_infinity")

    def __init__(self, order: int, punctures, matrices):
        punctures = tuple(Puncture.finite(p) for p in punctures)
        matrices = tuple(matrices)
        if not punctures:
            raise ValueError("a tuple needs at least one finite puncture")
        if len(punctures) != len(matrices):
            raise DimensionMismatch("one matrix per finite puncture required")
        if len(set(punctures)) != len(punctures):
            raise DuplicatePuncture(f"repeated finite puncture in {punctures}")
        n = matrices[0].rows
        for m in matrices:
            if not m.is_square or m.rows != n:
                raise DimensionMismatch("matrices must be square and of equal size")
        common = order
        for m in matrices:
            common = math.lcm(common, m.order)
        matrices = tuple(m.lift(common) for m in matrices)
        for p, m in zip(punctures, matrices):
            if m.rank() != n:
                raise SingularMatrix(f"monodromy at {p} is singular")
        self.order = common
        self.rank = n
        self.punctures = punctures
        self.matrices = matrices
        self._at_infinity = None

    @property
    def at_infinity(self) -> ExactMatrix:
        """(A_1 ... A_r)^-1, the derived monodromy at infinity."""
        if self._at_infinity is None:
            product = self.matrices[0]
            for m in self.matrices[1:]:
                product = product * m
            self._at_infinity = product.inverse()
        return self._at_infinity

    def all_punctures(self) -> tuple[Puncture, ...]:
        return self.punctures + (INFINITY,)

    def monodromy_at(self, point) -> ExactMatrix:
        if isinstance(point, str):
            point = Puncture.parse(point)
        elif not isinstance(point, Puncture):
            point = Puncture.finite(point)
        if point.is_infinity:
            return self.at_infinity
        for p, m in zip(self.punctures, self.matrices):
            if p == point:
                return m
        raise UnknownPuncture(f"{point} is not a puncture of this tuple")

    def jordan_at(self, point) -> JordanType:
        return jordan_type(self.monodromy_at(point), self.order)

    def conjugate_by(self, p: ExactMatrix) -> "MonodromyTuple":
        """Simultaneous conjugation A_k -> P A_k P^-1."""
        p_inv = p.inverse()
        return MonodromyTuple(
            self.order, self.punctures, [p * m * p_inv for m in self.matrices]
        )

    def __eq__(self, other):
        if not isinstance(other, MonodromyTuple):
            return NotImplemented
        return self.punctures == other.punctures and self.matrices == other.matrices

    def __repr__(self):
        pts = ", ".join(str(p) for p in self.punctures)
        return f"MonodromyTuple(rank={self.rank}, N={self.order}, punctures=[{pts}])"


def make_tuple(order: int, punctures, matrices) -> MonodromyTuple:
    """Validate and assemble a monodromy tuple."""
    return MonodromyTuple(order, punctures, matrices)


def is_quasi_unipotent(matrix: ExactMatrix, order: int) -> bool:
    """True iff (matrix^N - I)^n = 0, i.e. all eigenvalues lie in mu_N."""
    if not matrix.is_square:
        raise DimensionMismatch("quasi-unipotence requires a square matrix")
    n = matrix.rows
    power = (matrix ** order) - ExactMatrix.identity(n, order=matrix.order)
    return (power ** n).is_zero()


def jordan_type(matrix: ExactMatrix, order: int) -> JordanType:
    """Jordan type of a quasi-unipotent matrix from its rank sequences.

    For each eigenvalue candidate zeta in mu_N the number of blocks of size
    exactly j is r_(j-1) - 2 r_j + r_(j+1) where r_j = rank((m - zeta I)^j).
    """
    if not matrix.is_square:
        raise DimensionMismatch("jordan type requires a square matrix")
    n = matrix.rows
    blocks: list[tuple[CycNumber, int]] = []
    total = 0
    for t in range(order):
        zeta = CycNumber.zeta(order, t)
        shifted = matrix - ExactMatrix.identity(n, order=matrix.order) * zeta
        ranks = [n]
        power = ExactMatrix.identity(n, order=shifted.order)
        while True:
            power = power * shifted
            ranks.append(power.rank())
            if ranks[-1] == ranks[-2] or len(ranks) > n + 1:
                break
        if ranks[1] == n:
            continue  # not an eigenvalue
        ranks.append(ranks[-1])
        for j in range(1, len(ranks) - 1):
            count = ranks[j - 1] - 2 * ranks[j] + ranks[j + 1]
            for _ in range(count):
                blocks.append((zeta, j))
                total += j
    if total != n:
        raise NotQuasiUnipotent(
            f"eigenvalues are not all roots of unity of order dividing {order}; "
            "try a larger order"
        )
    return JordanType.from_blocks(blocks)


def centralizer_dim(matrix: ExactMatrix) -> int:
    """dim of {X : MX = XM}, as the kernel of the n^2 x n^2 commutation system."""
    if not matrix.is_square:
        raise DimensionMismatch("centralizer requires a square matrix")
    n = matrix.rows
    zero = CycNumber.zero(matrix.order)
    rows = []
    for p in range(n):
        for q in range(n):
            row = [zero] * (n * n)
            for k in range(n):
                row[k * n + q] = row[k * n + q] + matrix[p, k]
            for l in range(n):
                row[p * n + l] = row[p * n + l] - matrix[l, q]
            rows.append(row)
    system = ExactMatrix.from_rows(rows, order=matrix.order)
    return n * n - system.rank()


def rigidity_index(t: MonodromyTuple) -> int:
    """(2 - r') n^2 + sum of centralizer dimensions over all punctures.

    r' counts the punctures including infinity.  An irreducible tuple is
    cohomologically rigid exactly when this index equals 2.
    """
    r_prime = len(t.punctures) + 1
    n = t.rank
    total = (2 - r_prime) * n * n
    for m in t.matrices:
        total += centralizer_dim(m)
    total += centralizer_dim(t.at_infinity)
    return total


class _SpanBasis:
    # Echelonized basis of flattened matrices, used for span closures.

    def __init__(self):
        self.rows: list[tuple] = []
        self.pivots: list[int] = []

    def insert(self, vector) -> bool:
        v = list(vector)
        for pivot, row in zip(self.pivots, self.rows):
            if not v[pivot].is_zero():
                f = v[pivot]
                v = [a - f * b for a, b in zip(v, row)]
        lead = next((i for i, a in enumerate(v) if not a.is_zero()), None)
        if lead is None:
            return False
        inv = v[lead].inverse()
        v = [a * inv for a in v]
        self.rows.append(tuple(v))
        self.pivots.append(lead)
        return True

    def __len__(self):
        return len(self.rows)


def is_absolutely_irreducible(t: MonodromyTuple) -> bool:
    """Burnside criterion: the generated matrix algebra spans all of n x n.

    The span of words in the generators is closed under left multiplication
    starting from the identity; the dimension strictly increases each
    productive round, so at most n^2 rounds are needed.
    """
    n = t.rank
    basis = _SpanBasis()
    identity = ExactMatrix.identity(n, order=t.order)
    basis.insert(identity.entries)
    frontier = [identity]
    rounds = 0
    while frontier and len(basis) < n * n and rounds <= n * n:
        new_frontier = []
        for word in frontier:
            for generator in t.matrices:
                candidate = generator * word
                if basis.insert(candidate.entries):
                    new_frontier.append(candidate)
        frontier = new_frontier
        rounds += 1
    return len(basis) == n * n


def is_somewhere_maximal(t: MonodromyTuple) -> Puncture | None:
    """First puncture whose local monodromy is a single Jordan block.

    Punctures are scanned with infinity first, then the finite punctures in
    listed order; infinity is where the maximal block of the families built
    here lives, and the certificates in this library name it whenever it
    qualifies.  Returns None when no puncture qualifies.
    """
    for p in (INFINITY,) + t.punctures:
        if t.jordan_at(p).block_count == 1:
            return p
    return None


def certify_regular(t: MonodromyTuple) -> RegularityCertificate:
    """Certificate from the single-block sufficient condition.

    The condition is sufficient, not necessary, so a failed search yields
    Unknown rather than a negative verdict.
    """
    witness = is_somewhere_maximal(t)
    if witness is None:
        return RegularityCertificate.unknown()
    return RegularityCertificate.via_lemma(witness)
