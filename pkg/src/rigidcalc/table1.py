"""Golden reproduction of the local monodromy table of the recursive family.

The expected Jordan types are embedded as a static fixture keyed by i mod 4,
with multiplicities given as functions of i, independently of the code that
builds the family; the report compares every cell.

    i mod 4   at 0                          at 1                                 at inf
    0         1^(i/2) + (-1)^(i/2+1)        (-1) + U(2)^(i/2)                    U(i+1)
    1         U(2)^((i+1)/2)                (-1)xU(2) + (-1)^((i-1)/2) + 1^((i-1)/2)   U(i+1)
    2         1^(i/2) + (-1)^(i/2+1)        U(3) + U(2)^((i-2)/2)                U(i+1)
    3         U(2)^((i+1)/2)                U(2) + 1^((i-3)/2) + (-1)^((i+1)/2)  U(i+1)
"""
from __future__ import annotations

from dataclasses import dataclass

from .convolution import build_F
from .monodromy import (
    JordanType,
    MonodromyTuple,
    RegularityCertificate,
    certify_regular,
    is_absolutely_irreducible,
    rigidity_index,
)

MAX_SUPPORTED_INDEX = 12


def expected_jordan_types(i: int) -> dict[str, JordanType]:
    """The embedded table row for index i, as Jordan-type multisets."""
    if i < 0:
        raise ValueError(f"family index must be >= 0, got {i}")
    residue = i % 4
    if residue == 0:
        at0 = [(1, 1)] * (i // 2) + [(-1, 1)] * (i // 2 + 1)
        at1 = [(-1, 1)] + [(1, 2)] * (i // 2)
    elif residue == 1:
        at0 = [(1, 2)] * ((i + 1) // 2)
        at1 = [(-1, 2)] + [(-1, 1)] * ((i - 1) // 2) + [(1, 1)] * ((i - 1) // 2)
    elif residue == 2:
        at0 = [(1, 1)] * (i // 2) + [(-1, 1)] * (i // 2 + 1)
        at1 = [(1, 3)] + [(1, 2)] * ((i - 2) // 2)
    else:
        at0 = [(1, 2)] * ((i + 1) // 2)
        at1 = [(1, 2)] + [(1, 1)] * ((i - 3) // 2) + [(-1, 1)] * ((i + 1) // 2)
    at_inf = [(1, i + 1)]
    return {
        "0": JordanType.from_blocks(at0),
        "1": JordanType.from_blocks(at1),
        "inf": JordanType.from_blocks(at_inf),
    }


@dataclass(frozen=True)
class Table1Row:
    i: int
    rank: int
    jordan_at_0: JordanType
    jordan_at_1: JordanType
    jordan_at_inf: JordanType
    rigidity_index: int
    irreducible: bool
    regular_certificate: RegularityCertificate
    matches_table: bool


@dataclass(frozen=True)
class Table1Report:
    rows: tuple[Table1Row, ...]

    @property
    def all_match(self) -> bool:
        return all(row.matches_table for row in self.rows)


def _build_row(i: int, t: MonodromyTuple) -> Table1Row:
    expected = expected_jordan_types(i)
    jordan = {p: t.jordan_at(p) for p in ("0", "1", "inf")}
    matches = t.rank == i + 1 and all(jordan[p] == expected[p] for p in jordan)
    return Table1Row(
        i=i,
        rank=t.rank,
        jordan_at_0=jordan["0"],
        jordan_at_1=jordan["1"],
        jordan_at_inf=jordan["inf"],
        rigidity_index=rigidity_index(t),
        irreducible=is_absolutely_irreducible(t),
        regular_certificate=certify_regular(t),
        matches_table=matches,
    )


def run_table1(max_i: int) -> Table1Report:
    """Build the family up to max_i and compare every cell to the fixture."""
    if not 0 <= max_i <= MAX_SUPPORTED_INDEX:
        raise ValueError(
            f"table index must lie in 0..{MAX_SUPPORTED_INDEX}, got {max_i}"
        )
    rows = [_build_row(i, build_F(i)) for i in range(max_i + 1)]
    return Table1Report(tuple(rows))
