"""
Named states and the reference tables of observable values.

Expected values are exact fractions.  The three-qubit tables list the values
that follow from the observable definitions: cut ``l = 1`` separates qubit A
from BC, cut ``l = 2`` separates AB from C.  Under that reading the commonly
printed B1 and B3 columns (and B1, B2 after reordering to ACB) appear with
their two rows exchanged; the notes on each table say so.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as F
from itertools import combinations
from typing import Optional

from .kets import ket, parse_order, permute_qubits
from .state import StateVector


def dicke_expression(n: int, k: int) -> str:
    kets = []
    for ones in combinations(range(n), k):
        kets.append("|" + "".join("1" if j in ones else "0" for j in range(n)) + ">")
    return " + ".join(reversed(kets))


def schrodinger_expression(n: int) -> str:
    return f"1/sqrt(2)(|{'0' * n}> + |{'1' * n}>)"


STATES: dict[str, str] = {
    "EPS": "1/sqrt(2)(|00> + |11>)",
    "Sep": "|000>",
    "B1": "1/sqrt(2)(|000> + |011>)",
    "B2": "1/sqrt(2)(|000> + |101>)",
    "B3": "1/sqrt(2)(|000> + |110>)",
    "W": "1/sqrt(3)(|100> + |010> + |001>)",
    "GHZ": "1/sqrt(2)(|000> + |111>)",
    "S4": schrodinger_expression(4),
    "S5": schrodinger_expression(5),
    "HS": "1/sqrt(6)(|1100> + |0011> + w|1001> + w|0110> + w^2|1010> + w^2|0101>)",
    "BSSB4": "1/2(|0000> + |+>|011> + |1101> + |->|110>)",
    "BSSB5": ("1/2(|000>(|01> - |10>) + |010>(|00> - |11>)"
              " + |100>(|01> + |10>) + |111>(|00> + |11>))"),
}
for _n, _k in ((4, 1), (4, 2), (4, 3), (5, 1), (5, 2), (5, 3), (5, 4)):
    STATES[f"D{_n}{_k}"] = dicke_expression(_n, _k)

# Nearby states that reproduce the printed BSSB columns exactly; shown in the
# table notes so a reader can see where the printed numbers come from.
VARIANTS: dict[str, str] = {
    "BSSB4": "1/2(|0000> + |+>|011> + |1101> + |+>|110>)",
    "BSSB5": ("1/2(|000>(|01> - |10>) + |010>(|00> - |11>)"
              " + |100>(|01> + |10>) + |111>(|01> - |10>))"),
}


def state(name: str) -> StateVector:
    return ket(STATES[name])


@dataclass(frozen=True)
class Column:
    name: str
    expected: tuple[F, ...]
    order: Optional[str] = None

    @property
    def expected_average(self) -> F:
        return sum(self.expected, F(0)) / len(self.expected)

    def state(self) -> StateVector:
        psi = state(self.name)
        if self.order:
            psi = permute_qubits(psi, parse_order(self.order, psi.n))
        return psi


@dataclass(frozen=True)
class Relation:
    """``left op right`` between table averages; ``op`` in {"<", "="}."""
    left: str
    op: str
    right: str


@dataclass(frozen=True)
class Table:
    key: str
    title: str
    columns: tuple[Column, ...]
    relations: tuple[Relation, ...] = ()
    notes: tuple[str, ...] = ()


_ROW_SWAP_NOTE = ("B1/B3 expected values follow the cut definitions (l=1 is A|BC); "
                  "the widely printed table lists these columns with rows exchanged.")


def _three(order: Optional[str], b1, b2, b3) -> tuple[Column, ...]:
    return (
        Column("Sep", (F(0), F(0)), order),
        Column("B1", b1, order),
        Column("B2", b2, order),
        Column("B3", b3, order),
        Column("W", (F(8, 9), F(8, 9)), order),
        Column("GHZ", (F(1), F(1)), order),
    )


ONE, ZERO = F(1), F(0)

TABLES: tuple[Table, ...] = (
    Table("abc", "three qubits, order ABC",
          _three(None, (ZERO, ONE), (ONE, ONE), (ONE, ZERO)),
          notes=(_ROW_SWAP_NOTE,)),
    Table("acb", "three qubits, order ACB (B2 and B3 exchange roles)",
          _three("ACB", (ZERO, ONE), (ONE, ZERO), (ONE, ONE)),
          notes=("Reordering to ACB swaps qubits B and C before every measurement. " + _ROW_SWAP_NOTE,)),
    Table("dicke4", "Dicke states, four qubits", (
        Column("D41", (F(3, 4), ONE, F(3, 4))),
        Column("D42", (ONE, ONE, ONE)),
        Column("D43", (F(3, 4), ONE, F(3, 4))),
    ), relations=(Relation("D42", "=", "S4"),)),
    Table("dicke5", "Dicke states, five qubits", (
        Column("D51", (F(16, 25), F(24, 25), F(24, 25), F(16, 25))),
        Column("D52", (F(24, 25), F(27, 25), F(27, 25), F(24, 25))),
        Column("D53", (F(24, 25), F(27, 25), F(27, 25), F(24, 25))),
        Column("D54", (F(16, 25), F(24, 25), F(24, 25), F(16, 25))),
    ), relations=(Relation("D52", "=", "D53"), Relation("S5", "<", "D52"))),
    Table("four", "four-qubit highlights", (
        Column("S4", (ONE, ONE, ONE)),
        Column("D42", (ONE, ONE, ONE)),
        Column("BSSB4", (F(3, 4), F(5, 4), ONE)),
        Column("HS", (ONE, F(4, 3), ONE)),
    ), relations=(Relation("BSSB4", "<", "HS"),),
        notes=("BSSB4 is evaluated exactly as written; the expected column is only "
               "matched by the variant " + VARIANTS["BSSB4"] + ".",)),
    Table("five", "five-qubit highlights", (
        Column("S5", (ONE, ONE, ONE, ONE)),
        Column("D52", (F(24, 25), F(27, 25), F(27, 25), F(24, 25))),
        Column("BSSB5", (ONE, F(3, 2), F(5, 4), ONE)),
    ), relations=(Relation("S5", "<", "D52"), Relation("D52", "<", "BSSB5")),
        notes=("BSSB5 is evaluated exactly as written; the expected column is only "
               "matched when two Bell suffixes coincide, e.g. " + VARIANTS["BSSB5"] + ".",)),
)


def table(key: str) -> Table:
    for t in TABLES:
        if t.key == key:
            return t
    raise KeyError(key)
