"""Recompute the reference tables and compare against the expected fractions."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .catalog import TABLES, Column, Relation, Table, state
from .observables import report

TABLE_TOL = 1e-9


@dataclass(frozen=True)
class ColumnResult:
    column: Column
    values: tuple[float, ...]
    average: float

    @property
    def deviations(self) -> tuple[float, ...]:
        exp = self.column.expected + (self.column.expected_average,)
        got = self.values + (self.average,)
        return tuple(abs(g - float(e)) for g, e in zip(got, exp))

    @property
    def passed(self) -> bool:
        return len(self.values) == len(self.column.expected) and max(self.deviations) < TABLE_TOL


@dataclass(frozen=True)
class RelationResult:
    relation: Relation
    left: float
    right: float

    @property
    def passed(self) -> bool:
        if self.relation.op == "<":
            return self.left < self.right - TABLE_TOL
        return abs(self.left - self.right) < TABLE_TOL


@dataclass(frozen=True)
class TableResult:
    table: Table
    columns: tuple[ColumnResult, ...]
    relations: tuple[RelationResult, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.columns) and all(r.passed for r in self.relations)


def _average(name: str) -> float:
    return report(state(name)).average


def reproduce(table: Table) -> TableResult:
    cols = []
    for col in table.columns:
        rep = report(col.state())
        cols.append(ColumnResult(col, rep.values, rep.average))
    rels = tuple(RelationResult(r, _average(r.left), _average(r.right)) for r in table.relations)
    return TableResult(table, tuple(cols), rels)


def reproduce_all() -> list[TableResult]:
    return [reproduce(t) for t in TABLES]


def _frac(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def format_table(res: TableResult) -> list[str]:
    t = res.table
    lines = [f"== {t.key}: {t.title} =="]
    header = f"{'state':<7} {'quantity':<8} {'computed':>18} {'expected':>9} {'|diff|':>9}  status"
    lines.append(header)
    for c in res.columns:
        labels = [f"J_{ell}" for ell in range(1, len(c.values) + 1)] + ["average"]
        expected = list(c.column.expected) + [c.column.expected_average]
        got = list(c.values) + [c.average]
        name = c.column.name + (f"@{c.column.order}" if c.column.order else "")
        for label, g, e, d in zip(labels, got, expected, c.deviations):
            status = "PASS" if d < TABLE_TOL else "FAIL"
            lines.append(f"{name:<7} {label:<8} {g:>18.15f} {_frac(e):>9} {d:>9.1e}  {status}")
    for r in res.relations:
        rel = r.relation
        status = "PASS" if r.passed else "FAIL"
        lines.append(f"relation avg({rel.left}) {rel.op} avg({rel.right}): "
                     f"{r.left:.15f} {rel.op} {r.right:.15f}  {status}")
    for note in t.notes:
        lines.append(f"note: {note}")
    lines.append(f"table {t.key}: {'PASS' if res.passed else 'FAIL'}")
    return lines


def table_document(res: TableResult) -> dict:
    return {
        "table": res.table.key,
        "title": res.table.title,
        "passed": res.passed,
        "columns": [
            {
                "state": c.column.name,
                "order": c.column.order,
                "values": list(c.values),
                "average": c.average,
                "expected": [_frac(e) for e in c.column.expected],
                "expected_average": _frac(c.column.expected_average),
                "passed": c.passed,
            }
            for c in res.columns
        ],
        "relations": [
            {"left": r.relation.left, "op": r.relation.op, "right": r.relation.right,
             "left_average": r.left, "right_average": r.right, "passed": r.passed}
            for r in res.relations
        ],
        "notes": list(res.table.notes),
    }
