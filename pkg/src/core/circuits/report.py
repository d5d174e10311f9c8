# src/core/circuits/report.py
from __future__ import annotations
from dataclasses import asdict, dataclass
from typing import IO, Iterable, List, Optional
import csv
import io

from src.core.encodings.pauli import PauliPoly
from .circuit import Circuit

CSV_COLUMNS = ("encoding", "d", "qubits", "depth", "entangling", "terms")


@dataclass(frozen=True, order=True)
class DepthReport:
    encoding: str
    d: int
    qubits: int
    depth: int
    entangling: int
    terms: int
    operator: str = ""

    @property
    def lower_bound(self) -> int:
        """⌈entangling / ⌊n/2⌋⌉, limite inferior trivial da profundidade."""
        pairs = self.qubits // 2
        if not pairs or not self.entangling:
            return 0
        return -(-self.entangling // pairs)

    def row(self) -> List[object]:
        return [getattr(self, c) for c in CSV_COLUMNS]

    def to_dict(self):
        return asdict(self)


def depth_report(encoding: str, d: int, poly: PauliPoly, circuit: Circuit, operator: str = "") -> DepthReport:
    expanded = circuit if circuit.is_expanded else circuit.expand()
    return DepthReport(
        encoding=encoding,
        d=d,
        qubits=expanded.n_qubits,
        depth=expanded.depth(),
        entangling=expanded.entangling_count(),
        terms=sum(1 for k in poly.terms if k != (0, 0)),
        operator=operator,
    )


def sort_reports(rows: Iterable[DepthReport]) -> List[DepthReport]:
    return sorted(rows, key=lambda r: (r.operator, r.encoding, r.d))


def write_csv(rows: Iterable[DepthReport], out: IO[str], header: Optional[str] = None, with_operator: bool = False) -> None:
    """CSV ordenado deterministicamente; ``header`` vira uma linha de comentário."""
    if header:
        out.write(f"# {header}\n")
    writer = csv.writer(out, lineterminator="\n")
    cols = list(CSV_COLUMNS) + (["operator"] if with_operator else [])
    writer.writerow(cols)
    for r in sort_reports(rows):
        writer.writerow(r.row() + ([r.operator] if with_operator else []))


def to_csv(rows: Iterable[DepthReport], **kwargs) -> str:
    buf = io.StringIO()
    write_csv(rows, buf, **kwargs)
    return buf.getvalue()
