"""Betti diagrams as text: rows are strands ell = j - i, columns homological degree i."""
from __future__ import annotations

from .betti import BettiTable

LABEL_WIDTH = 4
CELL_WIDTH = 5


def render_betti(B: BettiTable) -> str:
    """Diagram with a column header, '-' for zero, and a 'Tot:' row.

    Example (the complete intersection of degrees 1, 3, 4)::

               0    1    2
        -------------------
        1:     1    -    -
        2:     -    -    -
        3:     1    1    -
        4:     1    1    -
        5:     -    -    -
        6:     -    1    1
        -------------------
        Tot:   3    3    1
    """
    cols = B.columns
    rule = "-" * (LABEL_WIDTH + CELL_WIDTH * cols)
    lines = [" " * LABEL_WIDTH + "".join(f"{i:>{CELL_WIDTH}}" for i in range(cols)), rule]
    for ell, values in B.rows.items():
        cells = "".join(f"{v if v else '-':>{CELL_WIDTH}}" for v in values)
        lines.append(f"{str(ell) + ':':<{LABEL_WIDTH}}{cells}")
    lines.append(rule)
    lines.append(f"{'Tot:':<{LABEL_WIDTH}}" + "".join(f"{v:>{CELL_WIDTH}}" for v in B.totals))
    return "\n".join(lines) + "\n"


def parse_betti_diagram(text: str, n: int) -> BettiTable:
    """Read a diagram in the format of :func:`render_betti` (whitespace-insensitive)."""
    entries = {}
    for line in text.splitlines():
        parts = line.split()
        if not parts or set(line.strip()) == {"-"} or parts[0] == "Tot:":
            continue
        if not parts[0].endswith(":"):
            continue  # column header
        ell = int(parts[0][:-1])
        for i, cell in enumerate(parts[1:]):
            if cell != "-":
                entries[(i, i + ell)] = int(cell)
    return BettiTable(n, entries)


def diagram_totals(text: str) -> tuple[int, ...]:
    for line in text.splitlines():
        parts = line.split()
        if parts and parts[0] == "Tot:":
            return tuple(int(x) for x in parts[1:])
    return ()
