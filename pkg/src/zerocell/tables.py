"""Reference-table rendering in exact text, LaTeX, CSV, JSON and float form.

The exact text renderings of tables 1-5 are pinned by fixture files shipped
with the package (``fixtures/table*.txt``); regenerating a table must match
its fixture byte for byte.
"""

from __future__ import annotations

import json
from importlib import resources

from . import arrays, formulas
from .piring import PiNumber, format_pi, pi_number_to_json

__all__ = ["TABLE_NUMBERS", "table_header", "table_labels_rows", "render_table",
           "load_fixture", "latex_pi"]

TABLE_NUMBERS = (1, 2, 3, 4, 5)

_HEADERS = {
    1: "# expected f-vector of the Poisson zero cell, d = 1..10",
    2: "# A[n,k] for n = 1..14 and even k = 0..14",
    3: "# A[n,k] for n = 0..8 and k = 0..5",
    4: "# B{n,k} for n = 1..10 and k = 1..4",
    5: "# probability that the hull of d+2 uniform points on the half-sphere "
       "is a simplex, d = 1..10",
}


def table_header(which: int) -> str:
    return _HEADERS[which]


def table_labels_rows(which: int) -> tuple[list[str], list[list[PiNumber]]]:
    """Row labels and exact row values of the requested table."""
    if which == 1:
        labels = [f"d={d}" for d in range(1, 11)]
        rows = [list(formulas.zero_cell_f_vector(d).entries) for d in range(1, 11)]
    elif which == 2:
        labels = [f"n={n}" for n in range(1, 15)]
        rows = [[arrays.a_value(n, k) for k in range(0, 15, 2)] for n in range(1, 15)]
    elif which == 3:
        labels = [f"n={n}" for n in range(0, 9)]
        rows = [[arrays.a_value(n, k) for k in range(0, 6)] for n in range(0, 9)]
    elif which == 4:
        labels = [f"n={n}" for n in range(1, 11)]
        rows = [[arrays.b_value(n, k) for k in range(1, 5)] for n in range(1, 11)]
    elif which == 5:
        labels = [f"d={d}" for d in range(1, 11)]
        rows = [[formulas.sylvester_probability(d)] for d in range(1, 11)]
    else:
        raise ValueError("table number must be 1..5")
    return labels, rows


def latex_pi(value: PiNumber) -> str:
    """LaTeX rendering mirroring the appendix style (\\frac, \\pi powers)."""
    if not value:
        return "0"
    parts: list[str] = []
    for e2, coeff in value.items():
        e = e2 // 2
        sign = "-" if coeff < 0 else "+"
        body = _latex_term(abs(coeff), e)
        parts.append(body if not parts and sign == "+" else
                     ("-" + body if not parts else f" {sign} {body}"))
    return "".join(parts)


def _latex_term(coeff, e: int) -> str:
    num, den = coeff.numerator, coeff.denominator
    if e == 0:
        return str(num) if den == 1 else f"\\frac{{{num}}}{{{den}}}"
    power = "\\pi" if abs(e) == 1 else f"\\pi^{{{abs(e)}}}"
    if e > 0:
        if coeff == 1:
            return power
        if den == 1:
            return f"{num} {power}"
        return f"\\frac{{{num} {power}}}{{{den}}}"
    bottom = power if den == 1 else f"{den} {power}"
    return f"\\frac{{{num}}}{{{bottom}}}"


def render_table(which: int, fmt: str = "exact") -> str:
    """Render a table; ``fmt`` is one of exact, latex, json, csv, float."""
    labels, rows = table_labels_rows(which)
    header = table_header(which)
    if fmt == "exact":
        lines = [header]
        lines += [f"{label}: " + ", ".join(format_pi(v) for v in row)
                  for label, row in zip(labels, rows)]
        return "\n".join(lines) + "\n"
    if fmt == "float":
        lines = [header]
        lines += [f"{label}: " + ", ".join(f"{v.eval_float():.15g}" for v in row)
                  for label, row in zip(labels, rows)]
        return "\n".join(lines) + "\n"
    if fmt == "csv":
        width = max(len(row) for row in rows)
        lines = ["label," + ",".join(f"value{i}" for i in range(width))]
        for label, row in zip(labels, rows):
            cells = [format_pi(v) for v in row]
            lines.append(",".join([label] + [f'"{c}"' for c in cells]))
        return "\n".join(lines) + "\n"
    if fmt == "latex":
        width = max(len(row) for row in rows)
        lines = [
            "% " + header.lstrip("# "),
            "\\begin{tabular}{|c|" + "c" * width + "|}",
            "\\hline",
        ]
        for label, row in zip(labels, rows):
            body = " & ".join(f"${latex_pi(v)}$" for v in row)
            lines.append(f"${label}$ & {body} \\\\")
        lines += ["\\hline", "\\end{tabular}"]
        return "\n".join(lines) + "\n"
    if fmt == "json":
        payload = {
            "table": which,
            "title": header.lstrip("# "),
            "rows": [
                {"label": label, "values": [pi_number_to_json(v) for v in row]}
                for label, row in zip(labels, rows)
            ],
        }
        return json.dumps(payload, indent=2) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def load_fixture(which: int) -> str:
    """Committed exact-text fixture for the requested table."""
    name = f"table{which}.txt"
    return resources.files("zerocell.fixtures").joinpath(name).read_text()
