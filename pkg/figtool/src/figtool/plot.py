"""Static scatter plots of the approximation measure c at best
approximants against log10(q), from the "q,p1,p2,eps,c" CSV format."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from fractions import Fraction

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

CSV_HEADER = ["q", "p1", "p2", "eps", "c"]


class InputError(Exception):
    """Missing or malformed input CSV."""


@dataclass(frozen=True)
class RefLine:
    value: float
    label: str

    @staticmethod
    def parse(spec: str) -> "RefLine":
        """"VALUE:LABEL" with VALUE a decimal or a fraction like 2/7."""
        if ":" not in spec:
            raise ValueError(f"expected VALUE:LABEL, got {spec!r}")
        raw, label = spec.split(":", 1)
        try:
            value = float(Fraction(raw)) if "/" in raw else float(raw)
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"bad reference value {raw!r}") from None
        if not label:
            raise ValueError(f"empty label in {spec!r}")
        return RefLine(value, label)


@dataclass(frozen=True)
class PlotSpec:
    input_csv: str
    output_image: str
    title: str = ""
    hlines: tuple[RefLine, ...] = field(default_factory=tuple)


@dataclass(frozen=True)
class RenderResult:
    n_points: int
    x_log10_q: tuple[float, ...]
    y_c: tuple[float, ...]
    hlines: tuple[RefLine, ...]
    output_image: str


def read_points(path: str) -> tuple[list[int], list[float]]:
    """(q column, c column) from a records CSV; raises InputError."""
    try:
        fh = open(path, newline="")
    except OSError as e:
        raise InputError(str(e)) from None
    with fh:
        rd = csv.DictReader(fh)
        if rd.fieldnames != CSV_HEADER:
            raise InputError(
                f"{path}: expected header {','.join(CSV_HEADER)}, got {rd.fieldnames}"
            )
        qs: list[int] = []
        cs: list[float] = []
        for i, row in enumerate(rd, start=2):
            try:
                q = int(row["q"])
                c = float(row["c"])
            except (TypeError, ValueError):
                raise InputError(f"{path}:{i}: malformed row") from None
            if q < 1:
                raise InputError(f"{path}:{i}: q must be positive, got {q}")
            qs.append(q)
            cs.append(c)
    if not qs:
        raise InputError(f"{path}: no data rows")
    return qs, cs


def render(spec: PlotSpec) -> RenderResult:
    """Scatter of c against log10(q) with labeled horizontal reference
    lines, written to spec.output_image (vector formats supported)."""
    qs, cs = read_points(spec.input_csv)
    xs = [math.log10(q) for q in qs]

    fig, ax = plt.subplots(figsize=(8, 5))
    ax.scatter(xs, cs, s=12, color="tab:blue", zorder=3)
    for line in spec.hlines:
        ax.axhline(line.value, color="tab:red", linewidth=0.8, zorder=2)
        ax.annotate(
            line.label,
            xy=(1.0, line.value),
            xycoords=("axes fraction", "data"),
            xytext=(-4, 3),
            textcoords="offset points",
            ha="right",
            fontsize=8,
            color="tab:red",
        )
    ax.set_xlabel("log10(q)")
    ax.set_ylabel("c")
    if spec.title:
        ax.set_title(spec.title)
    ax.grid(True, linewidth=0.3, alpha=0.5)
    fig.tight_layout()
    fig.savefig(spec.output_image)
    plt.close(fig)
    return RenderResult(
        n_points=len(xs),
        x_log10_q=tuple(xs),
        y_c=tuple(cs),
        hlines=spec.hlines,
        output_image=spec.output_image,
    )
