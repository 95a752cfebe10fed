"""Box diagrams: each product state covers the cells (A-support x B-support).

Rows are A labels, columns B labels. The stopper state (full support on both
sides) is left out, since it would cover everything. Signs inside a
superposition don't affect the tile; the legend carries the full kets.
"""

from __future__ import annotations

import json
import xml.etree.ElementTree as ET
from dataclasses import dataclass
from itertools import combinations

from .states import ProductState, StateSet

FORMATS = ("ascii", "svg", "json")


@dataclass(frozen=True)
class Tile:
    label: str
    number: int
    cells: frozenset[tuple[int, int]]
    contiguous: bool
    ket: str = ""


@dataclass(frozen=True)
class Diagram:
    n: int
    m: int
    tiles: tuple[Tile, ...]
    stopper_omitted: bool = False
    stopper_label: str | None = None

    def tile(self, label: str) -> Tile:
        for t in self.tiles:
            if t.label == label:
                return t
        raise KeyError(label)

    def non_contiguous(self) -> list[Tile]:
        return [t for t in self.tiles if not t.contiguous]

    def overlaps(self) -> list[tuple[str, str, frozenset]]:
        """Pairs of tiles sharing cells, with the shared cells."""
        out = []
        for s, t in combinations(self.tiles, 2):
            common = s.cells & t.cells
            if common:
                out.append((s.label, t.label, common))
        return out

    def to_dict(self) -> dict:
        return {
            "n": self.n, "m": self.m,
            "stopper_omitted": self.stopper_omitted, "stopper": self.stopper_label,
            "tiles": [{"number": t.number, "label": t.label, "ket": t.ket, "contiguous": t.contiguous,
                       "cells": [list(c) for c in sorted(t.cells)]} for t in self.tiles],
        }

    def cell_owners(self) -> dict[tuple[int, int], list[int]]:
        owners: dict[tuple[int, int], list[int]] = {}
        for t in self.tiles:
            for c in sorted(t.cells):
                owners.setdefault(c, []).append(t.number)
        return owners


def _is_interval(xs: list[int]) -> bool:
    return xs == list(range(xs[0], xs[0] + len(xs)))


def is_stopper(st: ProductState) -> bool:
    return len(st.a.support()) == st.a.dim and len(st.b.support()) == st.b.dim


def tile_of(st: ProductState, number: int = 0) -> Tile:
    rows, cols = sorted(st.a.support()), sorted(st.b.support())
    return Tile(
        st.label,
        number,
        frozenset((i, j) for i in rows for j in cols),
        _is_interval(rows) and _is_interval(cols),
        f"{st.a}_A{st.b}_B",
    )


def layout(s: StateSet) -> Diagram:
    tiles, stopper = [], None
    for st in s:
        if stopper is None and is_stopper(st):
            stopper = st.label
            continue
        tiles.append(tile_of(st, len(tiles) + 1))
    return Diagram(s.n, s.m, tuple(tiles), stopper is not None, stopper)


def legend(d: Diagram) -> list[str]:
    lines = [f"{t.number}: {t.label} = {t.ket}" + ("" if t.contiguous else "  (split)") for t in d.tiles]
    if d.stopper_omitted:
        lines.append(f"stopper {d.stopper_label} omitted (covers the whole grid)")
    return lines


def render_ascii(d: Diagram) -> str:
    owners = d.cell_owners()
    w = max([len(str(len(d.tiles))), len(str(d.m)), 1]) + 2
    lw = len(str(d.n)) + 1

    def cell(i, j):
        nums = owners.get((i, j), [])
        text = "." if not nums else (str(nums[0]) if len(nums) == 1 else "*")
        return text.center(w)

    sep = " " * lw + "+" + "+".join("-" * w for _ in range(d.m)) + "+"
    out = [" " * lw + " " + " ".join(str(j).center(w) for j in range(1, d.m + 1)), sep]
    for i in range(1, d.n + 1):
        out.append(str(i).rjust(lw - 1) + " |" + "|".join(cell(i, j) for j in range(1, d.m + 1)) + "|")
        out.append(sep)
    out.append("")
    out.extend(legend(d))
    if any(len(v) > 1 for v in owners.values()):
        out.append("*: cell shared by several tiles")
    return "\n".join(out) + "\n"


_PALETTE = ("#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462",
            "#b3de69", "#fccde5", "#d9d9d9", "#bc80bd", "#ccebc5", "#ffed6f")


def render_svg(d: Diagram, cell: int = 40) -> str:
    margin = 30
    legend_lines = legend(d)
    width = margin + d.m * cell + 10
    height = margin + d.n * cell + 20 + 16 * len(legend_lines)
    svg = ET.Element("svg", {
        "xmlns": "http://www.w3.org/2000/svg", "version": "1.1",
        "width": str(width), "height": str(height),
        "viewBox": f"0 0 {width} {height}",
    })
    ET.SubElement(svg, "rect", {"x": "0", "y": "0", "width": str(width), "height": str(height), "fill": "white"})
    for j in range(1, d.m + 1):
        t = ET.SubElement(svg, "text", {"x": str(margin + (j - 0.5) * cell), "y": str(margin - 10),
                                       "text-anchor": "middle", "font-size": "12"})
        t.text = str(j)
    for i in range(1, d.n + 1):
        t = ET.SubElement(svg, "text", {"x": str(margin - 10), "y": str(margin + (i - 0.5) * cell + 4),
                                       "text-anchor": "middle", "font-size": "12"})
        t.text = str(i)
    owners = d.cell_owners()
    for i in range(1, d.n + 1):
        for j in range(1, d.m + 1):
            nums = owners.get((i, j), [])
            x, y = margin + (j - 1) * cell, margin + (i - 1) * cell
            fill = "white" if not nums else _PALETTE[(nums[0] - 1) % len(_PALETTE)]
            attrs = {"x": str(x), "y": str(y), "width": str(cell), "height": str(cell),
                     "fill": fill, "stroke": "black", "stroke-width": "1"}
            if len(nums) > 1:
                attrs["fill-opacity"] = "0.5"
                attrs["stroke-dasharray"] = "4 2"
            ET.SubElement(svg, "rect", attrs)
            if nums:
                t = ET.SubElement(svg, "text", {"x": str(x + cell / 2), "y": str(y + cell / 2 + 5),
                                               "text-anchor": "middle", "font-size": "14"})
                t.text = ",".join(map(str, nums))
    base = margin + d.n * cell + 20
    for k, line in enumerate(legend_lines):
        t = ET.SubElement(svg, "text", {"x": "4", "y": str(base + 16 * k), "font-size": "11"})
        t.text = line
    return ET.tostring(svg, encoding="unicode") + "\n"


def render(d: Diagram, fmt: str = "ascii") -> str:
    if fmt == "ascii":
        return render_ascii(d)
    if fmt == "svg":
        return render_svg(d)
    if fmt == "json":
        return json.dumps(d.to_dict(), indent=2) + "\n"
    raise ValueError(f"format must be one of {FORMATS}, got {fmt!r}")
