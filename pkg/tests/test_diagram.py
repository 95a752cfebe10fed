import xml.etree.ElementTree as ET

import pytest

from locc_lab.diagram import Diagram, layout, render, tile_of
from locc_lab.families import build, valid_families
from locc_lab.states import Ket, ProductState

GRID = [(n, m) for n in range(4, 13) for m in range(4, n + 1)]


def test_split_tile_in_6x4():
    d = layout(build(6, 4))
    (t,) = d.non_contiguous()
    assert t.label == "varphi_7"
    assert t.cells == {(3, 2), (5, 2)}


def test_contiguous_tile():
    t = tile_of(ProductState("x", Ket.of(4, 1), Ket.of(4, 2, 3)))
    assert t.cells == {(1, 2), (1, 3)} and t.contiguous


def test_stopper_omitted():
    d = layout(build(6, 4))
    assert d.stopper_omitted and d.stopper_label == "phi"
    assert len(d.tiles) == 10
    assert [t.number for t in d.tiles] == list(range(1, 11))


def test_tile_numbers_follow_construction_order():
    s = build(7, 6)
    d = layout(s)
    assert [t.label for t in d.tiles] == s.labels()[1:]


def test_empty_grid():
    text = render(Diagram(2, 2, ()), "ascii")
    assert text.count(".") == 4


def test_9x7_tile_count():
    assert len(layout(build(9, 7)).tiles) == 24


def test_ascii_shows_split_number_twice():
    text = render(layout(build(6, 4)), "ascii")
    grid = text.split("\n\n")[0]
    rows = [r for r in grid.splitlines() if "|" in r]
    assert rows[2].split("|")[2].strip() == "7" and rows[4].split("|")[2].strip() == "7"
    assert "7: varphi_7 = |3-5>_A|2>_B  (split)" in text


def test_signs_do_not_change_tiles():
    a = tile_of(ProductState("x", Ket.of(5, 3, (5, -1)), Ket.of(4, 2)))
    b = tile_of(ProductState("y", Ket.of(5, 3, 5), Ket.of(4, 2)))
    assert a.cells == b.cells


def test_svg_is_valid_and_deterministic():
    d = layout(build(7, 6))
    svg = render(d, "svg")
    root = ET.fromstring(svg)
    assert root.tag.endswith("svg") and root.get("version") == "1.1"
    assert render(layout(build(7, 6)), "svg") == svg


def test_overlaps_marked():
    d = Diagram(2, 2, (tile_of(ProductState("x", Ket.of(2, 1), Ket.of(2, 1)), 1),
                       tile_of(ProductState("y", Ket.of(2, 1, 2), Ket.of(2, 1)), 2)))
    assert d.overlaps()[0][2] == {(1, 1)}
    assert "*" in render(d, "ascii")


def test_bad_format():
    with pytest.raises(ValueError):
        render(Diagram(1, 1, ()), "png")


@pytest.mark.parametrize("nm", GRID)
def test_family_tiles_are_disjoint(nm):
    for fam in valid_families(*nm):
        d = layout(build(*nm, fam))
        assert d.stopper_omitted
        assert d.overlaps() == []
