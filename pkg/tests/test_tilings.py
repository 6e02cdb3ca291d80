from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st
from oracles import cylinder_tiling_count

from tslab.errors import ResourceLimit
from tslab.tilings import (
    CylinderGrid,
    aztec_cells,
    cut_edge,
    degree_vector,
    enumerate_cylinder_tilings,
    enumerate_region_tilings,
    hula_hoops,
    hula_hoops_by_cycles,
    is_valid_tiling,
    render_ascii,
    sea,
    sea_height,
    thurston_height,
    tiling_height,
    tiling_to_json,
)

GRIDS = [(0, 1), (1, 1), (2, 1), (1, 2), (3, 1), (2, 2), (4, 1), (1, 3), (3, 2)]

# frozen from the transfer-matrix oracle
COUNTS = {(1, 1): 5, (2, 1): 12, (1, 2): 9, (3, 1): 29, (3, 2): 121, (2, 2): 32, (4, 1): 70, (0, 1): 2}


@pytest.mark.parametrize("m,n", GRIDS)
def test_counts_match_transfer_matrix(m, n):
    tilings = enumerate_cylinder_tilings(CylinderGrid(m, n))
    assert len(tilings) == cylinder_tiling_count(m, n)
    assert len(set(tilings)) == len(tilings)


@pytest.mark.parametrize("mn,count", sorted(COUNTS.items()))
def test_frozen_counts(mn, count):
    assert len(enumerate_cylinder_tilings(CylinderGrid(*mn))) == count


@pytest.mark.parametrize("m,n", GRIDS)
def test_every_tiling_is_valid(m, n):
    grid = CylinderGrid(m, n)
    assert all(is_valid_tiling(grid, t) for t in enumerate_cylinder_tilings(grid))


@pytest.mark.parametrize("radius", [1, 2, 3, 4])
def test_aztec_diamond_count(radius):
    assert len(enumerate_region_tilings(aztec_cells((0, 0), radius))) == 2 ** (radius * (radius + 1) // 2)


@pytest.mark.parametrize("m,n", [(1, 1), (2, 1), (3, 1), (2, 2), (1, 2)])
def test_cut_degrees_are_small(m, n):
    grid = CylinderGrid(m, n)
    for t in enumerate_cylinder_tilings(grid):
        deg = degree_vector(t, grid.width)
        assert all(deg.get(u, 0) in (0, 1, 2) for u in grid.interior_nodes())


@pytest.mark.parametrize("m,n", [(1, 1), (2, 1), (3, 1), (1, 2), (2, 2), (4, 1), (3, 2)])
def test_hoops_from_heights_equal_hoops_from_cycles(m, n):
    grid = CylinderGrid(m, n)
    for t in enumerate_cylinder_tilings(grid):
        assert hula_hoops(grid, t) == hula_hoops_by_cycles(grid, t)


@pytest.mark.parametrize("m,n", [(1, 1), (2, 1), (3, 1), (2, 2), (4, 1)])
def test_hoop_grading(m, n):
    grid = CylinderGrid(m, n)
    grades = Counter(hula_hoops(grid, t) for t in enumerate_cylinder_tilings(grid))
    assert set(grades) == set(range(m + 2))
    assert grades[0] == 1 and grades[m + 1] == 1
    # reflecting the cylinder swaps r and m+1-r hoops
    assert all(grades[r] == grades[m + 1 - r] for r in range(m + 2))


def test_hoop_grading_three_rows():
    grid = CylinderGrid(3, 1)
    grades = Counter(hula_hoops(grid, t) for t in enumerate_cylinder_tilings(grid))
    assert [grades[r] for r in range(5)] == [1, 7, 13, 7, 1]


@pytest.mark.parametrize("m,n", [(1, 1), (2, 1), (3, 1), (2, 2)])
def test_height_spectrum(m, n):
    grid = CylinderGrid(m, n)
    base = sea_height(grid)
    heights = sorted({tiling_height(grid, t) for t in enumerate_cylinder_tilings(grid)})
    assert heights == [base + 4 * k for k in range(m + 2)]


def test_sea_is_all_horizontal_and_unique_minimum():
    grid = CylinderGrid(3, 2)
    s = sea(grid)
    assert all(d[2] == "h" for d in s)
    assert tiling_height(grid, s) == sea_height(grid)


@given(st.sampled_from(enumerate_cylinder_tilings(CylinderGrid(3, 1))))
def test_height_increments(t):
    grid = CylinderGrid(3, 1)
    h = thurston_height(grid, t)
    for (r, c), x in h.items():
        east = h[(r, (c + 1) % grid.width)]
        assert abs(east - x) in (1, 3)
        if (r + 1, c) in h:
            assert abs(h[(r + 1, c)] - x) in (1, 3)


def test_cut_edges_separate_the_halves():
    assert cut_edge((0, 0, "h")) == ((0, 1), (1, 1))
    assert cut_edge((0, 0, "v")) == ((1, 0), (1, 1))


def test_render_and_json():
    grid = CylinderGrid(1, 1)
    s = sea(grid)
    art = render_ascii(grid, s)
    assert art.count("<") == 2 and len(art.splitlines()) == 2
    assert len(tiling_to_json(s, grid.width)) == 2


def test_enumeration_ceiling():
    with pytest.raises(ResourceLimit):
        enumerate_cylinder_tilings(CylinderGrid(3, 2), limit=10)
