from bibwt import BiBwt
from grid import MemGrid
from oracle import index_of, random_reads


def test_points_form_the_lf_permutation(rng):
    index = index_of(random_reads(rng, 3))
    grid = MemGrid.build(index)
    assert grid.n == index.n
    columns = [grid.column_of(j) for j in range(1, index.n + 1)]
    assert columns == [index.lf(j) for j in range(1, index.n + 1)]
    assert sorted(columns) == list(range(1, index.n + 1))
    points = grid.report_area(1, index.n, 1, index.n)
    assert len(points) == index.n
    assert [row for row, _, _ in points] == list(range(1, index.n + 1))
    assert all(sa == index.sa_at(row) for row, _, sa in points)


def test_single_row_has_one_point(rng):
    index = index_of(random_reads(rng, 2))
    grid = MemGrid.build(index)
    for j in range(1, index.n + 1):
        assert grid.report_area(j, j, 1, index.n) == [(j, index.lf(j), index.sa_at(j))]


def test_random_areas_match_filter(rng):
    index = index_of(random_reads(rng, 4))
    grid = MemGrid.build(index)
    n = index.n
    everything = [(j, index.lf(j), index.sa_at(j)) for j in range(1, n + 1)]
    for _ in range(300):
        i, j = sorted(rng.randint(1, n) for _ in range(2))
        l1, l2 = sorted(rng.randint(1, n) for _ in range(2))
        expected = [p for p in everything if i <= p[0] <= j and l1 <= p[1] <= l2]
        assert grid.report_area(i, j, l1, l2) == expected
    assert grid.report_area(5, 4, 1, n) == []
    assert grid.report_area(1, n, 3, 2) == []


def test_weiner_link_cells_partition_the_node(rng):
    index = index_of(random_reads(rng, 4))
    grid = MemGrid.build(index)
    bi = BiBwt(index)
    root = bi.root_range()
    for c in bi.enumerate_left(root):
        v = bi.extend_left(root, c)
        total = 0
        for a in bi.enumerate_left(v):
            link = bi.extend_left(v, a)
            points = grid.report_area(v.fwd_start, v.fwd_end, link.fwd_start, link.fwd_end)
            assert all(index.bwt_at(row) == a for row, _, _ in points)
            total += len(points)
        assert total == v.size
