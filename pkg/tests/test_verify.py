from __future__ import annotations

from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from imols import (
    BlockDesign,
    DesignError,
    GroupedDesign,
    IncompleteSquare,
    SquareSet,
    glue_ipbd,
    idempotent_mols,
    imols_bound,
    mols_from_field,
    verify_block_design,
    verify_grouped_design,
    verify_idempotent,
    verify_incomplete_latin,
    verify_orthogonal,
    verify_resolution,
    verify_square_set,
)

from corpus import (
    FANO_SQUARE,
    FRAMED_5,
    FRAMED_5_FLAWED,
    ag_oracle,
    card_squares,
    fano,
    ipbd_13_4,
    ipbd_13_4_from_gdd,
    td,
    wilson_9_cubed,
)
from oracles import pair_multiplicities


def _framed(rows=FRAMED_5):
    return IncompleteSquare.one_based(rows, [1, 2])


def test_framed_square_passes():
    assert verify_incomplete_latin(_framed()).ok


def test_flawed_framed_square_has_exactly_two_repeats():
    r = verify_incomplete_latin(_framed(FRAMED_5_FLAWED))
    assert sorted(r.violations) == ["column 3 repeats symbol 4", "column 5 repeats symbol 5"]


def test_order_one():
    assert verify_incomplete_latin(IncompleteSquare.one_based([[1]])).ok


def test_perturbed_cell_fails_with_location():
    s = _framed().with_cell(2, 2, 2)  # (3,3) := 3
    r = verify_incomplete_latin(s)
    assert not r.ok
    assert any("column 3" in v for v in r.violations)


def test_hole_symbol_in_hole_row_is_reported():
    s = _framed().with_cell(0, 2, 0)
    r = verify_incomplete_latin(s)
    assert any("hole symbol 1" in v and "row 1" in v for v in r.violations)


def test_filled_hole_cell_is_reported():
    r = verify_incomplete_latin(_framed().with_cell(0, 0, 0))
    assert not r.ok


def test_card_squares_orthogonal():
    a, b = card_squares()
    assert verify_orthogonal(a, b).ok


def test_square_against_itself_fails():
    for q in (2, 3, 5):
        s = mols_from_field(q).squares[0]
        assert not verify_orthogonal(s, s).ok


def test_field_squares_pairwise_orthogonal():
    sq = mols_from_field(5).squares
    for a, b in combinations(sq, 2):
        assert verify_orthogonal(a, b).ok


def test_orthogonal_requires_same_hole():
    a = IncompleteSquare.one_based([[1, 2], [2, 1]])
    b = IncompleteSquare.one_based([[0, 2], [2, 1]], [1])
    with pytest.raises(DesignError):
        verify_orthogonal(a, b)


def test_square_set_examples():
    assert verify_square_set(SquareSet.of([_framed()])).ok
    two = IncompleteSquare.one_based([[1, 2], [2, 1]])
    assert not verify_square_set(SquareSet.of([two, two])).ok
    glued = glue_ipbd(ipbd_13_4(), {4: idempotent_mols(4)}, 2)
    assert verify_square_set(glued).ok


def test_every_verified_set_meets_counting_bound():
    from corpus import square_set_corpus

    for ss in square_set_corpus():
        assert verify_square_set(ss).ok
        if ss.t:
            assert imols_bound(ss.t, ss.order, len(ss.hole))


@given(st.integers(2, 6), st.data())
def test_random_latin_perturbation_detected(n, data):
    # a cyclic square with one symbol changed always fails
    s = IncompleteSquare(n, frozenset(), tuple(tuple((i + j) % n for j in range(n)) for i in range(n)))
    i, j = data.draw(st.integers(0, n - 1)), data.draw(st.integers(0, n - 1))
    x = data.draw(st.integers(0, n - 1).filter(lambda x: x != (i + j) % n))
    assert verify_incomplete_latin(s).ok
    assert not verify_incomplete_latin(s.with_cell(i, j, x)).ok


def test_idempotent_examples():
    assert verify_idempotent(IncompleteSquare.one_based(FANO_SQUARE)).ok
    assert verify_idempotent(IncompleteSquare.one_based([[1]])).ok
    cyclic = IncompleteSquare.one_based([[(i + j) % 3 + 1 for j in range(3)] for i in range(3)])
    assert cyclic.rows()[0][0] == 1 and cyclic.rows()[1][1] == 3
    assert not verify_idempotent(cyclic).ok


def test_block_design_examples():
    assert verify_block_design(fano(), {3}).ok
    assert verify_block_design(BlockDesign(2, ((0, 1),)), {2}).ok
    d = ipbd_13_4_from_gdd()
    assert verify_block_design(d, {4}).ok
    counts = pair_multiplicities(13, d.one_based_blocks())
    hole = {x + 1 for x in d.hole}
    assert all(c == (0 if a in hole and b in hole else 1) for (a, b), c in counts.items())


def test_block_design_reports_every_violation():
    bad = BlockDesign(5, ((0, 1, 2), (0, 1), (2, 3)), frozenset({2, 3}))
    r = verify_block_design(bad, {3})
    text = "\n".join(r.violations)
    assert "size 2 not in K=[3]" in text
    assert "pair {1,2} covered 2 times" in text
    assert "hole pair {3,4} covered 1 times" in text
    assert "pair {1,5} covered 0 times" in text


def test_grouped_examples():
    assert verify_grouped_design(td(3, 3), {3}).ok
    assert verify_grouped_design(GroupedDesign(3, ((0, 1, 2),)), {3}).ok
    assert verify_grouped_design(wilson_9_cubed(), {3}).ok


def test_grouped_block_inside_group_fails():
    d = GroupedDesign(4, ((0, 1), (2, 3)), ((0, 1),))
    r = verify_grouped_design(d)
    assert not r.ok


def test_resolution_examples():
    assert verify_resolution(ag_oracle(3)).ok
    assert verify_resolution(BlockDesign(2, ((0, 1),), resolution=(((0, 1),),))).ok
    d = ag_oracle(3)
    moved = [list(c) for c in d.resolution]
    moved[1].append(moved[0].pop())
    bad = BlockDesign(9, d.blocks, resolution=tuple(tuple(c) for c in moved))
    assert not verify_resolution(bad).ok
    with pytest.raises(DesignError):
        verify_resolution(fano())


def test_report_str_lists_violations():
    r = verify_block_design(BlockDesign(3, ((0, 1),)), {2})
    assert "FAIL (2 violations)" in str(r) and "pair {1,3} covered 0 times" in str(r)
    assert str(verify_block_design(fano())).endswith("PASS")
