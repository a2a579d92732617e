from __future__ import annotations

import json

import pytest
from hypothesis import given, strategies as st

from imols import (
    BlockDesign,
    FormatError,
    GroupedDesign,
    IncompleteSquare,
    design_from_json,
    emit_design,
    emit_square,
    emit_square_set,
    parse_design,
    parse_square,
    parse_square_set,
    verify_block_design,
    verify_incomplete_latin,
    verify_resolution,
)

from corpus import FANO_BLOCKS, FRAMED_5, ag, td

FRAMED_TEXT = "5 2\n1 2\n" + "\n".join(
    " ".join("." if x in (0, None) else str(x) for x in row) for row in FRAMED_5
) + "\n"


def test_order_one_square():
    s = parse_square("1 0\n\n1\n")
    assert s.order == 1 and s.rows() == [[1]]
    assert emit_square(s) == "1 0\n\n1\n"


def test_framed_square_parses_and_verifies():
    s = parse_square(FRAMED_TEXT)
    assert s.hole == {0, 1}
    assert verify_incomplete_latin(s).ok
    assert emit_square(s) == FRAMED_TEXT


def test_square_set_round_trip():
    text = FRAMED_TEXT + "\n" + "1 0\n\n1\n"
    with pytest.raises(FormatError, match="square 2"):
        parse_square_set(text)
    two = FRAMED_TEXT + "\n" + FRAMED_TEXT
    ss = parse_square_set(two)
    assert ss.t == 2 and emit_square_set(ss) == two


@pytest.mark.parametrize(
    "text,message",
    [
        ("2 0\n\n1 2\n2\n", "line 4: expected 2 entries"),
        ("2 0\n\n1 3\n2 1\n", "line 3: symbol 3"),
        ("2 0\n\n1 .\n2 1\n", "cell (1,2) is outside the hole but empty"),
        ("2 0\n\n1 2\n", "line 4: expected 2 rows"),
        ("2\n\n1 2\n2 1\n", "line 1: expected 'n m'"),
        ("2 1\n3\n. 2\n2 1\n", "line 2: hole index"),
        ("2 1\n\n1 2\n2 1\n", "line 2: expected 1 distinct"),
        ("2 0\n\n1 x\n2 1\n", "line 3: symbols must be integers"),
        ("", "no square"),
    ],
)
def test_square_errors_are_located(text, message):
    with pytest.raises(FormatError, match=message.replace("(", r"\(").replace(")", r"\)")):
        parse_square_set(text)


def test_parse_square_rejects_sets():
    with pytest.raises(FormatError, match="one square"):
        parse_square(FRAMED_TEXT + "\n" + FRAMED_TEXT)


@given(st.integers(1, 7), st.integers(0, 6))
def test_cyclic_squares_round_trip(n, shift):
    rows = tuple(tuple((i + j + shift) % n for j in range(n)) for i in range(n))
    s = IncompleteSquare(n, frozenset(), rows)
    assert parse_square(emit_square(s)) == s


def test_fano_json_verifies():
    obj = {"v": 7, "blocks": [list(b) for b in FANO_BLOCKS]}
    d = parse_design(json.dumps(obj))
    assert verify_block_design(d, {3}).ok
    text = emit_design(d)
    assert text.startswith('{\n  "v": 7,\n  "hole": [],\n  "blocks": [\n    [1, 2, 3],\n')
    assert parse_design(text) == d and emit_design(parse_design(text)) == text


def test_trivial_design():
    d = parse_design('{"v": 1, "blocks": []}')
    assert d == BlockDesign(1)
    assert emit_design(d) == '{\n  "v": 1,\n  "hole": [],\n  "blocks": []\n}\n'
    assert verify_block_design(d).ok


def test_resolution_survives_round_trip():
    d = ag(3)
    text = emit_design(d)
    back = parse_design(text)
    assert back.resolution is not None and verify_resolution(back).ok
    assert emit_design(back) == text


def test_grouped_round_trip():
    d = td(3, 3)
    text = emit_design(d)
    assert '"group_holes"' in text
    back = parse_design(text)
    assert isinstance(back, GroupedDesign) and back == d and emit_design(back) == text


def test_key_order_is_input_independent():
    a = parse_design('{"blocks": [[2, 1]], "hole": [], "v": 2}')
    b = parse_design('{"v": 2, "blocks": [[1, 2]]}')
    assert emit_design(a) == emit_design(b)


@pytest.mark.parametrize(
    "obj,message",
    [
        ({"v": 3, "blocks": [[1, 2], [1, "x"]]}, r"\$\.blocks\[1\]\[1\]"),
        ({"v": 3, "blocks": [[1, 2], [1, 4]]}, r"\$\.blocks\[1\]\[1\]: point 4 outside 1\.\.3"),
        ({"v": 3, "blocks": [[0, 1]]}, r"\$\.blocks\[0\]\[0\]"),
        ({"v": 3}, r"\$: 'blocks' is a required property"),
        ({"v": 3, "blocks": [], "extra": 1}, r"\$: Additional properties"),
        ({"v": 0, "blocks": []}, r"\$\.v"),
        ({"v": 4, "groups": [[1, 2], [3, 4]], "group_holes": [[1]], "blocks": []}, r"\$\.group_holes"),
        ({"v": 4, "groups": [[1, 2], []], "blocks": []}, r"\$\.groups\[1\]"),
        ({"v": 3, "blocks": [[1, 1]]}, r"\$: "),
        ([1, 2], r"\$: "),
    ],
)
def test_design_errors_are_path_precise(obj, message):
    with pytest.raises(FormatError, match=message):
        design_from_json(obj)


def test_invalid_json_reports_position():
    with pytest.raises(FormatError, match="line 1 column"):
        parse_design('{"v": 3,')
