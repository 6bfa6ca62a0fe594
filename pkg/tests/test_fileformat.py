from __future__ import annotations

import itertools

import pytest

from conftest import THETA_EXAMPLE_RG
from ribbonpoly.fileformat import ParseError, parse, render
from ribbonpoly.invariants import corpus
from ribbonpoly.packaged import packaged_isomorphic
from ribbonpoly.ribbon import counts


def test_parse_example():
    pg = parse(THETA_EXAMPLE_RG)
    v, e, k, b = counts(pg.graph)
    assert (v, e, k, b) == (2, 3, 1, 1)
    assert pg.graph.sign == {"e": 1, "f": 1, "g": 1}
    assert pg.graph.rotation["v1"] == (("e", 1), ("f", 1), ("e", 2), ("g", 1))


def test_parse_default_packaging_is_discrete():
    pg = parse(THETA_EXAMPLE_RG)
    assert all(len(b) == 1 for b in pg.vparts.blocks)
    assert all(w == 0 for w in pg.vparts.weights + pg.bparts.weights)


def test_parse_comments_and_blank_lines():
    text = "# a comment\n\nedges: e-\nvertex v1: e.1 e.2  # twisted loop\n"
    pg = parse(text)
    assert pg.graph.sign == {"e": -1}


def test_parse_explicit_blocks():
    text = (THETA_EXAMPLE_RG
            + "vblock 2: v1 v2\n"
            + "bblock 1: b1\n")
    pg = parse(text)
    assert pg.vparts.shape() == frozenset({(frozenset({"v1", "v2"}), 2)})
    assert pg.bparts.weights == (1,)


def test_unknown_boundary_id():
    with pytest.raises(ParseError) as exc:
        parse(THETA_EXAMPLE_RG + "bblock 0: b2\n")
    assert "unknown boundary id" in str(exc.value)


def test_unknown_vertex_id():
    with pytest.raises(ParseError) as exc:
        parse(THETA_EXAMPLE_RG + "vblock 0: v3\n")
    assert "unknown vertex id" in str(exc.value)


def test_empty_file_rejected():
    with pytest.raises(ParseError) as exc:
        parse("# nothing here\n")
    assert "no vertices" in str(exc.value)


def test_syntax_error_carries_position():
    with pytest.raises(ParseError) as exc:
        parse("edges: e+\nvertex v1: e.3 e.2\n")
    assert exc.value.line == 2
    assert "syntax error" in str(exc.value)


def test_each_end_used_exactly_once():
    with pytest.raises(ParseError):
        parse("edges: e+\nvertex v1: e.1 e.1\n")
    with pytest.raises(ParseError):
        parse("edges: e+ f+\nvertex v1: e.1 e.2\n")


def test_partition_error_on_repeated_element():
    with pytest.raises(ParseError) as exc:
        parse(THETA_EXAMPLE_RG + "vblock 0: v1\nvblock 0: v1 v2\n")
    assert "partition error" in str(exc.value)


def test_render_is_deterministic_and_round_trips():
    pg = parse(THETA_EXAMPLE_RG + "vblock 2: v1 v2\nbblock 1: b1\n")
    text = render(pg)
    assert render(parse(text)) == text
    assert packaged_isomorphic(parse(text), pg)


def test_round_trip_over_corpus_sample():
    for _, pg in itertools.islice(corpus(2, seed=11), 30):
        again = parse(render(pg))
        assert packaged_isomorphic(again, pg)
        assert render(again) == render(pg)
