"""Alcove-to-path transports and the dual isomorphism audit."""

from __future__ import annotations

from fractions import Fraction

import pytest

from alcovecrystals import alcove as al
from alcovecrystals import crystalgraph as cg
from alcovecrystals import littelmann as lp
from alcovecrystals.chains import LambdaChain, dual_chain, lex_chain, window
from alcovecrystals.limits import (
    varpi,
    varpi_dual,
    varpi_dual_infinity,
    varpi_infinity,
    verify_dual_iso,
)
from alcovecrystals.rootsys import RootSystem

A2 = RootSystem.from_type("A2")
A3 = RootSystem.from_type("A3")
B2 = RootSystem.from_type("B2")


def closure(chain):
    """All elements reachable from the empty one by lowering."""
    start = al.element(chain, [])
    out = [start]
    seen = {start.positions}
    frontier = [start]
    while frontier:
        nxt = []
        for b in frontier:
            for i in chain.rs.index_set:
                c = al.f_op(b, i)
                if c is not None and c.positions not in seen:
                    seen.add(c.positions)
                    out.append(c)
                    nxt.append(c)
        frontier = nxt
    return out


def window_elements(rs, depth, dual=False):
    win = window(rs, 1, dual=dual)
    start = al.element(win, [])
    op = al.e_op if dual else al.f_op
    out = [start]
    seen = {(start.chain.copies, start.positions)}
    frontier = [start]
    for _ in range(depth):
        nxt = []
        for b in frontier:
            for i in rs.index_set:
                c = op(b, i)
                if c is not None and (c.chain.copies, c.positions) not in seen:
                    seen.add((c.chain.copies, c.positions))
                    out.append(c)
                    nxt.append(c)
        frontier = nxt
    return out


# ---------------------------------------------------------------------------
# finite transport


def test_empty_element_maps_to_the_straight_path():
    chain = lex_chain(A2, (1, 1))
    path = varpi(al.element(chain, []))
    assert path.kind == "finite"
    assert path.segments == (((-1, -1), Fraction(1)),)


def test_single_zero_level_fold_reflects_the_whole_path():
    chain = lex_chain(A2, (1, 1))
    el = al.element_from_pairs(chain, [(((1, 0)), 0)])
    path = varpi(el)
    assert path.segments == (((1, -2), Fraction(1)),)


def test_weights_negate_across_the_transport():
    chain = lex_chain(A2, (1, 1))
    for el in closure(chain):
        assert lp.weight(varpi(el)) == tuple(-c for c in al.weight(el))


def test_transport_breaks_times_at_distinct_crossings():
    chain = lex_chain(A3, (2, 0, 0))
    el = al.element(chain, [0, 4])
    path = varpi(el)
    assert sum(d for _, d in path.segments) == 1
    assert len(path.segments) >= 2


def test_varpi_rejects_wrong_models():
    chain = lex_chain(A2, (1, 1))
    with pytest.raises(ValueError):
        varpi(al.element(window(A2, 1), []))
    with pytest.raises(ValueError):
        varpi(al.element(dual_chain(chain), []))


def test_varpi_rejects_out_of_order_chains():
    entries = (
        lex_chain(A2, (1, 1)).entries[3],
        lex_chain(A2, (1, 1)).entries[2],
    )
    scrambled = LambdaChain(A2, (1, 1), entries)
    with pytest.raises(ValueError):
        varpi(al.element(scrambled, [0, 1]))


def test_finite_transport_is_a_dual_isomorphism():
    chain = lex_chain(A2, (1, 1))
    report = verify_dual_iso(
        closure(chain), varpi, cg.alcove_ops(chain), cg.path_ops(A2)
    )
    assert report.checked == 8
    assert report.ok, report.failures


def test_finite_transport_dual_iso_beyond_type_a():
    chain = lex_chain(B2, (1, 1))
    report = verify_dual_iso(
        closure(chain), varpi, cg.alcove_ops(chain), cg.path_ops(B2)
    )
    assert report.checked == 16
    assert report.ok, report.failures


# ---------------------------------------------------------------------------
# finite dual transport


def test_dual_empty_element_maps_to_the_dominant_path():
    chain = dual_chain(lex_chain(A2, (1, 1)))
    path = varpi_dual(al.element(chain, []))
    assert path.segments == (((1, 1), Fraction(1)),)


def test_dual_transport_is_a_dual_isomorphism():
    chain = dual_chain(lex_chain(A3, (1, 0, 0)))
    elements = [al.mirror(el) for el in closure(lex_chain(A3, (1, 0, 0)))]
    report = verify_dual_iso(
        elements, varpi_dual, cg.alcove_ops(chain), cg.path_ops(A3)
    )
    assert report.checked == 4
    assert report.ok, report.failures


def test_dual_transport_rejects_primal_input():
    with pytest.raises(ValueError):
        varpi_dual(al.element(lex_chain(A2, (1, 1)), []))


# ---------------------------------------------------------------------------
# unbounded transport


def test_empty_window_element_maps_to_the_incoming_ray():
    path = varpi_infinity(al.element(window(A2, 1), []))
    assert path == lp.xi_infinity(A2)


def test_single_fold_window_image_matches_the_ray_raise():
    el = al.element_from_pairs(window(A2, 1), [((1, 0), -1)])
    path = varpi_infinity(el)
    assert path == lp.e_op(lp.xi_infinity(A2), 1)
    assert path.segments == (((-1, 2), Fraction(1)),)
    assert lp.evaluate(path, 0) == (-2, 1)
    assert lp.weight(path) == (2, -1)


def test_unbounded_transport_is_copy_independent():
    for el in window_elements(A2, 3):
        k, _ = al.minimal_projection(el)
        base = varpi_infinity(el)
        for extra in (1, 2):
            again = varpi_infinity(el, copies=max(k, 1) + extra)
            assert again.segments == base.segments
            assert again.kind == base.kind


def test_unbounded_transport_rejects_too_few_copies():
    el = al.element_from_pairs(window(A2, 2), [((1, 0), -2)])
    with pytest.raises(ValueError):
        varpi_infinity(el, copies=1)


def test_unbounded_transport_is_a_dual_isomorphism():
    report = verify_dual_iso(
        window_elements(A2, 3),
        varpi_infinity,
        cg.alcove_ops(window(A2, 1)),
        cg.path_ops(A2, "co-extended"),
    )
    assert report.checked == 13
    assert report.ok, report.failures


# ---------------------------------------------------------------------------
# unbounded dual transport


def test_empty_dual_window_element_maps_to_the_outgoing_ray():
    path = varpi_dual_infinity(al.element(window(A2, 1, dual=True), []))
    assert path == lp.pi_infinity(A2)


def test_dual_single_fold_image_is_a_lowered_ray():
    el = al.element_from_pairs(window(A2, 1, dual=True), [((1, 0), 1)])
    path = varpi_dual_infinity(el)
    assert path == lp.f_op(lp.pi_infinity(A2), 1)
    assert path.segments == (((-1, 2), Fraction(1)),)


def test_dual_unbounded_agrees_with_the_composite_route():
    for el in window_elements(A2, 3, dual=True):
        direct = varpi_dual_infinity(el)
        composite = lp.dualize(varpi_infinity(al.mirror(el)))
        assert direct == composite


def test_dual_unbounded_transport_is_a_dual_isomorphism():
    report = verify_dual_iso(
        window_elements(A2, 3, dual=True),
        varpi_dual_infinity,
        cg.alcove_ops(window(A2, 1, dual=True)),
        cg.path_ops(A2, "extended"),
    )
    assert report.checked == 13
    assert report.ok, report.failures


def test_dual_unbounded_is_copy_independent():
    for el in window_elements(A2, 2, dual=True):
        base = varpi_dual_infinity(el)
        assert varpi_dual_infinity(el, copies=4).segments == base.segments


# ---------------------------------------------------------------------------
# the audit harness itself


def test_identity_map_fails_weight_negation():
    chain = lex_chain(A2, (1, 1))
    ops = cg.alcove_ops(chain)
    report = verify_dual_iso(closure(chain), lambda b: b, ops, ops)
    assert not report.ok
    assert any(prop == "weight negation" for _, prop in report.failures)


def test_identity_map_passes_on_the_trivial_crystal():
    chain = lex_chain(A2, (0, 0))
    ops = cg.alcove_ops(chain)
    report = verify_dual_iso(closure(chain), lambda b: b, ops, ops)
    assert report.checked == 1
    assert report.ok, report.failures


def test_mismatched_root_systems_are_rejected():
    with pytest.raises(ValueError):
        verify_dual_iso([], lambda b: b, cg.alcove_ops(lex_chain(A2, (1, 1))), cg.path_ops(A3))
