"""Transports between the alcove model and the path model.

The finite transport ``varpi`` reads the folding times of an alcove element
off its chain and produces a piecewise linear path; it swaps raising with
lowering and negates weights.  ``varpi_dual`` is the same construction
threaded through the order-reversing identification of the dual chain.  The
``*_infinity`` variants lift both to the unbounded models by projecting onto
a finite crystal first and letting the canonical straightening of rho-rays
erase the choice made there.

``verify_dual_iso`` is the audit harness: it replays every defining identity
of a dual isomorphism over an enumerated set of elements.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .alcove import element_from_pairs, minimal_projection, mirror, project_Spr
from .chains import dual_chain, lex_chain
from .littelmann import PLPath, dualize, xi_infinity
from .rootsys import pairing

__all__ = [
    "DualIsoReport",
    "varpi",
    "varpi_dual",
    "varpi_dual_infinity",
    "varpi_infinity",
    "verify_dual_iso",
]


def varpi(el) -> PLPath:
    """Path image of a finite alcove element.

    Each selected hyperplane is crossed at the time given by its level over
    the pairing of the chain weight with its coroot; the direction between
    consecutive crossing times is minus the running reflection product
    applied to the chain weight.
    """
    chain = el.chain
    if chain.is_window or el.is_dual:
        raise ValueError("varpi expects an element over a finite primal chain")
    rs = el.rs
    lam = tuple(chain.lam)
    events = []
    for p in el.positions:
        entry = chain.entries[p]
        gap = pairing(lam, entry.root)
        events.append((Fraction(entry.level, gap), entry.root))
    for (a, _), (b, _) in zip(events, events[1:]):
        if a > b:
            raise ValueError("chain entries are not in crossing-time order")

    segments = []
    w = rs.identity_element()
    prev = Fraction(0)
    j = 0
    while True:
        t = events[j][0] if j < len(events) else Fraction(1)
        if t > prev:
            v = w.apply_weight(lam)
            segments.append((tuple(-c for c in v), t - prev))
            prev = t
        if j >= len(events):
            break
        while j < len(events) and events[j][0] == t:
            w = w * rs.reflection(events[j][1])
            j += 1
    return PLPath(rs, "finite", tuple(segments))


def varpi_dual(el) -> PLPath:
    """Path image of a finite dual alcove element.

    The dual chain lists the same hyperplanes in reversed order, so the
    element transfers verbatim to the primal chain; the finite transport and
    a path dualization then land it among paths of the opposite sign.
    """
    if el.chain.is_window or not el.is_dual:
        raise ValueError("varpi_dual expects an element over a finite dual chain")
    return dualize(varpi(mirror(el)))


def varpi_infinity(el, copies: int | None = None) -> PLPath:
    """Co-extended path image of an element of the unbounded model.

    The element is projected onto a finite crystal with ``copies`` times the
    dominant-sum weight, transported there, and grafted onto the incoming
    rho-ray.  Any admissible number of copies gives the same canonical path
    because the leading run in the rho direction is absorbed by the ray.
    """
    if not el.chain.is_window or el.is_dual:
        raise ValueError("varpi_infinity expects an element over the primal window")
    rs = el.rs
    if copies is None:
        copies, image = minimal_projection(el)
        if copies == 0:
            return xi_infinity(rs)
    else:
        if copies == 0 and not el.positions:
            return xi_infinity(rs)
        image = project_Spr(el, copies)
        if image is None:
            raise ValueError(f"no projection onto {copies} copies")
    finite = varpi(image)
    segments = tuple(
        (tuple(Fraction(-c) / copies for c in vel), dur * copies)
        for vel, dur in finite.segments
    )
    return PLPath(rs, "co-extended", segments)


def varpi_dual_infinity(el, copies: int | None = None) -> PLPath:
    """Extended path image of an element of the unbounded dual model.

    The window entries agree verbatim with the dual chain of a large enough
    multiple of the dominant-sum weight, so the element restricts to a finite
    dual crystal; its path image, slowed down by the number of copies, merges
    into the outgoing rho-ray independently of that number.
    """
    if not el.chain.is_window or not el.is_dual:
        raise ValueError("varpi_dual_infinity expects an element over the dual window")
    rs = el.rs
    needed = 1
    for root, level in el.pairs():
        gap = pairing(rs.rho, root)
        needed = max(needed, -(-level // gap))
    if copies is None:
        copies = needed
    elif copies < needed:
        raise ValueError(f"need at least {needed} copies")
    target = dual_chain(lex_chain(rs, tuple(c * copies for c in rs.rho)))
    restricted = element_from_pairs(
        target, [(root.coeffs, level) for root, level in el.pairs()]
    )
    finite = varpi_dual(restricted)
    segments = tuple(
        (tuple(Fraction(c) / copies for c in vel), dur * copies)
        for vel, dur in finite.segments
    )
    return PLPath(rs, "extended", segments)


@dataclass
class DualIsoReport:
    """Outcome of replaying the dual-isomorphism identities element by element."""

    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_dual_iso(elements, mapping, source_ops, target_ops) -> DualIsoReport:
    """Check that ``mapping`` is a dual isomorphism on the given elements.

    For every element and every direction: lowering must transport to
    raising and vice versa (with undefined matching undefined), the two
    string statistics must trade places, and the weight must flip sign.
    Failures are recorded as (rendered element, property) pairs.
    """
    if source_ops.rs != target_ops.rs:
        raise ValueError("source and target live over different root systems")
    report = DualIsoReport()
    for b in elements:
        report.checked += 1
        name = source_ops.render(b)
        image = mapping(b)
        wt = source_ops.weight(b)
        if tuple(target_ops.weight(image)) != tuple(-c for c in wt):
            report.failures.append((name, "weight negation"))
        for i in source_ops.rs.index_set:
            if target_ops.epsilon(image, i) != source_ops.phi(b, i):
                report.failures.append((name, f"eps/phi swap at {i}"))
            if target_ops.phi(image, i) != source_ops.epsilon(b, i):
                report.failures.append((name, f"phi/eps swap at {i}"))
            down = source_ops.f(b, i)
            up = target_ops.e(image, i)
            if (down is None) != (up is None):
                report.failures.append((name, f"lowering nullity at {i}"))
            elif down is not None and target_ops.key(mapping(down)) != target_ops.key(up):
                report.failures.append((name, f"lowering transport at {i}"))
            down = target_ops.f(image, i)
            up = source_ops.e(b, i)
            if (down is None) != (up is None):
                report.failures.append((name, f"raising nullity at {i}"))
            elif up is not None and target_ops.key(mapping(up)) != target_ops.key(down):
                report.failures.append((name, f"raising transport at {i}"))
    return report
