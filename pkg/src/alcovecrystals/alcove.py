"""The alcove model: crystal structures on admissible sets of foldings.

An element is a set of positions in a chain (a finite chain for the highest
weight crystals, a window of the infinite chain for their direct limit).  The
same signature machinery drives all four flavours:

* finite primal chains model the highest weight crystal,
* finite dual (reversed) chains model its contragredient dual,
* primal windows model the direct limit from below,
* dual windows model the dual limit.

Operators locate a letter in the reduced plus/minus word of the folded chain
and move a folding there; statistics and weights come from affine reflections.
A second, independent formulation of the same operators through a piecewise
linear profile is provided for cross-checking (``profile_f`` / ``profile_e``).

Set ``CHECKED = False`` to skip the admissibility assertions after each
operator application.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .chains import (
    InfChainWindow,
    LambdaChain,
    concat,
    dual_chain,
    lex_chain,
    window,
)
from .rootsys import Root, RootSystem, pairing, root_string, weight_neg

__all__ = [
    "AlcoveElement",
    "CHECKED",
    "element",
    "element_from_pairs",
    "element_to_json",
    "e_op",
    "epsilon",
    "f_op",
    "folded_roots",
    "i_signature",
    "include_Sin",
    "is_admissible",
    "minimal_projection",
    "mirror",
    "phi",
    "profile_e",
    "profile_f",
    "project_Spr",
    "reduce_signature",
    "render_element",
    "shift_S",
    "weight",
]

CHECKED = True


@dataclass(frozen=True)
class AlcoveElement:
    """A set of folding positions (0-based, strictly increasing) in a chain."""

    chain: LambdaChain | InfChainWindow
    positions: tuple[int, ...]

    @property
    def rs(self) -> RootSystem:
        return self.chain.rs

    @property
    def is_dual(self) -> bool:
        return self.chain.dual

    @property
    def is_window(self) -> bool:
        return self.chain.is_window

    def pairs(self) -> tuple[tuple[Root, int], ...]:
        """The foldings as (root, level) pairs in chain order."""
        ent = self.chain.entries
        return tuple((ent[p].root, ent[p].level) for p in self.positions)

    def __repr__(self) -> str:
        return render_element(self)


def render_element(el: AlcoveElement) -> str:
    """Text form listing the foldings in chain order, e.g. ``((α1, -1))``."""
    inner = ", ".join(f"({root_string(r)}, {lvl})" for r, lvl in el.pairs())
    return f"({inner})"


# ---------------------------------------------------------------------------
# construction and window canonicalization


def _deepest_block(el: AlcoveElement) -> int:
    """Index of the farthest rho-chain block containing a folding (0 if none)."""
    rho = el.rs.rho
    worst = 0
    for root, lvl in el.pairs():
        step = pairing(rho, root)
        depth = -lvl if not el.is_dual else lvl
        worst = max(worst, -(-depth // step))  # ceil for positive ints
    return worst


def _canonical(el: AlcoveElement) -> AlcoveElement:
    """Renormalize a window element to its canonical number of copies.

    The canonical window keeps one fresh block beyond the deepest folding so
    every operator sees the letters it needs.  Finite-chain elements are
    returned unchanged.
    """
    if not el.is_window:
        return el
    w: InfChainWindow = el.chain
    wanted = max(1, _deepest_block(el) + 1)
    if wanted == w.copies:
        return el
    fresh = window(el.rs, wanted, dual=w.dual)
    if w.dual:
        positions = el.positions  # dual windows grow by appending
    else:
        block = len(lex_chain(el.rs, el.rs.rho))
        shift = block * (wanted - w.copies)
        positions = tuple(p + shift for p in el.positions)
    return AlcoveElement(fresh, positions)


def element(chain, positions) -> AlcoveElement:
    """Build an element over ``chain``, validating and normalizing positions.

    Positions must be distinct 0-based indices into the chain; window elements
    are renormalized to the canonical window.
    """
    pos = tuple(sorted(int(p) for p in positions))
    if len(set(pos)) != len(pos):
        raise ValueError(f"duplicate positions in {positions}")
    if pos and (pos[0] < 0 or pos[-1] >= len(chain.entries)):
        raise ValueError(f"position out of range for a chain of length {len(chain.entries)}")
    return _canonical(AlcoveElement(chain, pos))


def element_from_pairs(chain, pairs) -> AlcoveElement:
    """Build an element from (root coefficients, level) pairs."""
    wanted = [(tuple(c), int(lvl)) for c, lvl in pairs]
    index = {
        (e.root.coeffs, e.level): i for i, e in enumerate(chain.entries)
    }
    positions = []
    for key in wanted:
        if key not in index:
            raise ValueError(f"{key} does not occur in the chain")
        positions.append(index[key])
    return element(chain, positions)


# ---------------------------------------------------------------------------
# admissibility, folding products


def is_admissible(el: AlcoveElement) -> bool:
    """Whether the folding positions form a chain of Bruhat covers.

    Primal elements are read left to right, dual elements right to left.
    """
    rs = el.rs
    entries = el.chain.entries
    order = reversed(el.positions) if el.is_dual else el.positions
    w = rs.identity_element()
    for p in order:
        root = entries[p].root
        if not rs.is_cover(w, root):
            return False
        w = w * rs.reflection(root)
    return True


def _tau(el: AlcoveElement):
    """Product of the folding reflections in ascending position order."""
    rs = el.rs
    entries = el.chain.entries
    w = rs.identity_element()
    for p in el.positions:
        w = w * rs.reflection(entries[p].root)
    return w


def _iota_dual(el: AlcoveElement):
    """Product in descending position order (the dual walk endpoint)."""
    rs = el.rs
    entries = el.chain.entries
    w = rs.identity_element()
    for p in reversed(el.positions):
        w = w * rs.reflection(entries[p].root)
    return w


def folded_roots(el: AlcoveElement) -> tuple[tuple[int, ...], ...]:
    """Root coordinates of the folded chain, one tuple per chain position.

    At each position the accumulated product of folding reflections is applied
    to the chain root; primal elements accumulate left to right, dual elements
    right to left, in both cases excluding the position itself.
    """
    rs = el.rs
    entries = el.chain.entries
    jset = set(el.positions)
    out: list[tuple[int, ...]] = [None] * len(entries)  # type: ignore[list-item]
    w = rs.identity_element()
    rng = range(len(entries) - 1, -1, -1) if el.is_dual else range(len(entries))
    for ind in rng:
        root = entries[ind].root
        out[ind] = w.apply_root_coeffs(root.coeffs)
        if ind in jset:
            w = w * rs.reflection(root)
    return tuple(out)


# ---------------------------------------------------------------------------
# signatures


def i_signature(el: AlcoveElement, i: int) -> tuple[tuple[int, int], ...]:
    """The plus/minus word for direction ``i``: (position, sign) pairs.

    Letters sit at unfolded positions where the folded chain passes through
    the i-th simple root (either sign); the dual convention flips signs.
    """
    el = _canonical(el)
    rs = el.rs
    target = rs.simple_root(i).coeffs
    negated = tuple(-c for c in target)
    jset = set(el.positions)
    word = []
    for ind, coeffs in enumerate(folded_roots(el)):
        if coeffs == target:
            sign = 1
        elif coeffs == negated:
            sign = -1
        else:
            continue
        if ind in jset:
            continue
        word.append((ind, -sign if el.is_dual else sign))
    return tuple(word)


def reduce_signature(word) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Cancel minus-then-plus pairs; return surviving plus and minus positions."""
    pluses: list[int] = []
    minus_stack: list[int] = []
    for pos, sign in word:
        if sign < 0:
            minus_stack.append(pos)
        elif minus_stack:
            minus_stack.pop()
        else:
            pluses.append(pos)
    return tuple(pluses), tuple(minus_stack)


def _all_i_positions(el: AlcoveElement, i: int) -> list[int]:
    """Chain positions whose folded root is plus or minus the i-th simple root,
    foldings included."""
    target = el.rs.simple_root(i).coeffs
    negated = tuple(-c for c in target)
    return [
        ind
        for ind, coeffs in enumerate(folded_roots(el))
        if coeffs == target or coeffs == negated
    ]


def _finish(el: AlcoveElement, new_positions) -> AlcoveElement:
    out = _canonical(AlcoveElement(el.chain, tuple(sorted(new_positions))))
    if CHECKED:
        assert is_admissible(out), f"operator produced an inadmissible set {out!r}"
    return out


# ---------------------------------------------------------------------------
# crystal operators


def f_op(el: AlcoveElement, i: int) -> AlcoveElement | None:
    """Lowering operator in direction ``i`` (1-based), or None."""
    el = _canonical(el)
    rs = el.rs
    pluses, _ = reduce_signature(i_signature(el, i))
    jset = set(el.positions)
    if pluses:
        a = pluses[-1]
        tail = [j for j in _all_i_positions(el, i) if j in jset and j > a]
        new = jset | {a}
        if tail:
            new.discard(min(tail))
        return _finish(el, new)
    if not el.is_dual:
        if el.is_window:
            raise AssertionError("the limit model always admits a lowering")
        return None
    # dual boundary: drop the first folding in this direction when the dual
    # walk endpoint points away from the i-th wall
    v = _iota_dual(el).apply_weight(rs.rho)
    if pairing(v, rs.simple_root(i)) < 0:
        mine = [j for j in _all_i_positions(el, i) if j in jset]
        return _finish(el, jset - {min(mine)})
    return None


def e_op(el: AlcoveElement, i: int) -> AlcoveElement | None:
    """Raising operator in direction ``i`` (1-based), or None."""
    el = _canonical(el)
    rs = el.rs
    _, minuses = reduce_signature(i_signature(el, i))
    jset = set(el.positions)
    if minuses:
        a = minuses[0]
        head = [j for j in _all_i_positions(el, i) if j in jset and j < a]
        new = jset | {a}
        if head:
            new.discard(max(head))
        return _finish(el, new)
    w = _tau(el) if not el.is_dual else _iota_dual(el) * _tau(el)
    if pairing(w.apply_weight(rs.rho), rs.simple_root(i)) < 0:
        mine = [j for j in _all_i_positions(el, i) if j in jset]
        return _finish(el, jset - {max(mine)})
    return None


# ---------------------------------------------------------------------------
# weights and statistics


def weight(el: AlcoveElement):
    """The weight of an element, in fundamental-weight coordinates."""
    rs = el.rs
    entries = el.chain.entries
    lam = el.chain.weight_for_ops()
    if not el.is_dual:
        v = weight_neg(lam)
        for p in reversed(el.positions):
            e = entries[p]
            v = rs.affine_reflect(e.root, -e.level, v)
        return weight_neg(v)
    v = lam
    for p in reversed(el.positions):
        e = entries[p]
        v = rs.affine_reflect(e.root, e.level, v)
    return weight_neg(_iota_dual(el).apply_weight(v))


def epsilon(el: AlcoveElement, i: int) -> int:
    """How many times the raising operator applies."""
    if el.is_window and el.is_dual:
        return phi(el, i) - pairing(weight(el), el.rs.simple_root(i))
    count = 0
    cur = e_op(el, i)
    while cur is not None:
        count += 1
        cur = e_op(cur, i)
    return count


def phi(el: AlcoveElement, i: int) -> int:
    """How many times the lowering operator applies; in the limit model it is
    defined through the weight identity and may be negative."""
    if el.is_window and not el.is_dual:
        return epsilon(el, i) + pairing(weight(el), el.rs.simple_root(i))
    count = 0
    cur = f_op(el, i)
    while cur is not None:
        count += 1
        cur = f_op(cur, i)
    return count


# ---------------------------------------------------------------------------
# shifts between the finite models and the limit


def shift_S(el: AlcoveElement, mu) -> AlcoveElement | None:
    """Push an element across a chain concatenation by a dominant weight.

    The foldings keep their roots, levels grow by the pairing with ``mu``, and
    positions move past the prepended chain.  Returns None if the image fails
    the admissibility walk.
    """
    if el.is_window or el.is_dual:
        raise ValueError("shift_S expects an element over a finite primal chain")
    mu = tuple(mu)
    rs = el.rs
    if any((not isinstance(c, int)) or c < 0 for c in mu):
        raise ValueError(f"weight {mu} is not dominant integral")
    head = lex_chain(rs, mu)
    combined = concat(head, el.chain)
    moved = AlcoveElement(combined, tuple(p + len(head) for p in el.positions))
    return moved if is_admissible(moved) else None


def include_Sin(el: AlcoveElement, k: int) -> AlcoveElement:
    """Reinterpret an element over the k-fold rho chain inside the limit model.

    Positions carry over verbatim (the window repeats the same root sequence);
    each level drops by ``k <rho, zeta^vee>``.
    """
    if el.is_window or el.is_dual:
        raise ValueError("include_Sin expects an element over a finite primal chain")
    rs = el.rs
    krho = tuple(k * c for c in rs.rho)
    if el.chain.lam != krho:
        raise ValueError("include_Sin needs an element over the k-fold rho chain")
    return element(window(rs, k), el.positions)


def project_Spr(el: AlcoveElement, k: int) -> AlcoveElement | None:
    """Project a limit element onto the k-fold rho chain, or None.

    Levels grow by ``k <rho, zeta^vee>``; the image exists when every folding
    lands inside the chain (level within its occurrence range).
    """
    if not el.is_window or el.is_dual:
        raise ValueError("project_Spr expects an element of the primal limit model")
    rs = el.rs
    if k < 0:
        raise ValueError("k must be nonnegative")
    block = len(lex_chain(rs, rs.rho))
    copies = el.chain.copies
    target = lex_chain(rs, tuple(k * c for c in rs.rho))
    positions = []
    for p in el.positions:
        from_right = copies - p // block
        if from_right > k:
            return None
        q = (k - from_right) * block + p % block
        positions.append(q)
        if CHECKED:
            src = el.chain.entries[p]
            dst = target.entries[q]
            assert dst.root == src.root
            assert dst.level == src.level + k * pairing(rs.rho, src.root)
    out = AlcoveElement(target, tuple(positions))
    if not is_admissible(out):
        return None
    return out


def minimal_projection(el: AlcoveElement) -> tuple[int, AlcoveElement]:
    """The smallest k whose projection exists, with its image.

    The empty element projects at k = 0 onto the empty chain.
    """
    el = _canonical(el)
    rho = el.rs.rho
    k = 0
    for root, lvl in el.pairs():
        step = pairing(rho, root)
        k = max(k, (-lvl + step - 1) // step)
    while True:
        image = project_Spr(el, k)
        if image is not None:
            return k, image
        k += 1


def mirror(el: AlcoveElement) -> AlcoveElement:
    """The canonical reinterpretation between the primal and dual models.

    Foldings keep their roots; finite levels reflect within their occurrence
    range, window levels negate.  This map is a dual isomorphism of crystals
    (it swaps the raising and lowering operators).
    """
    if el.is_window:
        target = window(el.rs, el.chain.copies, dual=not el.is_dual)
        size = len(el.chain.entries)
        return element(target, tuple(size - 1 - p for p in el.positions))
    target = dual_chain(el.chain)
    size = len(el.chain.entries)
    return element(target, tuple(size - 1 - p for p in el.positions))


# ---------------------------------------------------------------------------
# independent operator formulation through a piecewise linear profile


def _profile_data(el: AlcoveElement, i: int):
    """Half-step heights of the profile for direction ``i``.

    Returns (positions, heights at marked half-points, height past the end,
    running maximum of the whole profile).
    """
    rs = el.rs
    jset = set(el.positions)
    gam = folded_roots(el)
    target = rs.simple_root(i).coeffs
    spots = _all_i_positions(el, i)
    g = Fraction(-1, 2)
    peak = g
    heights = []
    prev_pair = None
    for ind in spots:
        sgn = 1 if gam[ind] == target else -1
        mark = -1 if ind in jset else 1
        pair = (sgn, mark * sgn)
        assert pair != (-1, 1), "profile slopes violate the structure conditions"
        if prev_pair == (1, 1):
            assert pair != (-1, -1), "profile slopes violate the structure conditions"
        prev_pair = pair
        g += Fraction(sgn, 2)
        heights.append(g)
        peak = max(peak, g)
        g += Fraction(mark * sgn, 2)
        peak = max(peak, g)
    gamma_inf = _tau(el).apply_weight(rs.rho)
    last = pairing(gamma_inf, rs.simple_root(i))
    assert last != 0
    sgn_inf = 1 if last > 0 else -1
    if prev_pair == (1, 1):
        assert sgn_inf == 1, "profile slopes violate the structure conditions"
    h_inf = g + Fraction(sgn_inf, 2)
    peak = max(peak, h_inf)
    return spots, heights, h_inf, peak


def profile_f(el: AlcoveElement, i: int) -> AlcoveElement | None:
    """Lowering operator computed from the piecewise linear profile.

    Independent of the signature route; the two must agree everywhere.
    Dual-model elements are transported through :func:`mirror`.
    """
    if el.is_dual:
        out = profile_e(mirror(el), i)
        return None if out is None else mirror(out)
    el = _canonical(el)
    spots, heights, h_inf, peak = _profile_data(el, i)
    if peak <= 0:
        return None
    jset = set(el.positions)
    candidates = [pos for pos, h in zip(spots, heights) if h == peak]
    if candidates:
        mu = candidates[0]
        idx = spots.index(mu)
        assert mu in jset
        assert idx > 0, "a maximal half-point needs a predecessor"
        k = spots[idx - 1]
        new = (jset - {mu}) | {k}
    else:
        assert h_inf == peak
        assert spots, "an unbounded profile needs at least one marked point"
        k = spots[-1]
        new = jset | {k}
    assert k not in jset
    return _finish(el, new)


def profile_e(el: AlcoveElement, i: int) -> AlcoveElement | None:
    """Raising operator computed from the piecewise linear profile."""
    if el.is_dual:
        out = profile_f(mirror(el), i)
        return None if out is None else mirror(out)
    el = _canonical(el)
    spots, heights, h_inf, peak = _profile_data(el, i)
    if peak <= h_inf:
        return None
    jset = set(el.positions)
    candidates = [pos for pos, h in zip(spots, heights) if h == peak]
    assert candidates, "a strict interior maximum must be marked"
    k = candidates[-1]
    assert k in jset
    idx = spots.index(k)
    if idx + 1 < len(spots):
        mu = spots[idx + 1]
        assert mu not in jset
        new = (jset - {k}) | {mu}
    else:
        new = jset - {k}
    return _finish(el, new)


# ---------------------------------------------------------------------------
# serialization


def _model_name(el: AlcoveElement) -> str:
    if el.is_window:
        return "Al-dual(infinity)" if el.is_dual else "Al(infinity)"
    return "Al-dual(lambda)" if el.is_dual else "Al(lambda)"


def element_to_json(el: AlcoveElement) -> dict:
    entries = el.chain.entries
    return {
        "model": _model_name(el),
        "chain": [
            {"root": list(e.root.coeffs), "level": e.level} for e in entries
        ],
        "positions": [
            {
                "root": list(entries[p].root.coeffs),
                "level": entries[p].level,
                "index": p,
            }
            for p in el.positions
        ],
    }
