"""Piecewise linear path crystals over exact rational arithmetic.

Three kinds of path live here, all stored as (velocity, duration) segments in
fundamental-weight coordinates:

* ``finite`` paths on [0, 1], the classical model generated by a straight
  segment to a dominant weight;
* ``extended`` paths on [0, infinity), which end in an implicit ray of
  velocity rho (only the part before the ray is stored);
* ``co-extended`` paths on (-infinity, 0], which begin with an implicit
  rho-velocity ray arriving from far in the negative direction.

Raising and lowering reflect a window of the path where the pairing with the
chosen simple coroot reaches its extreme value.  The co-extended kind gets its
operators by transport through :func:`dualize`, which also couples the two
unbounded kinds to each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .rootsys import RootSystem, pairing

__all__ = [
    "PLPath",
    "concat",
    "dualize",
    "e_op",
    "endpoint",
    "epsilon",
    "evaluate",
    "f_op",
    "h_extremum",
    "path_to_json",
    "phi",
    "pi_infinity",
    "render_path",
    "straight_path",
    "weight",
    "xi_infinity",
]

KINDS = ("finite", "extended", "co-extended")


def _rho_velocity(rank: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(1) for _ in range(rank))


def _normalize(rs, kind, segments):
    segs = []
    for velocity, duration in segments:
        d = Fraction(duration)
        if d < 0:
            raise ValueError("segment durations must be nonnegative")
        if d == 0:
            continue
        v = tuple(Fraction(c) for c in velocity)
        if len(v) != rs.rank:
            raise ValueError("velocity has the wrong rank")
        if segs and segs[-1][0] == v:
            segs[-1] = (v, segs[-1][1] + d)
        else:
            segs.append((v, d))
    rho = _rho_velocity(rs.rank)
    if kind == "extended":
        while segs and segs[-1][0] == rho:
            segs.pop()
    elif kind == "co-extended":
        while segs and segs[0][0] == rho:
            segs.pop(0)
    elif kind == "finite":
        total = sum((d for _, d in segs), Fraction(0))
        if total != 1:
            raise ValueError(f"a finite path must have total duration 1, got {total}")
    else:
        raise ValueError(f"unknown path kind {kind!r}")
    return tuple(segs)


@dataclass(frozen=True)
class PLPath:
    """A piecewise linear path; equality compares the stored canonical form."""

    rs: RootSystem
    kind: str
    segments: tuple[tuple[tuple[Fraction, ...], Fraction], ...]

    def __post_init__(self):
        object.__setattr__(
            self, "segments", _normalize(self.rs, self.kind, self.segments)
        )

    @property
    def duration(self) -> Fraction:
        """Total duration of the explicit segments."""
        return sum((d for _, d in self.segments), Fraction(0))

    def __repr__(self) -> str:
        return render_path(self)


def straight_path(rs: RootSystem, lam) -> PLPath:
    """The path moving straight from the origin to ``lam`` in unit time."""
    v = tuple(Fraction(c) for c in lam)
    return PLPath(rs, "finite", ((v, Fraction(1)),))


def pi_infinity(rs: RootSystem) -> PLPath:
    """The extended path that is nothing but the rho-velocity ray."""
    return PLPath(rs, "extended", ())


def xi_infinity(rs: RootSystem) -> PLPath:
    """The co-extended path that is nothing but the incoming rho ray."""
    return PLPath(rs, "co-extended", ())


# ---------------------------------------------------------------------------
# evaluation


def _start_point(path: PLPath):
    if path.kind == "co-extended":
        t = -path.duration
        return tuple(t * c for c in _rho_velocity(path.rs.rank))
    return tuple(Fraction(0) for _ in range(path.rs.rank))


def endpoint(path: PLPath) -> tuple[Fraction, ...]:
    """Value at the end of the explicit part (t=1, the ray start, or t=0)."""
    point = list(_start_point(path))
    for v, d in path.segments:
        for k in range(len(point)):
            point[k] += v[k] * d
    return tuple(point)


def evaluate(path: PLPath, t) -> tuple[Fraction, ...]:
    """The point reached at time ``t`` (exact)."""
    t = Fraction(t)
    rank = path.rs.rank
    rho = _rho_velocity(rank)
    if path.kind == "finite":
        if not 0 <= t <= 1:
            raise ValueError("a finite path is defined on [0, 1]")
        start, rest = Fraction(0), t
    elif path.kind == "extended":
        if t < 0:
            raise ValueError("an extended path is defined on [0, infinity)")
        if t > path.duration:
            base = endpoint(path)
            return tuple(b + (t - path.duration) * r for b, r in zip(base, rho))
        start, rest = Fraction(0), t
    else:
        if t > 0:
            raise ValueError("a co-extended path is defined on (-infinity, 0]")
        anchor = -path.duration
        if t <= anchor:
            return tuple(t * r for r in rho)
        start, rest = anchor, t - anchor
    point = list(_start_point(path))
    for v, d in path.segments:
        step = min(d, rest)
        for k in range(rank):
            point[k] += v[k] * step
        rest -= step
        if rest == 0:
            break
    return tuple(point)


# ---------------------------------------------------------------------------
# the height profile along a simple coroot


def _breakpoints(path: PLPath, i: int):
    """(time, height) pairs at the ends of the explicit linear pieces."""
    rs = path.rs
    alpha = rs.simple_root(i)
    t = -path.duration if path.kind == "co-extended" else Fraction(0)
    h = pairing(_start_point(path), alpha)
    out = [(t, h)]
    for v, d in path.segments:
        t = t + d
        h = h + pairing(v, alpha) * d
        out.append((t, h))
    return out


def h_extremum(path: PLPath, i: int) -> tuple[Fraction, Fraction]:
    """Extreme height along direction ``i`` with its first attainment time.

    Minimum for the finite and extended kinds, maximum for the co-extended
    kind (where the incoming ray makes the height unbounded below).
    """
    bps = _breakpoints(path, i)
    if path.kind == "co-extended":
        best = max(h for _, h in bps)
    else:
        best = min(h for _, h in bps)
    for t, h in bps:
        if h == best:
            return best, t
    raise AssertionError("unreachable")


def _last_attainment(bps, m):
    out = None
    for t, h in bps:
        if h == m:
            out = t
    assert out is not None
    return out


def _first_down_crossing(bps, level):
    """Smallest time after which the height first falls below ``level``."""
    for (ta, ha), (tb, hb) in zip(bps, bps[1:]):
        if hb < level:
            assert ha >= level
            return ta + (tb - ta) * (ha - level) / (ha - hb)
    raise AssertionError("the height never falls below the requested level")


def _last_up_crossing(bps, level):
    """Smallest time from which the height stays at or above ``level``."""
    assert bps[-1][1] >= level
    for k in range(len(bps) - 2, -1, -1):
        if bps[k][1] < level:
            ta, ha = bps[k]
            tb, hb = bps[k + 1]
            return ta + (tb - ta) * (level - ha) / (hb - ha)
    raise AssertionError("the height starts at or above the requested level")


# ---------------------------------------------------------------------------
# splitting and reflecting segment lists


def _split_at(segments, t):
    """Split a segment tuple at offset ``t`` from its start, exactly."""
    before, after = [], []
    rest = t
    for v, d in segments:
        if rest <= 0:
            after.append((v, d))
        elif rest >= d:
            before.append((v, d))
            rest -= d
        else:
            before.append((v, rest))
            after.append((v, d - rest))
            rest = Fraction(0)
    return before, after


def _reflect_segments(rs, i, segments):
    alpha = rs.simple_root(i)
    return [(tuple(rs.reflect(alpha, v)), d) for v, d in segments]


def _surgery(path: PLPath, i: int, lo, hi, segments=None):
    """Reflect the window [lo, hi] of the path (times in domain coordinates)."""
    segs = path.segments if segments is None else segments
    origin = -path.duration if path.kind == "co-extended" else Fraction(0)
    head, rest = _split_at(segs, lo - origin)
    mid, tail = _split_at(rest, hi - lo)
    out = head + _reflect_segments(path.rs, i, mid) + tail
    return PLPath(path.rs, path.kind, tuple(out))


# ---------------------------------------------------------------------------
# crystal operators


def _require_integral(m, what):
    if m.denominator != 1:
        raise ValueError(f"{what} is not an integer; not a crystal path")
    return int(m)


def e_op(path: PLPath, i: int) -> PLPath | None:
    """Raising operator, or None when the height never dips to -1."""
    if path.kind == "co-extended":
        out = f_op(dualize(path), i)
        return None if out is None else dualize(out)
    bps = _breakpoints(path, i)
    m = min(h for _, h in bps)
    _require_integral(m, "the minimal height")
    if m > -1:
        return None
    t1 = next(t for t, h in bps if h == m)
    t0 = _first_down_crossing(bps, m + 1)
    assert t0 <= t1
    return _surgery(path, i, t0, t1)


def f_op(path: PLPath, i: int) -> PLPath | None:
    """Lowering operator; never None on the unbounded kinds."""
    if path.kind == "co-extended":
        out = e_op(dualize(path), i)
        return None if out is None else dualize(out)
    bps = _breakpoints(path, i)
    m = min(h for _, h in bps)
    _require_integral(m, "the minimal height")
    end = bps[-1][1]
    segments = path.segments
    if path.kind == "finite":
        if end - m < 1:
            return None
    elif end - m < 1:
        # pull the needed stretch of the implicit ray into the explicit part
        extra = m + 1 - end
        rho = _rho_velocity(path.rs.rank)
        segments = segments + ((rho, extra),)
        bps = bps + [(bps[-1][0] + extra, m + 1)]
    t0 = _last_attainment(bps, m)
    t1 = _last_up_crossing(bps, m + 1)
    assert t0 <= t1
    return _surgery(path, i, t0, t1, segments=segments)


# ---------------------------------------------------------------------------
# statistics


def weight(path: PLPath) -> tuple[int, ...]:
    """The weight: where the path ends up, relative to its implicit rays."""
    end = endpoint(path)
    if path.kind == "extended":
        t = path.duration
        end = tuple(c - t for c in end)
    elif path.kind == "co-extended":
        end = tuple(-c for c in end)
    return tuple(_require_integral(Fraction(c), "a weight coordinate") for c in end)


def epsilon(path: PLPath, i: int) -> int:
    if path.kind == "co-extended":
        m, _ = h_extremum(path, i)
        return _require_integral(m, "the maximal height")
    m, _ = h_extremum(path, i)
    return -_require_integral(m, "the minimal height")


def phi(path: PLPath, i: int) -> int:
    if path.kind == "finite":
        bps = _breakpoints(path, i)
        m = min(h for _, h in bps)
        return _require_integral(bps[-1][1] - m, "the height gap")
    return epsilon(path, i) + pairing(weight(path), path.rs.simple_root(i))


# ---------------------------------------------------------------------------
# structural maps


def dualize(path: PLPath) -> PLPath:
    """The contragredient path: an involution swapping raising and lowering.

    Finite paths run backwards from their endpoint (reversed segments with
    negated velocities); the two unbounded kinds swap into each other keeping
    velocities, so the implicit ray changes ends.
    """
    if path.kind == "finite":
        segs = tuple(
            (tuple(-c for c in v), d) for v, d in reversed(path.segments)
        )
        return PLPath(path.rs, "finite", segs)
    other = "co-extended" if path.kind == "extended" else "extended"
    return PLPath(path.rs, other, tuple(reversed(path.segments)))


def concat(first: PLPath, second: PLPath) -> PLPath:
    """Join two paths end to start.

    Two finite paths are each compressed into half the unit interval; a finite
    prefix to an extended path (or a finite suffix after a co-extended one)
    attaches without compression.  Other combinations have no meaning here.
    """
    if first.rs != second.rs:
        raise ValueError("paths live over different root systems")
    if first.kind == "finite" and second.kind == "finite":
        segs = [
            (tuple(2 * c for c in v), d / 2)
            for v, d in first.segments + second.segments
        ]
        return PLPath(first.rs, "finite", tuple(segs))
    if first.kind == "finite" and second.kind == "extended":
        return PLPath(first.rs, "extended", first.segments + second.segments)
    if first.kind == "co-extended" and second.kind == "finite":
        return PLPath(first.rs, "co-extended", first.segments + second.segments)
    raise ValueError(f"cannot concatenate {first.kind} with {second.kind}")


# ---------------------------------------------------------------------------
# rendering


def _fmt(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def render_path(path: PLPath) -> str:
    parts = [
        "(" + ", ".join(_fmt(c) for c in v) + ") for " + _fmt(d)
        for v, d in path.segments
    ]
    body = " then ".join(parts) if parts else "nothing"
    if path.kind == "extended":
        return f"extended: {body} then the rho ray"
    if path.kind == "co-extended":
        return f"co-extended: the rho ray then {body}"
    return f"finite: {body}"


def path_to_json(path: PLPath) -> dict:
    return {
        "kind": path.kind,
        "segments": [
            {"velocity": [_fmt(c) for c in v], "duration": _fmt(d)}
            for v, d in path.segments
        ],
    }
