"""Geometric ground truth for the trace formula.

Builds the standard piecewise-affine pair of selfmaps determined by two
endomorphisms (one wide interval plus evenly spaced labeled intervals per
circle, with small constant zones for the first map), enumerates its
isolated coincidence points with exact rational arithmetic, and sums
index times class word into a group-ring element that must agree with the
algebraic trace.

No floating point anywhere: coincidence and endpoint distinctions are
equality tests on rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .words import (
    Endomorphism,
    GroupRingElement,
    Letter,
    Word,
    _check_alphabet,
    _invert_letters,
    _reduce_letters,
)


@dataclass(frozen=True)
class LabeledInterval:
    """An open subinterval of a circle; label None means the map is constant
    (at the wedge point) there, otherwise the interval maps affinely onto the
    labeled circle."""

    circle: int
    lo: Fraction
    hi: Fraction
    label: Letter | None

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def slope(self) -> Fraction:
        if self.label is None:
            return Fraction(0)
        return Fraction(self.label.sign) / self.width

    def value_at(self, x: Fraction) -> Fraction:
        """Coordinate on the target circle (for labeled intervals)."""
        if self.label is None:
            return Fraction(0)
        if self.label.sign > 0:
            return (x - self.lo) / self.width
        return (self.hi - x) / self.width

    def intercept(self) -> Fraction:
        # value_at(x) == slope * x + intercept
        if self.label is None:
            return Fraction(0)
        if self.label.sign > 0:
            return -self.lo / self.width
        return self.hi / self.width


@dataclass(frozen=True)
class RegularMap:
    """Per circle: an ordered list of labeled intervals partitioning (0,1)."""

    intervals: tuple[tuple[LabeledInterval, ...], ...]

    def circle(self, a: int) -> tuple[LabeledInterval, ...]:
        return self.intervals[a]


@dataclass(frozen=True)
class RegularPair:
    alphabet: object
    f: RegularMap
    g: RegularMap
    epsilon: Fraction
    u_words: tuple[Word, ...]  # unreduced phi(a) a^-1 a
    v_words: tuple[Word, ...]  # unreduced a a^-1 psi(a) a^-1 a


@dataclass(frozen=True)
class CoincidencePoint:
    circle: int
    coordinate: Fraction
    index: int
    class_word: Word


def _padded_words(phi: Endomorphism, psi: Endomorphism) -> tuple[list[Word], list[Word]]:
    alphabet = phi.alphabet
    us, vs = [], []
    for a in range(len(alphabet)):
        ga = alphabet.gen(a)
        gai = alphabet.gen(a, -1)
        us.append(phi.images[a].concat(gai).concat(ga))
        vs.append(ga.concat(gai).concat(psi.images[a]).concat(gai).concat(ga))
    return us, vs


def epsilon_bound(phi: Endomorphism, psi: Endomorphism) -> Fraction:
    """Strict upper bound for valid epsilon: small enough for the constant
    zones and smaller than every interval of the second map, so that no
    breakpoint of g lands inside a constant zone of f away from 1/2."""
    us, vs = _padded_words(phi, psi)
    max_n = max(len(u) for u in us)
    min_gw = min(Fraction(1, 2 * (len(v) - 1)) for v in vs)
    return min(Fraction(1, 4 * max_n), min_gw)


def default_epsilon(phi: Endomorphism, psi: Endomorphism) -> Fraction:
    us, vs = _padded_words(phi, psi)
    max_n = max(len(u) for u in us)
    return min(
        Fraction(1, 8 * (max_n + 2)),
        min(Fraction(1, 4 * (len(v) - 1)) for v in vs),
    )


def build_regular_pair(
    phi: Endomorphism, psi: Endomorphism, epsilon: Fraction | None = None
) -> RegularPair:
    """The regular pair for the unreduced padded words u_a = phi(a)a^-1 a and
    v_a = a a^-1 psi(a) a^-1 a (never pre-reduced: v_a starts with a
    cancelling pair and begins and ends with a, which pins down the indices
    at the wedge point and at 1/2)."""
    _check_alphabet(phi.alphabet, psi.alphabet)
    us, vs = _padded_words(phi, psi)
    if epsilon is None:
        epsilon = default_epsilon(phi, psi)
    epsilon = Fraction(epsilon)
    bound = epsilon_bound(phi, psi)
    if not 0 < epsilon < bound:
        raise ValueError(f"epsilon {epsilon} outside (0, {bound})")

    half = Fraction(1, 2)
    one = Fraction(1)
    f_circles = []
    g_circles = []
    for a in range(len(phi.alphabet)):
        u = us[a].letters
        n = len(u)
        ivs = [LabeledInterval(a, Fraction(0), epsilon, None)]
        w = (half - 2 * epsilon) / (n - 1)
        for i, lt in enumerate(u[:-1]):
            lo = epsilon + i * w
            ivs.append(LabeledInterval(a, lo, lo + w, lt))
        ivs.append(LabeledInterval(a, half - epsilon, half + epsilon, None))
        ivs.append(LabeledInterval(a, half + epsilon, one - epsilon, u[-1]))
        ivs.append(LabeledInterval(a, one - epsilon, one, None))
        f_circles.append(tuple(ivs))

        v = vs[a].letters
        m = len(v)
        gvs = [LabeledInterval(a, Fraction(0), half, v[0])]
        gw = half / (m - 1)
        for j, lt in enumerate(v[1:]):
            lo = half + j * gw
            gvs.append(LabeledInterval(a, lo, lo + gw, lt))
        g_circles.append(tuple(gvs))

    return RegularPair(
        phi.alphabet,
        RegularMap(tuple(f_circles)),
        RegularMap(tuple(g_circles)),
        epsilon,
        tuple(us),
        tuple(vs),
    )


def _labeled_with_prefixes(circle_intervals):
    """(interval, prefix-letters) pairs for the labeled intervals of one
    circle; prefixes accumulate earlier non-trivial labels."""
    out = []
    prefix: tuple[Letter, ...] = ()
    for iv in circle_intervals:
        if iv.label is None:
            continue
        out.append((iv, prefix))
        prefix = prefix + (iv.label,)
    return out


def enumerate_coincidences(pair: RegularPair) -> list[CoincidencePoint]:
    """All isolated coincidence points with their indices and class words.

    The wedge point (coordinate 0) always appears first with index +1 and
    trivial class.  The constant zone of f around 1/2 carries a degenerate
    touch point of net index zero and is omitted.  Every other point is the
    unique solution of an affine equation inside an open overlap of a
    labeled f-interval and a labeled g-interval whose labels hit the same
    circle; its index is the sign of the slope difference.
    """
    alphabet = pair.alphabet
    points = [
        CoincidencePoint(0, Fraction(0), 1, Word(alphabet, ()))
    ]
    for a in range(len(alphabet)):
        f_items = _labeled_with_prefixes(pair.f.circle(a))
        g_items = _labeled_with_prefixes(pair.g.circle(a))
        found = []
        for fi, fprefix in f_items:
            for gi, gprefix in g_items:
                if fi.label.gen != gi.label.gen:
                    continue
                lo = max(fi.lo, gi.lo)
                hi = min(fi.hi, gi.hi)
                if lo >= hi:
                    continue
                sf, sg = fi.slope, gi.slope
                if sf == sg:
                    # parallel restrictions never coincide in this construction
                    if fi.intercept() == gi.intercept():
                        raise AssertionError("non-isolated coincidence segment")
                    continue
                x = (gi.intercept() - fi.intercept()) / (sf - sg)
                if not lo < x < hi:
                    continue
                index = 1 if sg > sf else -1
                if fi.label == gi.label:
                    cls = fprefix + _invert_letters(gprefix)
                else:
                    cls = fprefix + _invert_letters(gprefix + (gi.label,))
                found.append(
                    CoincidencePoint(
                        a, x, index, Word(alphabet, _reduce_letters(cls))
                    )
                )
        found.sort(key=lambda p: p.coordinate)
        points.extend(found)
    return points


def geometric_trace(pair: RegularPair) -> GroupRingElement:
    """Sum of index * class word over all coincidence points (representative
    level, collected over equal reduced words)."""
    out = GroupRingElement.zero(pair.alphabet)
    for pt in enumerate_coincidences(pair):
        out = out + GroupRingElement.from_word(pt.class_word, pt.index)
    return out


@dataclass(frozen=True)
class LemmaCheck:
    """One interval's predicted local trace from the half-circle lemmas."""

    circle: int
    half: str  # "top" (f-interval) or "bottom" (g-interval)
    interval: LabeledInterval
    predicted: GroupRingElement


def lemma_predictions(pair: RegularPair) -> list[LemmaCheck]:
    """Word-level local predictions: for each labeled f-interval in the top
    half, -(h_1..h_{i-1} d_{l_1} h_i); for each g-interval in the bottom half
    except the last, h_1..h_{n-1} (l_1..l_{j-1} d_{h_n} l_j)^-1; the last
    g-interval (re-entering the wedge zone) contributes nothing."""
    alphabet = pair.alphabet
    checks = []
    for a in range(len(alphabet)):
        u = pair.u_words[a].letters
        v = pair.v_words[a].letters
        f_labeled = [iv for iv in pair.f.circle(a) if iv.label is not None]
        g_ivs = pair.g.circle(a)

        l1 = v[0]
        prefix: tuple[Letter, ...] = ()
        for i, h in enumerate(u[:-1]):
            iv = f_labeled[i]
            if h == l1:
                pred = GroupRingElement(
                    alphabet, {Word(alphabet, prefix): -1}
                )
            elif h == l1.inverse():
                pred = GroupRingElement(
                    alphabet, {Word(alphabet, prefix + (h,)): 1}
                )
            else:
                pred = GroupRingElement.zero(alphabet)
            checks.append(LemmaCheck(a, "top", iv, pred))
            prefix = prefix + (h,)

        hword = u[:-1]
        hn = u[-1]
        lprefix: tuple[Letter, ...] = (v[0],)
        for j, l in enumerate(v[1:], start=1):
            iv = g_ivs[j]
            if j == len(v) - 1:
                pred = GroupRingElement.zero(alphabet)
            elif l == hn:
                pred = GroupRingElement(
                    alphabet, {Word(alphabet, hword + _invert_letters(lprefix)): 1}
                )
            elif l == hn.inverse():
                pred = GroupRingElement(
                    alphabet,
                    {Word(alphabet, hword + _invert_letters(lprefix + (l,))): -1},
                )
            else:
                pred = GroupRingElement.zero(alphabet)
            checks.append(LemmaCheck(a, "bottom", iv, pred))
            lprefix = lprefix + (l,)
    return checks


def interval_contribution(
    pair: RegularPair, iv: LabeledInterval, points: list[CoincidencePoint]
) -> GroupRingElement:
    """Actual local trace: sum of index * class over the points inside iv."""
    out = GroupRingElement.zero(pair.alphabet)
    for pt in points:
        if pt.circle == iv.circle and iv.lo < pt.coordinate < iv.hi:
            out = out + GroupRingElement.from_word(pt.class_word, pt.index)
    return out


def dump_intervals(pair: RegularPair) -> str:
    """Line-oriented interval tables: map circle lo hi label."""
    names = pair.alphabet.names
    lines = []
    for which, rmap in (("f", pair.f), ("g", pair.g)):
        for circle in rmap.intervals:
            for iv in circle:
                if iv.label is None:
                    label = "1"
                else:
                    label = str(Word(pair.alphabet, (iv.label,)))
                lines.append(
                    f"{which} {names[iv.circle]} {iv.lo} {iv.hi} {label}"
                )
    return "\n".join(lines)
