"""The coincidence Reidemeister trace formula and Nielsen-number bounds.

raw_trace returns a representative-level group-ring element; class-level
canonicalization (merging twisted-conjugate terms) happens only in
reduce_trace, since the projection to Reidemeister classes has no canonical
representatives.
"""

from __future__ import annotations

from dataclasses import dataclass

from .conjugacy import DecideConfig, DecisionOutcome, decide
from .fox import delta_derivative, fox_derivative
from .words import Endomorphism, GroupRingElement, Word, _check_alphabet


def raw_trace(phi: Endomorphism, psi: Endomorphism) -> GroupRingElement:
    """1 - sum_a [ d_a phi(a) + phi(a)psi(a)^-1 - phi(a)a^-1 i(d_a psi(a)) ]."""
    _check_alphabet(phi.alphabet, psi.alphabet)
    alphabet = phi.alphabet
    out = GroupRingElement.one(alphabet)
    for a in range(len(alphabet)):
        gen = alphabet.gen(a)
        out = out - fox_derivative(a, phi.images[a])
        out = out - GroupRingElement.from_word(phi.images[a] * psi.images[a].inverse())
        out = out + fox_derivative(a, psi.images[a]).involution().left_mul(
            phi.images[a] * gen.inverse()
        )
    return out


def raw_trace_delta(phi: Endomorphism, psi: Endomorphism) -> GroupRingElement:
    """The trace via the reversed derivative:
    1 - sum_a [ d_a phi(a) - D_a psi(a) + phi(a)psi(a)^-1 ].

    Equals raw_trace class by class (each D_a psi(a) term differs from the
    corresponding phi(a)a^-1 i(d_a psi(a)) term by the twisting witness a),
    but not term by term as a group-ring element.
    """
    _check_alphabet(phi.alphabet, psi.alphabet)
    alphabet = phi.alphabet
    out = GroupRingElement.one(alphabet)
    for a in range(len(alphabet)):
        out = out - fox_derivative(a, phi.images[a])
        out = out + delta_derivative(a, psi.images[a])
        out = out - GroupRingElement.from_word(phi.images[a] * psi.images[a].inverse())
    return out


def fixed_point_raw(phi: Endomorphism) -> GroupRingElement:
    """The fixed-point specialization: 1 - sum_a d_a phi(a)."""
    out = GroupRingElement.one(phi.alphabet)
    for a in range(len(phi.alphabet)):
        out = out - fox_derivative(a, phi.images[a])
    return out


@dataclass(frozen=True)
class ReidemeisterTrace:
    """Class terms (coefficient, shortlex-least representative).

    merge_status is "resolved" when all representatives are pairwise
    certified distinct, else "partially_resolved"; unknown_pairs indexes
    term pairs whose relation could not be settled.
    """

    terms: tuple[tuple[int, Word], ...]
    merge_status: str
    unknown_pairs: tuple[tuple[int, int], ...] = ()

    @property
    def resolved(self) -> bool:
        return self.merge_status == "resolved"

    def __str__(self) -> str:
        if not self.terms:
            return f"0  ({self.merge_status})"
        body = " ".join(f"{c:+d}·[{w}]" for c, w in self.terms)
        return f"{body}  ({self.merge_status})"

    def coefficients(self) -> list[int]:
        return sorted(c for c, _ in self.terms)


def reduce_trace(
    raw: GroupRingElement,
    phi: Endomorphism,
    psi: Endomorphism,
    config: DecideConfig | None = None,
) -> ReidemeisterTrace:
    """Partition the terms of raw by twisted conjugacy and sum coefficients.

    Zero-sum classes are dropped.  Pairs the decision procedure cannot settle
    are left unmerged and reported via unknown_pairs.
    """
    config = config or DecideConfig()
    cache: dict[tuple[Word, Word], DecisionOutcome] = {}

    def decided(a: Word, b: Word) -> DecisionOutcome:
        key = (a, b)
        if key not in cache:
            cache[key] = decide(a, b, phi, psi, config)
        return cache[key]

    # groups: [representative words (shortlex-least first), coefficient]
    groups: list[tuple[list[Word], int]] = []
    for coeff, word in raw.sorted_terms():
        matches = [
            gi for gi, (members, _) in enumerate(groups)
            if decided(word, members[0]).is_equivalent
        ]
        if not matches:
            groups.append(([word], coeff))
            continue
        # merge into the first equivalent group; an Equivalent link to more
        # than one group proves those groups coincide, so fold them together
        first = matches[0]
        groups[first][0].append(word)
        groups[first] = (groups[first][0], groups[first][1] + coeff)
        for gi in reversed(matches[1:]):
            members, c = groups.pop(gi)
            groups[first] = (groups[first][0] + members, groups[first][1] + c)

    groups = [(members, c) for members, c in groups if c != 0]
    reps = [min(members, key=Word.shortlex_key) for members, _ in groups]
    terms = tuple(
        sorted(
            ((c, rep) for (members, c), rep in zip(groups, reps)),
            key=lambda t: t[1].shortlex_key(),
        )
    )

    unknown_pairs = []
    for i in range(len(terms)):
        for j in range(i + 1, len(terms)):
            if decided(terms[i][1], terms[j][1]).is_unknown:
                unknown_pairs.append((i, j))
    status = "resolved" if not unknown_pairs else "partially_resolved"
    return ReidemeisterTrace(terms, status, tuple(unknown_pairs))


def nielsen_bound(t: ReidemeisterTrace) -> tuple[int, int]:
    """(lower, upper) bound for the Nielsen number.

    Resolved traces give an exact count.  Otherwise the lower bound counts
    classes surviving the coarsest merge consistent with the unknown pairs.
    """
    upper = len(t.terms)
    if t.resolved:
        return upper, upper
    parent = list(range(upper))

    def root(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, j in t.unknown_pairs:
        parent[root(i)] = root(j)
    sums: dict[int, int] = {}
    for idx, (c, _) in enumerate(t.terms):
        r = root(idx)
        sums[r] = sums.get(r, 0) + c
    lower = sum(1 for s in sums.values() if s != 0)
    return lower, upper


def fixed_point_trace(
    phi: Endomorphism, config: DecideConfig | None = None
) -> ReidemeisterTrace:
    """Reidemeister trace of a single selfmap (the other map is the identity)."""
    ident = Endomorphism.identity(phi.alphabet)
    return reduce_trace(raw_trace(phi, ident), phi, ident, config)


def match_traces(
    t1: ReidemeisterTrace,
    t2: ReidemeisterTrace,
    phi: Endomorphism,
    psi: Endomorphism,
    config: DecideConfig | None = None,
) -> str:
    """Compare two reduced traces class-by-class.

    Returns "match", "mismatch", or "inconclusive" (an Unknown decision
    prevented pairing some terms)."""
    config = config or DecideConfig()
    if t1.coefficients() != t2.coefficients():
        return "mismatch"
    remaining = list(t2.terms)
    saw_unknown = False
    for c1, w1 in t1.terms:
        hit = None
        for idx, (c2, w2) in enumerate(remaining):
            if c1 != c2:
                continue
            out = decide(w1, w2, phi, psi, config)
            if out.is_equivalent:
                hit = idx
                break
            if out.is_unknown:
                saw_unknown = True
        if hit is None:
            return "inconclusive" if saw_unknown else "mismatch"
        remaining.pop(hit)
    return "match"
