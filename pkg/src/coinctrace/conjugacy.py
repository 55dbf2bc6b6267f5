"""Deciding doubly twisted conjugacy: alpha ~ beta iff alpha = phi(gamma) beta psi(gamma)^-1.

The relation is only semi-decidable here, so outcomes are three-valued:
Equivalent (with a verified witness), Distinct (certified in the
abelianization or the free class-2 nilpotent quotient), or Unknown.

All integer linear algebra is exact (Python ints, Smith normal form).
"""

from __future__ import annotations

import itertools
from collections import OrderedDict
from dataclasses import dataclass, field

from .words import (
    AlphabetMismatch,
    Endomorphism,
    Letter,
    Word,
    _invert_letters,
    _reduce_letters,
)

Matrix = list[list[int]]
Vector = list[int]


# ---------------------------------------------------------------------------
# exact integer matrix helpers


def _identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _mat_vec(M: Matrix, v: Vector) -> Vector:
    return [sum(row[j] * v[j] for j in range(len(v))) for row in M]


def _mat_mul(A: Matrix, B: Matrix) -> Matrix:
    cols = len(B[0]) if B else 0
    return [
        [sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(cols)]
        for i in range(len(A))
    ]


def smith_normal_form(M: Matrix) -> tuple[Matrix, Matrix, Matrix]:
    """Return unimodular (U, V) and diagonal D with U*M*V = D and d1 | d2 | ...

    Matrices are lists of rows of Python ints; returns (U, D, V).
    """
    rows = len(M)
    cols = len(M[0]) if rows else 0
    A = [list(row) for row in M]
    U = _identity(rows)
    V = _identity(cols)

    def row_op(i, j, q):  # row_i -= q * row_j
        A[i] = [a - q * b for a, b in zip(A[i], A[j])]
        U[i] = [a - q * b for a, b in zip(U[i], U[j])]

    def col_op(i, j, q):  # col_i -= q * col_j
        for row in A:
            row[i] -= q * row[j]
        for row in V:
            row[i] -= q * row[j]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    t = 0
    while t < min(rows, cols):
        # pivot: smallest nonzero entry of the trailing submatrix
        pivot = None
        for i in range(t, rows):
            for j in range(t, cols):
                if A[i][j] and (pivot is None or abs(A[i][j]) < abs(A[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])

        while True:
            # clear column t
            dirty = False
            for i in range(t + 1, rows):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    row_op(i, t, q)
                    if A[i][t]:
                        swap_rows(t, i)
                        dirty = True
            if dirty:
                continue
            # clear row t
            for j in range(t + 1, cols):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    col_op(j, t, q)
                    if A[t][j]:
                        swap_cols(t, j)
                        dirty = True
            if not dirty:
                break

        # divisibility: pivot must divide the trailing submatrix
        fixed = True
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if A[i][j] % A[t][t]:
                    row_op(t, i, -1)  # adds row i into row t, re-run elimination
                    fixed = False
                    break
            if not fixed:
                break
        if not fixed:
            continue

        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
        t += 1

    return U, A, V


def solve_linear_system(M: Matrix, d: Vector) -> tuple[Vector, list[Vector]] | None:
    """All integer solutions of M g = d, as g0 + span(basis); None if unsolvable."""
    rows = len(M)
    cols = len(M[0]) if rows else 0
    if rows == 0:
        return [0] * cols, [[int(i == j) for i in range(cols)] for j in range(cols)]
    U, D, V = smith_normal_form(M)
    ud = _mat_vec(U, d)
    rank = sum(1 for i in range(min(rows, cols)) if D[i][i])
    y = [0] * cols
    for i in range(rows):
        if i < rank:
            q, r = divmod(ud[i], D[i][i])
            if r:
                return None
            y[i] = q
        elif ud[i]:
            return None
    g0 = _mat_vec(V, y)
    basis = [[V[i][j] for i in range(cols)] for j in range(rank, cols)]
    return g0, basis


# ---------------------------------------------------------------------------
# outcomes


@dataclass(frozen=True)
class DecisionOutcome:
    """Equivalent{witness}, Distinct{level 1 or 2}, or Unknown."""

    status: str
    witness: Word | None = None
    level: int | None = None

    @property
    def is_equivalent(self) -> bool:
        return self.status == "equivalent"

    @property
    def is_distinct(self) -> bool:
        return self.status == "distinct"

    @property
    def is_unknown(self) -> bool:
        return self.status == "unknown"

    @classmethod
    def equivalent(cls, witness: Word) -> "DecisionOutcome":
        return cls("equivalent", witness=witness)

    @classmethod
    def distinct(cls, level: int) -> "DecisionOutcome":
        return cls("distinct", level=level)

    @classmethod
    def unknown(cls) -> "DecisionOutcome":
        return cls("unknown")


@dataclass(frozen=True)
class DecideConfig:
    """Search bounds for the escalation pipeline."""

    max_witness_len: int = 6
    nilpotent_level: int = 2
    t_box: int = 3
    scan_cap: int = 20000


# ---------------------------------------------------------------------------
# abelianization


@dataclass(frozen=True)
class AbelianizedEndo:
    """Column j is the exponent-sum vector of the image of generator j."""

    matrix: tuple[tuple[int, ...], ...]

    def rows(self) -> Matrix:
        return [list(row) for row in self.matrix]


def abelianize_endo(e: Endomorphism) -> AbelianizedEndo:
    n = len(e.alphabet)
    cols = [img.exponent_sums() for img in e.images]
    return AbelianizedEndo(tuple(tuple(cols[j][i] for j in range(n)) for i in range(n)))


def _abelian_lattice(
    alpha: Word, beta: Word, phi: Endomorphism, psi: Endomorphism
) -> tuple[Vector, list[Vector]] | None:
    """Integer solutions g of (Phi - Psi) g = ab(alpha) - ab(beta)."""
    P = abelianize_endo(phi).rows()
    S = abelianize_endo(psi).rows()
    M = [[p - s for p, s in zip(prow, srow)] for prow, srow in zip(P, S)]
    d = [x - y for x, y in zip(alpha.exponent_sums(), beta.exponent_sums())]
    return solve_linear_system(M, d)


def decide_abelian(
    alpha: Word, beta: Word, phi: Endomorphism, psi: Endomorphism
) -> DecisionOutcome:
    """Distinct{1} when the abelianized equation has no integer solution.

    A solution never certifies free-group equivalence, so the other outcome
    is Unknown and callers escalate.
    """
    if _abelian_lattice(alpha, beta, phi, psi) is None:
        return DecisionOutcome.distinct(1)
    return DecisionOutcome.unknown()


# ---------------------------------------------------------------------------
# free class-2 nilpotent quotient
#
# Elements are (v, c): exponent sums plus coordinates on the basic
# commutators [x_i, x_j], i < j, in lexicographic order.  The collection
# convention is fixed by requiring nil2_embed to be a homomorphism with the
# product rule (v1,c1)(v2,c2) = (v1+v2, c1+c2+Q(v1,v2)), where Q adds
# v1[j]*v2[i] to coordinate (i,j).  Under this convention the basic
# commutator [x_i, x_j] embeds with c = -e_{(i,j)}.


@dataclass(frozen=True)
class Nil2Element:
    v: tuple[int, ...]
    c: tuple[int, ...]


def _pair_list(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def _q_form(v1, v2, pairs) -> list[int]:
    return [v1[j] * v2[i] for (i, j) in pairs]


def nil2_identity(n: int) -> Nil2Element:
    return Nil2Element((0,) * n, (0,) * (n * (n - 1) // 2))


def nil2_multiply(x: Nil2Element, y: Nil2Element) -> Nil2Element:
    n = len(x.v)
    if len(y.v) != n:
        raise ValueError("rank mismatch")
    pairs = _pair_list(n)
    q = _q_form(x.v, y.v, pairs)
    return Nil2Element(
        tuple(a + b for a, b in zip(x.v, y.v)),
        tuple(a + b + qq for a, b, qq in zip(x.c, y.c, q)),
    )


def nil2_inverse(x: Nil2Element) -> Nil2Element:
    pairs = _pair_list(len(x.v))
    q = _q_form(x.v, x.v, pairs)
    return Nil2Element(
        tuple(-a for a in x.v), tuple(-a + qq for a, qq in zip(x.c, q))
    )


def nil2_power(x: Nil2Element, m: int) -> Nil2Element:
    # (v,c)^m = (m v, m c + C(m,2) Q(v,v)); exact for all integer m
    pairs = _pair_list(len(x.v))
    q = _q_form(x.v, x.v, pairs)
    binom = m * (m - 1) // 2
    return Nil2Element(
        tuple(m * a for a in x.v), tuple(m * a + binom * qq for a, qq in zip(x.c, q))
    )


def nil2_commutator(x: Nil2Element, y: Nil2Element) -> Nil2Element:
    return nil2_multiply(
        nil2_multiply(nil2_inverse(x), nil2_inverse(y)), nil2_multiply(x, y)
    )


def nil2_embed(w: Word) -> Nil2Element:
    """Canonical projection of a word into the class-2 model (a homomorphism)."""
    n = len(w.alphabet)
    pairs = _pair_list(n)
    v = [0] * n
    c = [0] * len(pairs)
    for lt in w.letters:
        # multiply on the right by the image of a single letter
        for idx, (i, j) in enumerate(pairs):
            if i == lt.gen:
                c[idx] += v[j] * lt.sign
        v[lt.gen] += lt.sign
    return Nil2Element(tuple(v), tuple(c))


class _Nil2Induced:
    """The endomorphism a free-group map induces on the class-2 quotient."""

    def __init__(self, e: Endomorphism):
        self.rank = len(e.alphabet)
        self.pairs = _pair_list(self.rank)
        self.gen_images = [nil2_embed(img) for img in e.images]
        # image of the basic commutator [x_i, x_j]
        self.comm_images = [
            nil2_commutator(self.gen_images[i], self.gen_images[j])
            for (i, j) in self.pairs
        ]

    def apply(self, x: Nil2Element) -> Nil2Element:
        acc = nil2_identity(self.rank)
        for k, vk in enumerate(x.v):
            if vk:
                acc = nil2_multiply(acc, nil2_power(self.gen_images[k], vk))
        # (0, c) is the product of basic commutators with exponents -c
        extra = [0] * len(self.pairs)
        for idx, coeff in enumerate(x.c):
            if coeff:
                kc = self.comm_images[idx].c
                extra = [a - coeff * b for a, b in zip(extra, kc)]
        return nil2_multiply(acc, Nil2Element((0,) * self.rank, tuple(extra)))

    def commutator_matrix(self) -> Matrix:
        """Matrix of the action on the central part: column (i,j) is the
        c-part of the image of (0, e_{(i,j)})."""
        m = len(self.pairs)
        return [
            [-self.comm_images[j].c[i] for j in range(m)] for i in range(m)
        ]


def nil2_endo(e: Endomorphism, x: Nil2Element) -> Nil2Element:
    return _Nil2Induced(e).apply(x)


def decide_nilpotent2(
    alpha: Word,
    beta: Word,
    phi: Endomorphism,
    psi: Endomorphism,
    config: DecideConfig | None = None,
) -> DecisionOutcome:
    """Distinct{2} when no class-2 element gamma solves the twisted relation.

    The linear part of gamma ranges over the abelian solution lattice
    g0 + B t; for each t the central part is a linear system with fixed
    matrix M2 and a right-hand side quadratic in t.  With a finite relevant
    cokernel the scan over t is complete (periodicity mod its exponent);
    otherwise the outcome degrades to Unknown.
    """
    config = config or DecideConfig()
    lattice = _abelian_lattice(alpha, beta, phi, psi)
    if lattice is None:
        return DecisionOutcome.distinct(1)
    g0, basis = lattice
    n = len(phi.alphabet)
    m = n * (n - 1) // 2
    if m == 0:
        return DecisionOutcome.unknown()  # rank 1: class 2 adds nothing

    A = nil2_embed(alpha.reduce())
    B = nil2_embed(beta.reduce())
    phi2 = _Nil2Induced(phi)
    psi2 = _Nil2Induced(psi)
    M2 = [
        [p - s for p, s in zip(prow, srow)]
        for prow, srow in zip(phi2.commutator_matrix(), psi2.commutator_matrix())
    ]

    def target(t: Vector) -> Vector:
        g = [g0[i] + sum(basis[j][i] * t[j] for j in range(len(t))) for i in range(n)]
        gamma = Nil2Element(tuple(g), (0,) * m)
        prod = nil2_multiply(
            nil2_multiply(phi2.apply(gamma), B), nil2_inverse(psi2.apply(gamma))
        )
        return [a - p for a, p in zip(A.c, prod.c)]

    def central_solvable(t: Vector) -> bool:
        return solve_linear_system(M2, target(t)) is not None

    k = len(basis)
    if k == 0:
        return DecisionOutcome.unknown() if central_solvable([]) else DecisionOutcome.distinct(2)

    U2, D2, _ = smith_normal_form(M2)
    divisors = [D2[i][i] for i in range(m)]
    rank2 = sum(1 for d in divisors if d)

    if rank2 == m:
        exponent = abs(divisors[-1])
        if exponent == 1:
            return DecisionOutcome.unknown()  # M2 surjective: always solvable
        if exponent**k <= config.scan_cap:
            for t in itertools.product(range(exponent), repeat=k):
                if central_solvable(list(t)):
                    return DecisionOutcome.unknown()
            return DecisionOutcome.distinct(2)
        return DecisionOutcome.unknown()  # scan too large; inconclusive

    # Infinite cokernel: rows of U2 beyond the rank impose exact equations
    # on target(t), an integer quadratic map.  Fit it in the binomial basis
    # (exact integer coefficients) and eliminate the free directions when
    # the surviving constraints are affine; otherwise stay inconclusive.
    t0v = target([0] * k)
    unit = lambda i: [int(j == i) for j in range(k)]
    ti = [target(unit(i)) for i in range(k)]
    tii = [target([2 * u for u in unit(i)]) for i in range(k)]
    quad_ii = [
        [a - 2 * b + c for a, b, c in zip(tii[i], ti[i], t0v)] for i in range(k)
    ]
    quad_ij = {}
    for i in range(k):
        for j in range(i + 1, k):
            tij = target([u + w for u, w in zip(unit(i), unit(j))])
            quad_ij[(i, j)] = [
                a - b - c + d for a, b, c, d in zip(tij, ti[i], ti[j], t0v)
            ]
    lin = [[a - b for a, b in zip(ti[i], t0v)] for i in range(k)]

    free_rows = [r for r in range(m) if r >= rank2 or not divisors[r]]

    def dot(u: Vector, w: Vector) -> int:
        return sum(a * b for a, b in zip(u, w))

    for r in free_rows:
        u = U2[r]
        if any(dot(u, quad_ii[i]) for i in range(k)) or any(
            dot(u, q) for q in quad_ij.values()
        ):
            return DecisionOutcome.unknown()  # genuinely quadratic constraint

    # Affine constraints: C t = -c0 restricted to the free rows.
    C = [[dot(U2[r], lin[i]) for i in range(k)] for r in free_rows]
    c0 = [-dot(U2[r], t0v) for r in free_rows]
    sub = solve_linear_system(C, c0)
    if sub is None:
        return DecisionOutcome.distinct(2)
    s0, sbasis = sub
    nonzero = [abs(d) for d in divisors if d]
    exponent = max(nonzero) if nonzero else 1
    kk = len(sbasis)
    if kk == 0:
        return (
            DecisionOutcome.unknown()
            if central_solvable(s0)
            else DecisionOutcome.distinct(2)
        )
    if exponent == 1:
        return DecisionOutcome.unknown()  # constraints met and no torsion left
    if exponent**kk > config.scan_cap:
        return DecisionOutcome.unknown()
    for s in itertools.product(range(exponent), repeat=kk):
        t = [
            s0[i] + sum(sbasis[j][i] * s[j] for j in range(kk)) for i in range(k)
        ]
        if central_solvable(t):
            return DecisionOutcome.unknown()
    return DecisionOutcome.distinct(2)


# ---------------------------------------------------------------------------
# witness search


class WitnessSearch:
    """Lazy shortlex enumeration of reduced words gamma with cached images
    phi(gamma) and psi(gamma)^-1, shared across many pair decisions."""

    def __init__(self, phi: Endomorphism, psi: Endomorphism):
        if phi.alphabet != psi.alphabet:
            raise AlphabetMismatch("phi and psi must share an alphabet")
        self.alphabet = phi.alphabet
        n = len(self.alphabet)
        self.letters = [
            Letter(g, s) for g in range(n) for s in (1, -1)
        ]  # shortlex letter order: a < a^-1 < b < ...
        self.phi_letter = {}
        self.psi_inv_letter = {}
        for lt in self.letters:
            img = phi.images[lt.gen].letters
            pimg = psi.images[lt.gen].letters
            if lt.sign < 0:
                img = _invert_letters(img)
                pimg = _invert_letters(pimg)
            self.phi_letter[lt] = _reduce_letters(img)
            self.psi_inv_letter[lt] = _invert_letters(_reduce_letters(pimg))
        self.levels: list[list[tuple[tuple, tuple, tuple]]] = [[((), (), ())]]

    def _level(self, length: int):
        while len(self.levels) <= length:
            prev = self.levels[-1]
            nxt = []
            for gamma, a, r in prev:
                for lt in self.letters:
                    if gamma and gamma[-1].gen == lt.gen and gamma[-1].sign == -lt.sign:
                        continue
                    na = _reduce_letters(a + self.phi_letter[lt])
                    nr = _reduce_letters(self.psi_inv_letter[lt] + r)
                    nxt.append((gamma + (lt,), na, nr))
            self.levels.append(nxt)
        return self.levels[length]

    def find(self, alpha: Word, beta: Word, max_len: int) -> Word | None:
        """Shortlex-first gamma with phi(gamma) beta psi(gamma)^-1 = alpha."""
        want = alpha.reduce().letters
        mid = beta.reduce().letters
        for length in range(max_len + 1):
            for gamma, a, r in self._level(length):
                if _reduce_letters(a + mid + r) == want:
                    return Word(self.alphabet, gamma)
        return None


_SEARCH_CACHE: OrderedDict[tuple[Endomorphism, Endomorphism], WitnessSearch] = OrderedDict()
_SEARCH_CACHE_MAX = 8


def _searcher(phi: Endomorphism, psi: Endomorphism) -> WitnessSearch:
    key = (phi, psi)
    if key in _SEARCH_CACHE:
        _SEARCH_CACHE.move_to_end(key)
        return _SEARCH_CACHE[key]
    s = WitnessSearch(phi, psi)
    _SEARCH_CACHE[key] = s
    while len(_SEARCH_CACHE) > _SEARCH_CACHE_MAX:
        _SEARCH_CACHE.popitem(last=False)
    return s


def find_witness(
    alpha: Word, beta: Word, phi: Endomorphism, psi: Endomorphism, max_len: int
) -> Word | None:
    """First gamma in shortlex order (length, then letter order) that verifies
    alpha = phi(gamma) beta psi(gamma)^-1 exactly; None if none within bound."""
    if max_len < 0:
        raise ValueError("max_len must be >= 0")
    return _searcher(phi, psi).find(alpha, beta, max_len)


def verify_witness(
    alpha: Word, beta: Word, phi: Endomorphism, psi: Endomorphism, gamma: Word
) -> bool:
    return (phi(gamma) * beta * psi(gamma).inverse()).reduce() == alpha.reduce()


# ---------------------------------------------------------------------------
# escalation pipeline


def decide(
    alpha: Word,
    beta: Word,
    phi: Endomorphism,
    psi: Endomorphism,
    config: DecideConfig | None = None,
) -> DecisionOutcome:
    """Witness search plus quotient certificates.  Sound in both directions:
    Equivalent always carries a verified witness; Distinct is certified in a
    quotient, so no witness of any length can exist."""
    config = config or DecideConfig()
    ar, br = alpha.reduce(), beta.reduce()
    if ar == br:
        return DecisionOutcome.equivalent(alpha.alphabet.identity())
    lattice = _abelian_lattice(ar, br, phi, psi)
    if lattice is None:
        return DecisionOutcome.distinct(1)
    if config.nilpotent_level >= 2:
        out = decide_nilpotent2(ar, br, phi, psi, config)
        if out.is_distinct:
            return out
    gamma = find_witness(ar, br, phi, psi, config.max_witness_len)
    if gamma is not None:
        return DecisionOutcome.equivalent(gamma)
    return DecisionOutcome.unknown()
