"""The Fox derivative and its reversed variant, as maps from words into ZG.

Both operators accept unreduced input; they are well defined on group
elements, so the derivative of a word equals the derivative of its
reduction (covered by tests).
"""

from __future__ import annotations

from .words import GroupRingElement, Letter, Word


def fox_derivative(gen: int, w: Word) -> GroupRingElement:
    """d/dx_gen with dx_j = delta_ij, d(x^-1) = -x^-1, d(uv) = du + u dv.

    For a letter sequence h_1 ... h_n this is sum_k h_1...h_{k-1} d(h_k).
    """
    terms: dict[Word, int] = {}
    prefix: list[Letter] = []  # reduced product of the letters seen so far
    for lt in w.letters:
        if lt.gen == gen:
            if lt.sign > 0:
                key = tuple(prefix)
                coeff = 1
            else:
                # d(x^-1) = -x^-1, so the term is -(prefix . x^-1)
                if prefix and prefix[-1].gen == lt.gen and prefix[-1].sign == -lt.sign:
                    key = tuple(prefix[:-1])
                else:
                    key = tuple(prefix) + (lt,)
                coeff = -1
            word = Word(w.alphabet, key)
            c = terms.get(word, 0) + coeff
            if c:
                terms[word] = c
            else:
                del terms[word]
        if prefix and prefix[-1].gen == lt.gen and prefix[-1].sign == -lt.sign:
            prefix.pop()
        else:
            prefix.append(lt)
    return GroupRingElement(w.alphabet, terms)


def delta_derivative(gen: int, w: Word) -> GroupRingElement:
    """The reversed derivative: D(x_j) = delta_ij, D(uv) = (Du)v + Dv.

    Derived rules: D(x^-1) = -x^-1 (forced by 0 = D(x x^-1) = x^-1 + D(x^-1)),
    and for letters c_1 ... c_n the result is sum_k (D c_k) . c_{k+1} ... c_n.
    """
    terms: dict[Word, int] = {}
    suffix: tuple[Letter, ...] = ()  # reduced product of the letters to the right
    for lt in reversed(w.letters):
        if lt.gen == gen:
            if lt.sign > 0:
                key = suffix
                coeff = 1
            else:
                # D(x^-1) = -x^-1, so the term is -(x^-1 . suffix)
                if suffix and suffix[0].gen == gen and suffix[0].sign == 1:
                    key = suffix[1:]
                else:
                    key = (lt,) + suffix
                coeff = -1
            word = Word(w.alphabet, key)
            c = terms.get(word, 0) + coeff
            if c:
                terms[word] = c
            else:
                del terms[word]
        if suffix and suffix[0].gen == lt.gen and suffix[0].sign == -lt.sign:
            suffix = suffix[1:]
        else:
            suffix = (lt,) + suffix
    return GroupRingElement(w.alphabet, terms)
