"""Compositions, generalized compositions and symmetric group plumbing.

Conventions used throughout the package:

* A composition is a tuple of positive ints; ``()`` is the empty composition.
* A generalized composition is a nonempty tuple of nonempty compositions
  (the blocks of a formal direct sum).
* A permutation is a 1-indexed one-line tuple, e.g. ``(4, 1, 5, 3, 2)``.
  Products compose as functions: ``(s r)(x) = s(r(x))``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations as _itperms
from itertools import product
from math import factorial, prod
from typing import Iterable, Iterator, Sequence

Composition = tuple[int, ...]
GeneralizedComposition = tuple[Composition, ...]
Permutation = tuple[int, ...]


class DomainError(ValueError):
    """Raised when an argument lies outside the domain of an operation."""


# -- compositions -----------------------------------------------------------


def as_composition(parts: Iterable[int]) -> Composition:
    alpha = tuple(int(p) for p in parts)
    if any(p < 1 for p in alpha):
        raise DomainError(f"composition parts must be positive: {alpha}")
    return alpha


def compositions(n: int) -> Iterator[Composition]:
    """All compositions of ``n`` in lexicographic order."""
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in compositions(n - first):
            yield (first,) + rest


def partitions(n: int) -> list[Composition]:
    return sorted({sort_to_partition(a) for a in compositions(n)}, reverse=True)


def set_of(alpha: Sequence[int]) -> tuple[int, ...]:
    """Partial sums ``a1, a1+a2, ...`` excluding the total."""
    out, acc = [], 0
    for p in alpha[:-1]:
        acc += p
        out.append(acc)
    return tuple(out)


def comp_of(subset: Iterable[int], n: int) -> Composition:
    """Inverse of :func:`set_of` for compositions of ``n``."""
    pts = sorted(set(subset))
    if n == 0:
        if pts:
            raise DomainError("nonempty subset for n = 0")
        return ()
    if pts and (pts[0] < 1 or pts[-1] > n - 1):
        raise DomainError(f"subset {pts} not inside [1, {n - 1}]")
    bounds = [0, *pts, n]
    return tuple(b - a for a, b in zip(bounds, bounds[1:]))


def reverse(alpha: Sequence[int]) -> Composition:
    return tuple(reversed(alpha))


def complement(alpha: Sequence[int]) -> Composition:
    n = sum(alpha)
    if n == 0:
        return ()
    return comp_of(set(range(1, n)) - set(set_of(alpha)), n)


def transpose(alpha: Sequence[int]) -> Composition:
    return complement(reverse(alpha))


def sort_to_partition(alpha: Sequence[int]) -> Composition:
    return tuple(sorted(alpha, reverse=True))


def is_partition(alpha: Sequence[int]) -> bool:
    return all(a >= b for a, b in zip(alpha, alpha[1:]))


def is_hook(alpha: Sequence[int]) -> bool:
    """True for shapes ``(n-k, 1^k)``."""
    return all(p == 1 for p in alpha[1:])


def place_perm_act(alpha: Sequence[int], sigma: Sequence[int]) -> Composition:
    """Right place-permutation action: ``(alpha . sigma)_i = alpha_{sigma(i)}``."""
    if len(alpha) != len(sigma):
        raise DomainError(f"length mismatch: {tuple(alpha)} vs {tuple(sigma)}")
    return tuple(alpha[s - 1] for s in sigma)


def concat(alpha: Sequence[int], beta: Sequence[int]) -> Composition:
    return tuple(alpha) + tuple(beta)


def near_concat(alpha: Sequence[int], beta: Sequence[int]) -> Composition:
    if not alpha or not beta:
        raise DomainError("near concatenation needs nonempty operands")
    return tuple(alpha[:-1]) + (alpha[-1] + beta[0],) + tuple(beta[1:])


def as_generalized(shape) -> GeneralizedComposition:
    """Normalize a composition or generalized composition to block form."""
    if not shape:
        raise DomainError("generalized composition needs at least one block")
    if isinstance(shape[0], int):
        return (as_composition(shape),)
    blocks = tuple(as_composition(b) for b in shape)
    if any(not b for b in blocks):
        raise DomainError("generalized composition blocks must be nonempty")
    return blocks


def bracket(gen: GeneralizedComposition) -> list[Composition]:
    """All compositions obtained by choosing concatenation or near
    concatenation between consecutive blocks."""
    gen = as_generalized(gen)
    out = []
    for choice in product((False, True), repeat=len(gen) - 1):
        acc = gen[0]
        for near, block in zip(choice, gen[1:]):
            acc = near_concat(acc, block) if near else concat(acc, block)
        out.append(acc)
    return out


def alpha_max(gen: GeneralizedComposition) -> Composition:
    gen = as_generalized(gen)
    acc = gen[0]
    for block in gen[1:]:
        acc = near_concat(acc, block)
    return acc


def alpha_min(gen: GeneralizedComposition) -> Composition:
    return tuple(p for block in as_generalized(gen) for p in block)


def generalized_compositions(n: int) -> Iterator[GeneralizedComposition]:
    """Every generalized composition of ``n``.

    Between consecutive cells of a length-n strip choose one of: same row,
    new row in the same block, new block.
    """
    if n == 0:
        return
    for choice in product(range(3), repeat=n - 1):
        blocks, block, part = [], [], 1
        for c in choice:
            if c == 0:
                part += 1
            else:
                block.append(part)
                part = 1
                if c == 2:
                    blocks.append(tuple(block))
                    block = []
        block.append(part)
        blocks.append(tuple(block))
        yield tuple(blocks)


def coarser(alpha: Sequence[int], beta: Sequence[int]) -> bool:
    """``alpha`` is obtained from ``beta`` by merging adjacent parts."""
    if sum(alpha) != sum(beta):
        raise DomainError("coarsening compares compositions of equal size")
    return set(set_of(alpha)) <= set(set_of(beta))


def covers(alpha: Sequence[int], beta: Sequence[int]) -> bool:
    return coarser(alpha, beta) and len(set_of(beta)) - len(set_of(alpha)) == 1


def fmt_composition(alpha: Sequence[int]) -> str:
    return ",".join(str(p) for p in alpha)


def fmt_generalized(gen: GeneralizedComposition) -> str:
    return "|".join(fmt_composition(b) for b in gen)


def parse_composition(text: str) -> Composition:
    text = text.strip()
    if not text:
        return ()
    try:
        return as_composition(int(p) for p in text.split(","))
    except ValueError as exc:
        raise DomainError(f"malformed composition {text!r}") from exc


def parse_generalized(text: str) -> GeneralizedComposition:
    return as_generalized(tuple(parse_composition(b) for b in text.split("|")))


# -- bubble sorting operator ------------------------------------------------


def bubble_act(m: Sequence[int], i: int) -> tuple[int, ...]:
    """``m`` acted on by the i-th bubble operator: swap iff ``m_i < m_{i+1}``."""
    if not 1 <= i <= len(m) - 1:
        raise DomainError(f"bubble index {i} out of range for length {len(m)}")
    m = list(m)
    if m[i - 1] < m[i]:
        m[i - 1], m[i] = m[i], m[i - 1]
    return tuple(m)


def bubble_act_word(m: Sequence[int], word: Sequence[int]) -> tuple[int, ...]:
    """Right action of ``pi_{i1} ... pi_{ip}``: the letter ``i1`` acts first."""
    out = tuple(m)
    for i in word:
        out = bubble_act(out, i)
    return out


def bubble_act_perm(m: Sequence[int], sigma: Sequence[int]) -> tuple[int, ...]:
    return bubble_act_word(m, reduced_word(sigma))


# -- permutations -----------------------------------------------------------


def as_permutation(images: Iterable[int]) -> Permutation:
    sigma = tuple(int(x) for x in images)
    if sorted(sigma) != list(range(1, len(sigma) + 1)):
        raise DomainError(f"not a permutation: {sigma}")
    return sigma


def parse_permutation(text: str) -> Permutation:
    text = text.strip()
    if not text.isdigit() or "0" in text:
        raise DomainError(f"malformed permutation {text!r}")
    return as_permutation(int(c) for c in text)


def fmt_permutation(sigma: Sequence[int]) -> str:
    return "".join(str(x) for x in sigma)


def identity_perm(k: int) -> Permutation:
    return tuple(range(1, k + 1))


def w0(k: int) -> Permutation:
    return tuple(range(k, 0, -1))


def simple_transposition(k: int, i: int) -> Permutation:
    if not 1 <= i <= k - 1:
        raise DomainError(f"s_{i} is not in S_{k}")
    s = list(range(1, k + 1))
    s[i - 1], s[i] = s[i], s[i - 1]
    return tuple(s)


def compose(sigma: Sequence[int], rho: Sequence[int]) -> Permutation:
    """Function composition ``sigma o rho``."""
    return tuple(sigma[r - 1] for r in rho)


def inverse(sigma: Sequence[int]) -> Permutation:
    inv = [0] * len(sigma)
    for i, s in enumerate(sigma, start=1):
        inv[s - 1] = i
    return tuple(inv)


def times_simple(sigma: Sequence[int], i: int) -> Permutation:
    """``sigma s_i``: swap the values in positions i and i+1."""
    s = list(sigma)
    s[i - 1], s[i] = s[i], s[i - 1]
    return tuple(s)


def length(sigma: Sequence[int]) -> int:
    k = len(sigma)
    return sum(1 for a in range(k) for b in range(a + 1, k) if sigma[a] > sigma[b])


def reduced_word(sigma: Sequence[int]) -> tuple[int, ...]:
    """A reduced word ``(i1, ..., ip)`` with ``sigma = s_{i1} ... s_{ip}``.

    Peels off the leftmost right descent each time.
    """
    sigma = tuple(sigma)
    word: list[int] = []
    while True:
        for i in range(1, len(sigma)):
            if sigma[i - 1] > sigma[i]:
                word.append(i)
                sigma = times_simple(sigma, i)
                break
        else:
            break
    return tuple(reversed(word))


def reduced_words(sigma: Sequence[int]) -> list[tuple[int, ...]]:
    """Every reduced word of ``sigma`` (small k only)."""
    sigma = tuple(sigma)
    return list(_reduced_words(sigma))


@lru_cache(maxsize=None)
def _reduced_words(sigma: Permutation) -> tuple[tuple[int, ...], ...]:
    descents = [i for i in range(1, len(sigma)) if sigma[i - 1] > sigma[i]]
    if not descents:
        return ((),)
    out = []
    for i in descents:
        for w in _reduced_words(times_simple(sigma, i)):
            out.append(w + (i,))
    return tuple(sorted(out))


def word_to_perm(k: int, word: Sequence[int]) -> Permutation:
    sigma = identity_perm(k)
    for i in word:
        sigma = times_simple(sigma, i)
    return sigma


def conjugate_by_w0(sigma: Sequence[int]) -> Permutation:
    """``w0 sigma w0^{-1}``, i.e. ``i -> k+1 - sigma(k+1-i)``."""
    k = len(sigma)
    return tuple(k + 1 - sigma[k - i] for i in range(1, k + 1))


def perm_basics(sigma: Sequence[int]) -> dict:
    sigma = as_permutation(sigma)
    k = len(sigma)
    return {
        "length": length(sigma),
        "reduced_word": reduced_word(sigma),
        "inverse": inverse(sigma),
        "w0": w0(k),
        "conjugate_by_w0": conjugate_by_w0(sigma),
    }


def all_permutations(k: int) -> list[Permutation]:
    return [tuple(p) for p in _itperms(range(1, k + 1))]


def standardize(word: Sequence[int]) -> tuple[int, ...]:
    """Replace each letter of a word of distinct letters by its rank."""
    order = sorted(word)
    rank = {v: r for r, v in enumerate(order, start=1)}
    return tuple(rank[v] for v in word)


# -- compatibility and the sorting interval ---------------------------------


def compatible(alpha: Sequence[int], sigma: Sequence[int]) -> bool:
    """``alpha_i >= alpha_j`` whenever ``i < j`` and ``sigma(i) > sigma(j)``."""
    if len(alpha) != len(sigma):
        raise DomainError(f"length mismatch: {tuple(alpha)} vs {tuple(sigma)}")
    k = len(alpha)
    return all(
        alpha[i] >= alpha[j]
        for i in range(k)
        for j in range(i + 1, k)
        if sigma[i] > sigma[j]
    )


@dataclass(frozen=True)
class SortingInterval:
    sigma_min: Permutation
    sigma_max: Permutation
    members: tuple[Permutation, ...]


def sorting_interval(alpha: Sequence[int]) -> SortingInterval:
    """All ``sigma`` with ``lambda(alpha) = alpha^r . sigma``."""
    alpha = as_composition(alpha)
    if not alpha:
        raise DomainError("sorting interval needs a nonempty composition")
    rev = reverse(alpha)
    target = sort_to_partition(alpha)
    k = len(alpha)
    positions = range(1, k + 1)
    smin = tuple(sorted(positions, key=lambda p: (-rev[p - 1], p)))
    smax = tuple(sorted(positions, key=lambda p: (-rev[p - 1], -p)))
    members = tuple(
        s for s in all_permutations(k) if place_perm_act(rev, s) == target
    )
    return SortingInterval(smin, smax, members)


def interval_size_formula(alpha: Sequence[int]) -> int:
    return prod(factorial(alpha.count(v)) for v in set(alpha))
