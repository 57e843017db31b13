"""Braid words with Garside-normal-form equality and cabling.

Conventions (shared with the rest of the package):

* permutations are 1-based one-line tuples, composed by "apply the right
  factor first": ``(p @ q)(i) = p(q(i))``;
* a braid word lists signed Artin letters in product order, so under any
  action the rightmost letter acts first, and the underlying permutation of
  ``l1 l2 ... ln`` is ``t_{l1} o t_{l2} o ... o t_{ln}``;
* a positive letter +j crosses the strand in position j *over* the strand in
  position j+1.

Equality of braids is decided by the classical left-greedy (Garside) normal
form with permutation simples: a word is rewritten as ``Delta^p f1 ... fk``
where Delta is the half twist, no factor is trivial or Delta, and every
adjacent pair (fi, fi+1) is left-weighted (every simple letter starting fi+1
also ends fi).  Negative letters enter through the left complement
``Delta * s_j``, with the resulting Delta^-1 commuted to the front by the
flip automorphism tau(x) = w0 x w0.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache


class BraidError(ValueError):
    pass


# -- permutations --------------------------------------------------------


@dataclass(frozen=True)
class Permutation:
    images: tuple[int, ...]  # one-line notation, 1-based values

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise BraidError(f"not a permutation: {self.images}")
        object.__setattr__(self, "_hash", hash(self.images))

    def __hash__(self):
        return self._hash

    @property
    def size(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def transposition(cls, j: int, n: int) -> "Permutation":
        return _transposition(j, n)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __matmul__(self, other: "Permutation") -> "Permutation":
        if self.size != other.size:
            raise BraidError("size mismatch in permutation composition")
        return _compose(self, other)

    def inverse(self) -> "Permutation":
        return _inverse(self)

    def is_identity(self) -> bool:
        return all(v == i for i, v in enumerate(self.images, start=1))

    def __repr__(self) -> str:
        return f"Permutation{self.images}"


# instances are immutable, so the common constructions are shared
@lru_cache(maxsize=None)
def _transposition(j: int, n: int) -> Permutation:
    if not 1 <= j <= n - 1:
        raise BraidError(f"transposition index {j} out of range for size {n}")
    im = list(range(1, n + 1))
    im[j - 1], im[j] = im[j], im[j - 1]
    return Permutation(tuple(im))


@lru_cache(maxsize=200_000)
def _compose(p: Permutation, q: Permutation) -> Permutation:
    return Permutation(tuple(p.images[v - 1] for v in q.images))


@lru_cache(maxsize=50_000)
def _inverse(p: Permutation) -> Permutation:
    out = [0] * p.size
    for i, v in enumerate(p.images, start=1):
        out[v - 1] = i
    return Permutation(tuple(out))


def all_permutations(n: int):
    """All of Sigma_n in lexicographic one-line order."""
    return [Permutation(p) for p in itertools.permutations(range(1, n + 1))]


# -- braid words ---------------------------------------------------------


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if self.strands < 0:
            raise BraidError("strand count must be nonnegative")
        for l in self.letters:
            if l == 0 or not 1 <= abs(l) <= self.strands - 1:
                raise BraidError(f"letter {l} out of range for {self.strands} strands")

    @classmethod
    def identity(cls, strands: int) -> "BraidWord":
        return cls(strands, ())

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if self.strands != other.strands:
            raise BraidError("strand count mismatch")
        return BraidWord(self.strands, self.letters + other.letters)

    def inverse(self) -> "BraidWord":
        return BraidWord(self.strands, tuple(-l for l in reversed(self.letters)))

    def __str__(self) -> str:
        return " ".join(str(l) for l in self.letters)


def parse_braid_word(text: str, strands: int) -> BraidWord:
    """Parse whitespace-separated signed letters, e.g. ``"1 2 -1"``."""
    tokens = text.split()
    try:
        letters = tuple(int(t) for t in tokens)
    except ValueError:
        raise BraidError(f"bad braid word {text!r}") from None
    return BraidWord(strands, letters)


def underlying_permutation(w: BraidWord) -> Permutation:
    p = Permutation.identity(w.strands)
    for l in w.letters:
        # left-to-right accumulation composes so that later letters act first
        p = p @ Permutation.transposition(abs(l), w.strands)
    return p


def is_pure(w: BraidWord) -> bool:
    return underlying_permutation(w).is_identity()


# -- Garside normal form -------------------------------------------------


@lru_cache(maxsize=None)
def _w0(n: int) -> Permutation:
    return Permutation(tuple(range(n, 0, -1)))


def _right_descents(p: Permutation) -> set[int]:
    im = p.images
    return {j for j in range(1, p.size) if im[j - 1] > im[j]}


def _left_descents(p: Permutation) -> set[int]:
    return _right_descents(p.inverse())


def _swap_entries(p: Permutation, j: int) -> Permutation:
    # p * s_j: swap the one-line entries at positions j, j+1
    im = list(p.images)
    im[j - 1], im[j] = im[j], im[j - 1]
    return Permutation(tuple(im))


def _swap_values(p: Permutation, j: int) -> Permutation:
    # s_j * p: swap the values j, j+1 wherever they occur
    im = [v + 1 if v == j else v - 1 if v == j + 1 else v for v in p.images]
    return Permutation(tuple(im))


def _tau(p: Permutation) -> Permutation:
    # conjugation by the half twist: tau(p)(i) = n+1 - p(n+1-i)
    n = p.size
    return Permutation(tuple(n + 1 - p.images[n - i] for i in range(1, n + 1)))


def _renorm_pair(w: Permutation, z: Permutation):
    """Make the pair (w, z) left-weighted, preserving the product w z."""
    changed = False
    while diff := _left_descents(z) - _right_descents(w):
        s = min(diff)
        w = _swap_entries(w, s)
        z = _swap_values(z, s)
        changed = True
    return w, z, changed


@dataclass(frozen=True)
class GarsideNormalForm:
    strands: int
    power: int  # exponent of the leading half twist
    factors: tuple[Permutation, ...]

    def canonical_length(self) -> int:
        return len(self.factors)


def garside_normal_form(w: BraidWord) -> GarsideNormalForm:
    n = w.strands
    if n <= 1:
        return GarsideNormalForm(n, 0, ())
    w0 = _w0(n)
    power = 0
    factors: list[Permutation] = []
    for l in w.letters:
        if l > 0:
            factors.append(Permutation.transposition(l, n))
        else:
            power -= 1
            factors = [_tau(f) for f in factors]
            factors.append(w0 @ Permutation.transposition(-l, n))
        # bubble the new factor leftward as far as it goes
        i = len(factors) - 2
        while i >= 0:
            a, b, moved = _renorm_pair(factors[i], factors[i + 1])
            factors[i], factors[i + 1] = a, b
            i -= 1
            if not moved:
                break
    # full passes to a fixpoint, then strip Delta prefixes and trivial suffixes
    while True:
        dirty = False
        for i in range(len(factors) - 1):
            a, b, moved = _renorm_pair(factors[i], factors[i + 1])
            factors[i], factors[i + 1] = a, b
            dirty = dirty or moved
        if not dirty:
            break
    while factors and factors[0] == w0:
        factors.pop(0)
        power += 1
    while factors and factors[-1].is_identity():
        factors.pop()
    return GarsideNormalForm(n, power, tuple(factors))


def _perm_to_letters(p: Permutation) -> list[int]:
    """A deterministic reduced word whose underlying permutation is p."""
    out = []
    while not p.is_identity():
        j = min(_left_descents(p))
        out.append(j)
        p = _swap_values(p, j)
    return out


@lru_cache(maxsize=None)
def _delta_letters(n: int) -> tuple[int, ...]:
    return tuple(_perm_to_letters(_w0(n)))


def normal_form(w: BraidWord) -> BraidWord:
    """Canonical word: same letters for any two equal braids."""
    nf = garside_normal_form(w)
    delta = _delta_letters(nf.strands) if nf.strands > 1 else ()
    letters: list[int] = []
    if nf.power >= 0:
        letters += list(delta) * nf.power
    else:
        letters += [-l for l in reversed(delta)] * (-nf.power)
    for f in nf.factors:
        letters += _perm_to_letters(f)
    return BraidWord(w.strands, tuple(letters))


def braids_equal(u: BraidWord, v: BraidWord) -> bool:
    return garside_normal_form(u) == garside_normal_form(v)


# -- cabling -------------------------------------------------------------


def block_transposition(strands: int, start: int, m: int, n: int) -> BraidWord:
    """The positive braid crossing the m strands at ``start..start+m-1`` over
    the n strands immediately to their right, preserving both blocks' internal
    order."""
    if start < 1 or start + m + n - 1 > strands:
        raise BraidError("block out of range")
    applied = []  # application order: rightmost left strand walks first
    for t in range(m):
        base = start + m - 1 - t
        applied.extend(range(base, base + n))
    return BraidWord(strands, tuple(reversed(applied)))


def cable_compose(outer: BraidWord, j: int, inner: BraidWord) -> BraidWord:
    """Replace strand j of ``outer`` by the ``inner.strands`` parallel strands
    carrying ``inner`` at the source end.

    Each outer letter becomes a block crossing whose widths are those of the
    strands *currently* at the crossed positions, so the running layout of
    block sizes is tracked in application order (rightmost letter first).  A
    negative letter is the inverse of the positive block crossing read from
    its own source, which has the two widths exchanged.
    """
    r, s = outer.strands, inner.strands
    if not 1 <= j <= r:
        raise BraidError(f"cable position {j} out of range for {r} strands")
    total = r + s - 1
    sizes = [s if i == j else 1 for i in range(1, r + 1)]
    chunks: list[tuple[int, ...]] = []
    for l in reversed(outer.letters):
        k = abs(l)
        start = 1 + sum(sizes[:k - 1])
        m, n = sizes[k - 1], sizes[k]
        if l > 0:
            chunks.append(block_transposition(total, start, m, n).letters)
        else:
            chunks.append(block_transposition(total, start, n, m).inverse().letters)
        sizes[k - 1], sizes[k] = sizes[k], sizes[k - 1]
    letters: list[int] = []
    for chunk in reversed(chunks):
        letters.extend(chunk)
    letters.extend(l + (j - 1) if l > 0 else l - (j - 1) for l in inner.letters)
    return BraidWord(total, tuple(letters))


def cable_permutation(pu: Permutation, j: int, pv: Permutation) -> Permutation:
    """Block substitution of permutations: the underlying permutation of the
    corresponding cabled braid."""
    r, s = pu.size, pv.size
    total = r + s - 1

    def start_in(i):
        return i + (s - 1 if i > j else 0)

    jout = pu(j)

    def start_out(i):
        return i + (s - 1 if i > jout else 0)

    out = [0] * total
    for i in range(1, r + 1):
        if i == j:
            for d in range(1, s + 1):
                out[start_in(i) + d - 2] = start_out(pu(i)) + pv(d) - 1
        else:
            out[start_in(i) - 1] = start_out(pu(i))
    return Permutation(tuple(out))
