"""Hurwitz actions of braid words on decorated tuples over a finite group.

Two kinds of points are supported, both carried by :class:`DecoratedTuple`.

* A *bare* tuple (no permutation, no colors) is a point of the plain Hurwitz
  space ``G^r``: a list of group elements indexed by strand position.  The
  positive generator at position j replaces ``(t_j, t_{j+1})`` by
  ``(t_j t_{j+1} t_j^{-1}, t_j)``.
* A *colored* tuple is a pair ``(sigma, b)`` relative to a fixed tuple of
  input colors ``g_1 .. g_r`` (indexed by slot): ``sigma`` sends slot to
  position and ``b_p`` is the decoration at position p.  The positive
  generator at position j sends ``sigma`` to ``t_j o sigma`` and replaces
  ``(b_j, b_{j+1})`` by ``((b_j g b_j^{-1}) b_{j+1}, b_j)`` where g is the
  color arriving at position j, i.e. ``g = g_{sigma^{-1}(j)}``.

The colored move preserves the boundary output

    ``condition(sigma, b) = prod_p  b_p g_{sigma^{-1}(p)} b_p^{-1}``

taken over positions p in ascending order, and the per-position holonomies
``b_p g_{sigma^{-1}(p)} b_p^{-1}`` themselves transform by the bare move.
Braid words act through :func:`braid_act` with the rightmost letter first,
so a word acts on the permutation part by left multiplication with its
underlying permutation.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Optional

from .braids import BraidWord, Permutation, all_permutations
from .groups import FiniteGroup, GroupElement, GroupMismatchError, product_of


class HurwitzError(ValueError):
    pass


@dataclass(frozen=True)
class DecoratedTuple:
    b: tuple[GroupElement, ...]
    sigma: Optional[Permutation] = None
    colors: Optional[tuple[GroupElement, ...]] = None

    def __post_init__(self):
        if (self.sigma is None) != (self.colors is None):
            raise HurwitzError("sigma and colors must be given together")
        entries = self.b
        if self.colors is not None:
            if len(self.colors) != len(self.b):
                raise HurwitzError("colors and decorations differ in length")
            if self.sigma.size != len(self.b):
                raise HurwitzError("permutation size mismatch")
            entries = entries + self.colors
        if entries:
            first = entries[0].group
            for e in entries:
                if e.group is not first:  # group equality is identity-based
                    raise GroupMismatchError("mixed groups in decorated tuple")
        object.__setattr__(self, "_hash",
                           hash((self.b, self.sigma, self.colors)))

    def __hash__(self):
        return self._hash

    @property
    def size(self) -> int:
        return len(self.b)

    @property
    def group(self) -> FiniteGroup:
        if not self.b:
            raise HurwitzError("empty tuple has no determined group")
        return self.b[0].group

    def is_bare(self) -> bool:
        return self.colors is None

    def sort_key(self):
        sig = self.sigma.images if self.sigma is not None else ()
        return (sig, tuple(e.index for e in self.b))

    def __lt__(self, other: "DecoratedTuple") -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        body = format_tuple(self.b)
        if self.is_bare():
            return body
        perm = ",".join(str(v) for v in self.sigma.images)
        return f"[{perm}]({body})"


@dataclass(frozen=True)
class ColorSignature:
    inputs: tuple[GroupElement, ...]
    output: GroupElement


def color_condition(sigma: Permutation, b: tuple[GroupElement, ...],
                    colors: tuple[GroupElement, ...]) -> GroupElement:
    """Product of the position holonomies ``b_p g_{sigma^{-1}(p)} b_p^{-1}``
    in ascending position order."""
    group = colors[0].group
    inv = sigma.inverse()
    terms = [b[p - 1] * colors[inv(p) - 1] * b[p - 1].inverse()
             for p in range(1, len(b) + 1)]
    return product_of(terms, group)


def holonomies(x: DecoratedTuple) -> tuple[GroupElement, ...]:
    """Per-position holonomy of a colored tuple, as a bare tuple."""
    if x.is_bare():
        return x.b
    inv = x.sigma.inverse()
    return tuple(x.b[p - 1] * x.colors[inv(p) - 1] * x.b[p - 1].inverse()
                 for p in range(1, x.size + 1))


def boundary_colors(x: DecoratedTuple) -> ColorSignature:
    if x.is_bare():
        if not x.b:
            raise HurwitzError("empty bare tuple has no boundary")
        return ColorSignature(x.b, product_of(x.b, x.group))
    return ColorSignature(x.colors, color_condition(x.sigma, x.b, x.colors))


def hurwitz_generator(x: DecoratedTuple, letter: int) -> DecoratedTuple:
    """Apply one signed generator at position ``abs(letter)``."""
    j = abs(letter)
    if not 1 <= j <= x.size - 1:
        raise HurwitzError(f"generator {letter} out of range for size {x.size}")
    b = list(x.b)
    if x.is_bare():
        if letter > 0:
            b[j - 1], b[j] = b[j - 1] * b[j] * b[j - 1].inverse(), b[j - 1]
        else:
            b[j - 1], b[j] = b[j], b[j].inverse() * b[j - 1] * b[j]
        return DecoratedTuple(tuple(b))
    inv = x.sigma.inverse()
    if letter > 0:
        g = x.colors[inv(j) - 1]  # color arriving at position j
        b[j - 1], b[j] = (b[j - 1] * g * b[j - 1].inverse()) * b[j], b[j - 1]
    else:
        g = x.colors[inv(j + 1) - 1]
        hol = b[j] * g * b[j].inverse()
        b[j - 1], b[j] = b[j], hol.inverse() * b[j - 1]
    sigma = Permutation.transposition(j, x.size) @ x.sigma
    return DecoratedTuple(tuple(b), sigma, x.colors)


def braid_act(w: BraidWord, x: DecoratedTuple) -> DecoratedTuple:
    """Act by a braid word, rightmost letter first."""
    if w.strands != x.size:
        raise HurwitzError("strand count does not match tuple size")
    for l in reversed(w.letters):
        x = hurwitz_generator(x, l)
    return x


def conjugate_act(h: GroupElement, x: DecoratedTuple) -> DecoratedTuple:
    """Global symmetry by a group element: conjugate every entry of a bare
    tuple, or left-translate every decoration of a colored one.  Either way
    the boundary output is conjugated by h and the action commutes with every
    braid generator."""
    if x.is_bare():
        return DecoratedTuple(tuple(h * t * h.inverse() for t in x.b))
    return DecoratedTuple(tuple(h * t for t in x.b), x.sigma, x.colors)


# -- components and orbits -----------------------------------------------


def component_objects(colors: tuple[GroupElement, ...],
                      output: GroupElement) -> list[DecoratedTuple]:
    """All colored tuples with the given input colors and boundary output,
    in sorted order."""
    group = output.group
    r = len(colors)
    out = []
    for sigma in all_permutations(r):
        for b in itertools.product(group.elements(), repeat=r):
            if color_condition(sigma, b, colors) == output:
                out.append(DecoratedTuple(b, sigma, colors))
    out.sort()
    return out


def _neighbors(x: DecoratedTuple):
    for j in range(1, x.size):
        yield hurwitz_generator(x, j)
        yield hurwitz_generator(x, -j)


def orbit(x: DecoratedTuple) -> tuple[DecoratedTuple, ...]:
    """Braid-word orbit of a point, sorted; first entry is the canonical
    representative."""
    seen = {x}
    queue = deque([x])
    while queue:
        y = queue.popleft()
        for z in _neighbors(y):
            if z not in seen:
                seen.add(z)
                queue.append(z)
    return tuple(sorted(seen))


def _partition(points) -> list[tuple[DecoratedTuple, ...]]:
    remaining = set(points)
    orbits = []
    while remaining:
        x = min(remaining)
        o = orbit(x)
        orbits.append(o)
        remaining -= set(o)
    orbits.sort(key=lambda o: o[0].sort_key())
    return orbits


def pi0_component(colors: tuple[GroupElement, ...],
                  output: GroupElement) -> list[tuple[DecoratedTuple, ...]]:
    """Orbit decomposition of one boundary component, deterministically
    ordered by canonical representatives."""
    return _partition(component_objects(colors, output))


def pi0_hurwitz_space(group: FiniteGroup, r: int) -> list[tuple[DecoratedTuple, ...]]:
    """Orbit decomposition of the bare space ``G^r``."""
    return _partition(DecoratedTuple(b)
                      for b in itertools.product(group.elements(), repeat=r))


# -- parsing -------------------------------------------------------------


def parse_tuple(text: str, group: FiniteGroup) -> tuple[GroupElement, ...]:
    """Comma-separated element indices, e.g. ``"1,2,0"``."""
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(group.element(int(t)) for t in text.split(","))
    except (ValueError, IndexError):
        raise HurwitzError(f"bad tuple {text!r}") from None


def format_tuple(elements: tuple[GroupElement, ...]) -> str:
    return ",".join(str(e.index) for e in elements)


def parse_signature(text: str, group: FiniteGroup) -> ColorSignature:
    """``"g1,...,gr->h"`` with element indices, e.g. ``"2,5->4"``."""
    if "->" not in text:
        raise HurwitzError(f"bad signature {text!r}: expected 'colors->output'")
    left, _, right = text.partition("->")
    inputs = parse_tuple(left, group)
    try:
        output = group.element(int(right.strip()))
    except (ValueError, IndexError):
        raise HurwitzError(f"bad signature output {right!r}") from None
    return ColorSignature(inputs, output)


def format_signature(sig: ColorSignature) -> str:
    return f"{format_tuple(sig.inputs)}->{sig.output.index}"
