"""Labeled parenthesized trees and their normal forms.

A tree is built from four node kinds: numbered input leaves carrying a color
(``leaf:3:g`` is slot 3 with color g), the unit leaf ``U``, a unary label
edge ``L[h](...)``, and the binary tensor ``T(..., ...)``.  Slots number the
inputs 1..r in any order; the left-to-right order of the leaves in the tree
is the *position* order.

``normalize`` pushes every label down to the leaves (a label edge acts on
both tensor children, and conjugates the output color) and records the
result as a colored decorated tuple: ``sigma`` maps slot to position, the
decoration ``b_p`` is the product of the labels accumulated along the path
to the leaf in position p, and the colors stay indexed by slot.
``denormalize`` rebuilds the left-parenthesized comb, so the two maps are
mutually inverse bijections between normal forms and component objects.

Grafting substitutes a tree for an input leaf of matching color;
``compose_normal`` performs the same operation directly on normal forms by
splicing the inner positions into the outer position of the replaced slot
and left-multiplying the inner decorations by the outer one.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .braids import Permutation
from .groups import FiniteGroup, GroupElement
from .hurwitz import DecoratedTuple, color_condition


class TreeError(ValueError):
    pass


@dataclass(frozen=True)
class InputLeaf:
    slot: int
    color: GroupElement


@dataclass(frozen=True)
class UnitLeaf:
    pass


@dataclass(frozen=True)
class LabelEdge:
    label: GroupElement
    child: "GTree"


@dataclass(frozen=True)
class Tensor:
    left: "GTree"
    right: "GTree"


GTree = Union[InputLeaf, UnitLeaf, LabelEdge, Tensor]

# a normal form is exactly a colored decorated tuple
NormalForm = DecoratedTuple


def tree_group(t: GTree) -> Optional[FiniteGroup]:
    if isinstance(t, InputLeaf):
        return t.color.group
    if isinstance(t, LabelEdge):
        return t.label.group
    if isinstance(t, Tensor):
        return tree_group(t.left) or tree_group(t.right)
    return None


def leaf_count(t: GTree) -> int:
    if isinstance(t, InputLeaf):
        return 1
    if isinstance(t, LabelEdge):
        return leaf_count(t.child)
    if isinstance(t, Tensor):
        return leaf_count(t.left) + leaf_count(t.right)
    return 0


def output_color(t: GTree, group: Optional[FiniteGroup] = None) -> GroupElement:
    g = tree_group(t) or group
    if g is None:
        raise TreeError("cannot determine the group of an all-unit tree")
    if isinstance(t, InputLeaf):
        return t.color
    if isinstance(t, UnitLeaf):
        return g.identity
    if isinstance(t, LabelEdge):
        return t.label * output_color(t.child, g) * t.label.inverse()
    return output_color(t.left, g) * output_color(t.right, g)


def validate(t: GTree, group: Optional[FiniteGroup] = None) -> int:
    """Check slot numbering (1..r, each once) and group consistency; return r."""
    slots = []
    groups = set()

    def walk(node):
        if isinstance(node, InputLeaf):
            slots.append(node.slot)
            groups.add(node.color.group)
        elif isinstance(node, LabelEdge):
            groups.add(node.label.group)
            walk(node.child)
        elif isinstance(node, Tensor):
            walk(node.left)
            walk(node.right)

    walk(t)
    if group is not None:
        groups.add(group)
    if len(groups) > 1:
        raise TreeError("mixed groups in one tree")
    if sorted(slots) != list(range(1, len(slots) + 1)):
        raise TreeError(f"bad slot numbering {sorted(slots)}")
    return len(slots)


# -- navigation ----------------------------------------------------------


def subtree_at(t: GTree, path: tuple[int, ...]) -> GTree:
    """Child 0/1 of a tensor, child 0 of a label edge."""
    for step in path:
        if isinstance(t, Tensor):
            if step not in (0, 1):
                raise TreeError(f"bad path step {step} at tensor")
            t = t.left if step == 0 else t.right
        elif isinstance(t, LabelEdge):
            if step != 0:
                raise TreeError(f"bad path step {step} at label edge")
            t = t.child
        else:
            raise TreeError("path descends past a leaf")
    return t


def replace_at(t: GTree, path: tuple[int, ...], sub: GTree) -> GTree:
    if not path:
        return sub
    step, rest = path[0], path[1:]
    if isinstance(t, Tensor):
        if step == 0:
            return Tensor(replace_at(t.left, rest, sub), t.right)
        if step == 1:
            return Tensor(t.left, replace_at(t.right, rest, sub))
    if isinstance(t, LabelEdge) and step == 0:
        return LabelEdge(t.label, replace_at(t.child, rest, sub))
    raise TreeError(f"bad path step {step}")


def leaf_offset(t: GTree, path: tuple[int, ...]) -> int:
    """Number of input leaves strictly to the left of the subtree at path."""
    offset = 0
    for step in path:
        if isinstance(t, Tensor):
            if step == 1:
                offset += leaf_count(t.left)
            t = t.left if step == 0 else t.right
        elif isinstance(t, LabelEdge):
            t = t.child
        else:
            raise TreeError("path descends past a leaf")
    return offset


# -- normal forms --------------------------------------------------------


def normalize(t: GTree, group: Optional[FiniteGroup] = None) -> NormalForm:
    g = tree_group(t) or group
    if g is None:
        raise TreeError("cannot normalize an all-unit tree without a group")
    r = validate(t, g)
    # (slot, accumulated label, color) in left-to-right leaf order
    entries: list[tuple[int, GroupElement, GroupElement]] = []

    def walk(node, outer: GroupElement):
        if isinstance(node, InputLeaf):
            entries.append((node.slot, outer, node.color))
        elif isinstance(node, LabelEdge):
            walk(node.child, outer * node.label)
        elif isinstance(node, Tensor):
            walk(node.left, outer)
            walk(node.right, outer)

    walk(t, g.identity)
    images = [0] * r
    colors = [None] * r
    decorations = []
    for position, (slot, label, color) in enumerate(entries, start=1):
        images[slot - 1] = position
        colors[slot - 1] = color
        decorations.append(label)
    return NormalForm(tuple(decorations), Permutation(tuple(images)),
                      tuple(colors))


def denormalize(nf: NormalForm) -> GTree:
    """The left-parenthesized comb in position order; identity labels are
    omitted."""
    if nf.is_bare():
        raise TreeError("normal forms are colored tuples")
    r = nf.size
    if r == 0:
        return UnitLeaf()
    inv = nf.sigma.inverse()

    def limb(p: int) -> GTree:
        slot = inv(p)
        leaf = InputLeaf(slot, nf.colors[slot - 1])
        label = nf.b[p - 1]
        return leaf if label.is_identity() else LabelEdge(label, leaf)

    tree = limb(1)
    for p in range(2, r + 1):
        tree = Tensor(tree, limb(p))
    return tree


def identity_normal_form(color: GroupElement) -> NormalForm:
    return NormalForm((color.group.identity,), Permutation((1,)), (color,))


def graft(outer: GTree, j: int, inner: GTree) -> GTree:
    """Substitute ``inner`` for input leaf j of ``outer``, renumbering slots:
    inner slots become j..j+s-1, later outer slots shift up by s-1."""
    s = validate(inner)
    r = validate(outer)
    if not 1 <= j <= r:
        raise TreeError(f"slot {j} out of range")

    def shift(node, offset):
        if isinstance(node, InputLeaf):
            return InputLeaf(node.slot + offset, node.color)
        if isinstance(node, LabelEdge):
            return LabelEdge(node.label, shift(node.child, offset))
        if isinstance(node, Tensor):
            return Tensor(shift(node.left, offset), shift(node.right, offset))
        return node

    def subst(node):
        if isinstance(node, InputLeaf):
            if node.slot == j:
                if output_color(inner, node.color.group) != node.color:
                    raise TreeError(
                        "output color of the grafted tree does not match")
                return shift(inner, j - 1)
            if node.slot > j:
                return InputLeaf(node.slot + s - 1, node.color)
            return node
        if isinstance(node, LabelEdge):
            return LabelEdge(node.label, subst(node.child))
        if isinstance(node, Tensor):
            return Tensor(subst(node.left), subst(node.right))
        return node

    return subst(outer)


def compose_normal(outer: NormalForm, j: int, inner: NormalForm) -> NormalForm:
    """Grafting computed directly on normal forms."""
    r, s = outer.size, inner.size
    if not 1 <= j <= r:
        raise TreeError(f"slot {j} out of range")
    if s == 0:
        raise TreeError("cannot graft an empty tree into a slot")
    inner_out = color_condition(inner.sigma, inner.b, inner.colors)
    if inner_out != outer.colors[j - 1]:
        raise TreeError("output color of the grafted tree does not match")
    P = outer.sigma(j)
    b = (outer.b[:P - 1]
         + tuple(outer.b[P - 1] * x for x in inner.b)
         + outer.b[P:])
    colors = outer.colors[:j - 1] + inner.colors + outer.colors[j:]
    images = [0] * (r + s - 1)
    for k in range(1, r + 1):
        if k == j:
            continue
        p = outer.sigma(k)
        images[(k if k < j else k + s - 1) - 1] = p if p < P else p + s - 1
    for i in range(1, s + 1):
        images[j + i - 2] = P + inner.sigma(i) - 1
    return NormalForm(b, Permutation(tuple(images)), colors)


# -- concrete syntax -----------------------------------------------------


def format_tree(t: GTree) -> str:
    if isinstance(t, InputLeaf):
        return f"leaf:{t.slot}:{t.color.index}"
    if isinstance(t, UnitLeaf):
        return "U"
    if isinstance(t, LabelEdge):
        return f"L[{t.label.index}]({format_tree(t.child)})"
    return f"T({format_tree(t.left)},{format_tree(t.right)})"


class _Parser:
    def __init__(self, text: str, group: FiniteGroup, symbols):
        self.text = text
        self.pos = 0
        self.group = group
        self.symbols = symbols or {}

    def error(self, message):
        raise TreeError(f"{message} at offset {self.pos} in {self.text!r}")

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def expect(self, ch):
        self.skip_ws()
        if self.pos >= len(self.text) or self.text[self.pos] != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def symbol(self, stop: str) -> GroupElement:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] not in stop \
                and not self.text[self.pos].isspace():
            self.pos += 1
        name = self.text[start:self.pos]
        if name in self.symbols:
            return self.symbols[name]
        try:
            return self.group.element(int(name))
        except (ValueError, IndexError):
            self.error(f"unknown element {name!r}")

    def integer(self, stop: str) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] not in stop:
            self.pos += 1
        try:
            return int(self.text[start:self.pos])
        except ValueError:
            self.error("expected an integer")

    def tree(self) -> GTree:
        self.skip_ws()
        if self.text.startswith("T(", self.pos):
            self.pos += 2
            left = self.tree()
            self.expect(",")
            right = self.tree()
            self.expect(")")
            return Tensor(left, right)
        if self.text.startswith("L[", self.pos):
            self.pos += 2
            label = self.symbol("]")
            self.expect("]")
            self.expect("(")
            child = self.tree()
            self.expect(")")
            return LabelEdge(label, child)
        if self.text.startswith("leaf:", self.pos):
            self.pos += 5
            slot = self.integer(":")
            self.expect(":")
            color = self.symbol("(),]")
            return InputLeaf(slot, color)
        if self.text.startswith("U", self.pos):
            self.pos += 1
            return UnitLeaf()
        self.error("expected a tree")


def parse_tree(text: str, group: FiniteGroup,
               symbols: Optional[dict] = None) -> GTree:
    """Read the ``T(L[h](leaf:1:g), leaf:2:k)`` syntax.  Labels and colors are
    element indices, or names resolved through ``symbols``."""
    parser = _Parser(text, group, symbols)
    tree = parser.tree()
    parser.skip_ws()
    if parser.pos != len(text):
        parser.error("trailing input")
    return tree


def random_tree(group: FiniteGroup, r: int, rng,
                label_chance: float = 0.5) -> GTree:
    """A random tree with slots 1..r (seeded by the caller's rng); used by
    tests and the sampling checks."""
    slots = list(range(1, r + 1))
    rng.shuffle(slots)
    leaves: list[GTree] = [
        InputLeaf(s, group.element(rng.randrange(group.order))) for s in slots]
    if not leaves:
        leaves = [UnitLeaf()]
    while len(leaves) > 1:
        i = rng.randrange(len(leaves) - 1)
        node = Tensor(leaves[i], leaves[i + 1])
        if rng.random() < label_chance:
            node = LabelEdge(group.element(rng.randrange(group.order)), node)
        leaves[i:i + 2] = [node]
    t = leaves[0]
    if rng.random() < label_chance:
        t = LabelEdge(group.element(rng.randrange(group.order)), t)
    return t
