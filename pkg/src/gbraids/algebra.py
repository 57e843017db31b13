"""Scalar crossed structures on the skeletal model, and coherence solving.

A one-dimensional datum assigns to every structural generator instance a
scalar, taken here in the cyclic group of order ``modulus`` written
additively (so 0 is the trivial scalar and, for modulus 2, 1 plays the role
of a sign).  A generator instance is keyed by the output colors visible at
its application site, so for a group of order n there are

    alpha n^3 + ell n + r n + beta n^3 + gamma n^3 + delta n + eps n + c n^2

scalar variables (36 for n = 2).  A datum is coherent when every relation
in the bundled table evaluates to the same scalar along both sides for
every color assignment.  Both sides of a relation are products of
variables and inverse variables, so coherence is a homogeneous linear
condition; ``solve_coherence`` nevertheless enumerates solutions by plain
backtracking over the canonical variable order, with an instance cap, and
leaves linear-algebra shortcuts to callers who want an independent check.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .groups import FiniteGroup, GroupElement
from .operad import CapExceeded
from .relations import (GENERATORS, MorphismWord, apply_generator,
                        build_source, load_relation_table,
                        relation_assignments)
from .trees import GTree, output_color, subtree_at, validate


class AlgebraError(ValueError):
    pass


_KEY_ARITY = {
    "alpha": 3,   # output colors of the three tensorands
    "ell": 1,     # output color of the non-unit factor
    "r": 1,
    "beta": 3,    # the shared label, then the two child output colors
    "gamma": 3,   # outer label, inner label, child output color
    "delta": 1,   # child output color
    "eps": 1,     # the discarded label
    "c": 2,       # output colors of the two factors, in source order
}


def variable_order(group: FiniteGroup) -> tuple[tuple[str, tuple[int, ...]], ...]:
    """Canonical flat ordering of all scalar variables for one group."""
    out = []
    for gen in GENERATORS:
        for key in itertools.product(range(group.order),
                                     repeat=_KEY_ARITY[gen]):
            out.append((gen, key))
    return tuple(out)


def _variable_key(sub: GTree, gen: str, group: FiniteGroup) -> tuple[int, ...]:
    """Key of the generator instance whose forward source is ``sub``."""
    def out(t):
        return output_color(t, group).index

    if gen == "alpha":
        return (out(sub.left.left), out(sub.left.right), out(sub.right))
    if gen == "ell":
        return (out(sub.right),)
    if gen == "r":
        return (out(sub.left),)
    if gen == "beta":
        return (sub.left.label.index, out(sub.left.child), out(sub.right.child))
    if gen == "gamma":
        return (sub.label.index, sub.child.label.index, out(sub.child.child))
    if gen == "delta":
        return (out(sub.child),)
    if gen == "eps":
        return (sub.label.index,)
    return (out(sub.left), out(sub.right))  # c


def morphism_variables(source: GTree, word: MorphismWord,
                       group: FiniteGroup):
    """Walk a word and report ((gen, key), sign) per letter plus the target.

    Forward letters read their key off the subtree they rewrite; inverse
    letters read it off the result, which has the forward source shape.
    """
    tree = source
    terms = []
    for letter in word.letters:
        after = apply_generator(tree, letter, group)
        shaped = subtree_at(after if letter.inverse else tree, letter.path)
        key = _variable_key(shaped, letter.gen, group)
        terms.append(((letter.gen, key), -1 if letter.inverse else 1))
        tree = after
    return tree, terms


@dataclass(frozen=True)
class CrossedAlgebraData:
    group: FiniteGroup
    modulus: int
    values: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.modulus < 1:
            raise AlgebraError("modulus must be positive")
        order = variable_order(self.group)
        missing = [v for v in order if v not in self.values]
        extra = [v for v in self.values if v not in set(order)]
        if missing or extra:
            raise AlgebraError(
                f"variable table mismatch: {len(missing)} missing, "
                f"{len(extra)} unexpected")
        for v, x in self.values.items():
            if not isinstance(x, int) or not 0 <= x < self.modulus:
                raise AlgebraError(f"value {x!r} for {v} out of range")

    def scalar(self, gen: str, key: tuple[int, ...]) -> int:
        return self.values[(gen, key)]

    def to_vector(self) -> tuple[int, ...]:
        return tuple(self.values[v] for v in variable_order(self.group))

    @classmethod
    def from_vector(cls, group: FiniteGroup, modulus: int,
                    vector) -> "CrossedAlgebraData":
        order = variable_order(group)
        vector = tuple(vector)
        if len(vector) != len(order):
            raise AlgebraError(
                f"expected {len(order)} entries, got {len(vector)}")
        return cls(group, modulus, dict(zip(order, vector)))

    @classmethod
    def trivial(cls, group: FiniteGroup, modulus: int = 2) -> "CrossedAlgebraData":
        return cls.from_vector(group, modulus,
                               [0] * len(variable_order(group)))

    def to_json(self) -> dict:
        return {
            "group": self.group.label,
            "modulus": self.modulus,
            "values": {
                f"{gen}:{','.join(map(str, key))}": self.values[(gen, key)]
                for gen, key in variable_order(self.group)
            },
        }

    @classmethod
    def from_json(cls, group: FiniteGroup, payload: dict) -> "CrossedAlgebraData":
        if payload.get("group") != group.label:
            raise AlgebraError(
                f"data is for group {payload.get('group')!r}, not {group.label!r}")
        values = {}
        for name, x in payload["values"].items():
            gen, _, rest = name.partition(":")
            key = tuple(int(p) for p in rest.split(",")) if rest else ()
            values[(gen, key)] = x
        return cls(group, payload["modulus"], values)


def evaluate_object(data: CrossedAlgebraData, tree: GTree) -> GroupElement:
    """Objects are one-dimensional lines; the invariant content is the
    grading, i.e. the output color."""
    validate(tree, data.group)
    return output_color(tree, data.group)


def evaluate_morphism(data: CrossedAlgebraData, source: GTree,
                      word: MorphismWord) -> int:
    """The scalar of a structural word, as an exponent mod ``modulus``."""
    _, terms = morphism_variables(source, word, data.group)
    total = 0
    for (gen, key), sign in terms:
        total += sign * data.scalar(gen, key)
    return total % data.modulus


# -- coherence -----------------------------------------------------------


def coherence_equations(group: FiniteGroup, relation_ids=None):
    """One homogeneous linear constraint per relation instance.

    Each equation is a dict mapping variables to integer coefficients;
    sides with identical variable content cancel to nothing and are
    dropped.  Duplicate equations are kept once, in first-seen order.
    """
    table = load_relation_table()
    if relation_ids is not None:
        table = [e for e in table if e["id"] in set(relation_ids)]
    seen = set()
    equations = []
    for entry in table:
        lhs = MorphismWord.from_json(entry["lhs"])
        rhs = MorphismWord.from_json(entry["rhs"])
        for assignment in relation_assignments(group, entry):
            source = build_source(entry, group, assignment)
            _, left = morphism_variables(source, lhs, group)
            _, right = morphism_variables(source, rhs, group)
            coeffs: dict = {}
            for var, sign in left:
                coeffs[var] = coeffs.get(var, 0) + sign
            for var, sign in right:
                coeffs[var] = coeffs.get(var, 0) - sign
            coeffs = {v: c for v, c in coeffs.items() if c != 0}
            if not coeffs:
                continue
            fingerprint = frozenset(coeffs.items())
            if fingerprint in seen:
                continue
            seen.add(fingerprint)
            equations.append(coeffs)
    return equations


def check_coherence(data: CrossedAlgebraData, relation_ids=None,
                    max_reported: int = 20) -> dict:
    """Evaluate every relation instance on both sides and compare."""
    group = data.group
    table = load_relation_table()
    if relation_ids is not None:
        table = [e for e in table if e["id"] in set(relation_ids)]
    relations = []
    total_failures = 0
    for entry in table:
        lhs = MorphismWord.from_json(entry["lhs"])
        rhs = MorphismWord.from_json(entry["rhs"])
        checked = 0
        failures = []
        failure_count = 0
        for assignment in relation_assignments(group, entry):
            source = build_source(entry, group, assignment)
            left = evaluate_morphism(data, source, lhs)
            right = evaluate_morphism(data, source, rhs)
            checked += 1
            if left != right:
                failure_count += 1
                if len(failures) < max_reported:
                    failures.append({
                        "assignment": {k: v.index for k, v in assignment.items()},
                        "lhs": left,
                        "rhs": right,
                    })
        total_failures += failure_count
        relations.append({
            "relation": entry["id"],
            "assignments_checked": checked,
            "failure_count": failure_count,
            "failures": failures,
        })
    return {
        "group": group.label,
        "modulus": data.modulus,
        "relations": relations,
        "total_failures": total_failures,
        "coherent": total_failures == 0,
    }


def solve_coherence(group: FiniteGroup, modulus: int = 2, relation_ids=None,
                    cap: int = 1_000_000) -> list[CrossedAlgebraData]:
    """All coherent data over one group, in lexicographic vector order.

    Plain depth-first backtracking over the canonical variable order.  An
    equation prunes as soon as its last variable is assigned.  Every value
    trial counts against ``cap``; exceeding it raises :class:`CapExceeded`.
    """
    order = variable_order(group)
    index = {v: i for i, v in enumerate(order)}
    due: list[list[dict]] = [[] for _ in order]
    for eq in coherence_equations(group, relation_ids):
        last = max(index[v] for v in eq)
        due[last].append({index[v]: c for v, c in eq.items()})

    n = len(order)
    vector = [0] * n
    solutions = []
    budget = cap

    def descend(i):
        nonlocal budget
        if i == n:
            solutions.append(CrossedAlgebraData.from_vector(
                group, modulus, tuple(vector)))
            return
        for value in range(modulus):
            budget -= 1
            if budget < 0:
                raise CapExceeded(
                    f"coherence search exceeded {cap} value trials")
            vector[i] = value
            if all(sum(c * vector[j] for j, c in eq.items()) % modulus == 0
                   for eq in due[i]):
                descend(i + 1)
        vector[i] = 0

    descend(0)
    return solutions


def builtin_group_example(modulus: int = 2) -> CrossedAlgebraData:
    """A nontrivial coherent datum over the two-element group: the sign
    braiding that is -1 exactly on the pair of nontrivial colors."""
    from .groups import make_group
    group = make_group("C2")
    if modulus % 2:
        raise AlgebraError("the sign braiding needs an even modulus")
    values = {v: 0 for v in variable_order(group)}
    values[("c", (1, 1))] = modulus // 2
    return CrossedAlgebraData(group, modulus, values)
