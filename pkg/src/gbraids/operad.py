"""The colored composition structure on normal forms, with axiom checking.

Operations of arity r colored by a group G are the normal forms: a slot
permutation, a decoration per position, and a color per slot, with the
boundary output determined by the holonomy product.  Slot grafting
(``compose_normal``) makes these a colored operad on the nose; symmetric
groups act by relabeling slots.  ``check_operad_axioms`` walks deterministic
streams of axiom instances — sequential and parallel associativity, both
unit laws, and both equivariance laws — and verifies each by direct
computation, stopping at a configurable instance cap since the full instance
space grows with ``|G|^(2r) r!``.

A report is complete when every stream was exhausted below the cap;
otherwise it is a capped prefix of the (fixed) enumeration order.
"""
from __future__ import annotations

import itertools
from dataclasses import asdict, dataclass
from functools import lru_cache

from .braids import Permutation, all_permutations, cable_permutation
from .groups import FiniteGroup, GroupElement
from .hurwitz import DecoratedTuple, color_condition, component_objects, pi0_component
from .trees import compose_normal, identity_normal_form


class OperadError(ValueError):
    pass


class CapExceeded(RuntimeError):
    """Raised when a bounded search uses up its instance budget."""


@dataclass(frozen=True)
class Bounds:
    max_arity: int = 3
    max_order: int = 6
    cap: int = 1_000_000


def sigma_action(x: DecoratedTuple, rho: Permutation) -> DecoratedTuple:
    """Right action relabeling slots: new slot k is old slot rho(k); the
    positions and their decorations do not move."""
    if x.size != rho.size:
        raise OperadError("permutation size does not match arity")
    colors = tuple(x.colors[rho(k) - 1] for k in range(1, x.size + 1))
    return DecoratedTuple(x.b, x.sigma @ rho, colors)


@lru_cache(maxsize=256)
def _component(colors, output):
    return tuple(component_objects(colors, output))


class ColoredOperadModel:
    """All operations over one finite group, within stated bounds."""

    def __init__(self, group: FiniteGroup, bounds: Bounds = Bounds()):
        if group.order > bounds.max_order:
            raise OperadError(
                f"group order {group.order} exceeds bound {bounds.max_order}")
        self.group = group
        self.bounds = bounds

    def colors(self):
        return self.group.elements()

    def operations(self, colors: tuple[GroupElement, ...],
                   output: GroupElement) -> tuple[DecoratedTuple, ...]:
        if len(colors) > self.bounds.max_arity:
            raise OperadError("arity exceeds bound")
        return _component(tuple(colors), output)

    def all_operations(self, r: int):
        """Every operation of arity r, in a fixed lexicographic order."""
        if r > self.bounds.max_arity:
            raise OperadError("arity exceeds bound")
        for colors in itertools.product(self.group.elements(), repeat=r):
            for sigma in all_permutations(r):
                for b in itertools.product(self.group.elements(), repeat=r):
                    yield DecoratedTuple(b, sigma, colors)

    def output(self, x: DecoratedTuple) -> GroupElement:
        return color_condition(x.sigma, x.b, x.colors)

    def compose(self, x: DecoratedTuple, j: int,
                y: DecoratedTuple) -> DecoratedTuple:
        return compose_normal(x, j, y)

    def identity(self, color: GroupElement) -> DecoratedTuple:
        return identity_normal_form(color)

    def act(self, x: DecoratedTuple, rho: Permutation) -> DecoratedTuple:
        return sigma_action(x, rho)

    def pi0(self, colors, output):
        return pi0_component(tuple(colors), output)


def pi0_operad(group: FiniteGroup, bounds: Bounds = Bounds()) -> ColoredOperadModel:
    return ColoredOperadModel(group, bounds)


# -- axiom checking ------------------------------------------------------


def _arities(model, count):
    rng = range(1, model.bounds.max_arity + 1)
    return itertools.product(rng, repeat=count)


def _sequential_instances(model):
    group = model.group
    # composites may exceed the arity bound; only enumerated factors are
    # bounded
    for r, s, t in _arities(model, 3):
        for j in range(1, r + 1):
            for k in range(1, s + 1):
                for x in model.all_operations(r):
                    need = x.colors[j - 1]
                    for cy in itertools.product(group.elements(), repeat=s):
                        for y in model.operations(cy, need):
                            inner_need = y.colors[k - 1]
                            for cz in itertools.product(group.elements(), repeat=t):
                                for z in model.operations(cz, inner_need):
                                    lhs = model.compose(
                                        model.compose(x, j, y), j + k - 1, z)
                                    rhs = model.compose(
                                        x, j, model.compose(y, k, z))
                                    yield (f"r={r} s={s} t={t} j={j} k={k}",
                                           lhs == rhs)


def _parallel_instances(model):
    group = model.group
    for r, s, t in _arities(model, 3):
        if r < 2:
            continue
        for j in range(1, r + 1):
            for i in range(j + 1, r + 1):
                for x in model.all_operations(r):
                    for cy in itertools.product(group.elements(), repeat=s):
                        for y in model.operations(cy, x.colors[j - 1]):
                            for cz in itertools.product(group.elements(), repeat=t):
                                for z in model.operations(cz, x.colors[i - 1]):
                                    lhs = model.compose(
                                        model.compose(x, j, y), i + s - 1, z)
                                    rhs = model.compose(
                                        model.compose(x, i, z), j, y)
                                    yield (f"r={r} s={s} t={t} j={j} i={i}",
                                           lhs == rhs)


def _unit_instances(model):
    for r in range(1, model.bounds.max_arity + 1):
        for x in model.all_operations(r):
            ok = model.compose(identity_normal_form(model.output(x)), 1, x) == x
            for j in range(1, r + 1):
                ok = ok and \
                    model.compose(x, j, identity_normal_form(x.colors[j - 1])) == x
            yield (f"r={r}", ok)


def _equivariance_instances(model):
    group = model.group
    for r, s in _arities(model, 2):
        perms_r = all_permutations(r)
        perms_s = all_permutations(s)
        for j in range(1, r + 1):
            for x in model.all_operations(r):
                for cy in itertools.product(group.elements(), repeat=s):
                    for rho in perms_r:
                        moved = sigma_action(x, rho)
                        for y in model.operations(cy, moved.colors[j - 1]):
                            lhs = model.compose(moved, j, y)
                            rhs = sigma_action(
                                model.compose(x, rho(j), y),
                                cable_permutation(rho, j, Permutation.identity(s)))
                            yield (f"outer r={r} s={s} j={j}", lhs == rhs)
                    for rho in perms_s:
                        for y in model.operations(cy, x.colors[j - 1]):
                            lhs = model.compose(x, j, sigma_action(y, rho))
                            rhs = sigma_action(
                                model.compose(x, j, y),
                                cable_permutation(Permutation.identity(r), j, rho))
                            yield (f"inner r={r} s={s} j={j}", lhs == rhs)


_AXIOM_STREAMS = (
    ("sequential-associativity", _sequential_instances),
    ("parallel-associativity", _parallel_instances),
    ("units", _unit_instances),
    ("equivariance", _equivariance_instances),
)


def check_operad_axioms(model: ColoredOperadModel,
                        max_reported: int = 10) -> dict:
    """Walk each axiom stream up to the model's instance cap."""
    cap = model.bounds.cap
    axioms = []
    total_failures = 0
    complete = True
    for name, stream in _AXIOM_STREAMS:
        instances = 0
        failures = []
        failure_count = 0
        it = stream(model)
        for desc, ok in itertools.islice(it, cap):
            instances += 1
            if not ok:
                failure_count += 1
                if len(failures) < max_reported:
                    failures.append(desc)
        if instances == cap and next(it, None) is not None:
            complete = False
        total_failures += failure_count
        axioms.append({
            "axiom": name,
            "instances": instances,
            "failure_count": failure_count,
            "failures": failures,
        })
    return {
        "group": model.group.label,
        "bounds": asdict(model.bounds),
        "axioms": axioms,
        "total_failures": total_failures,
        "complete": complete,
    }
