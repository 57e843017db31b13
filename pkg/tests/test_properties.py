"""Randomized law checking across modules.

These are the invariants the rest of the suite relies on, restated as
properties over generated inputs rather than enumerated ones.
"""
import hypothesis.strategies as st
from hypothesis import given, settings

from gbraids.algebra import CrossedAlgebraData, check_coherence
from gbraids.braids import (BraidWord, Permutation, all_permutations,
                            cable_compose, cable_permutation, braids_equal,
                            normal_form, underlying_permutation)
from gbraids.groups import make_group
from gbraids.hurwitz import (DecoratedTuple, boundary_colors, braid_act,
                             color_condition)
from gbraids.trees import compose_normal, denormalize, normalize, output_color, random_tree

GROUP_SPECS = ("C2", "C3", "C4", "S3", "D4")


@st.composite
def braid_words(draw, min_strands=1, max_strands=4, max_letters=6):
    n = draw(st.integers(min_strands, max_strands))
    if n == 1:
        return BraidWord(1, ())
    letters = draw(st.lists(
        st.integers(1, n - 1).flatmap(
            lambda j: st.sampled_from((j, -j))),
        max_size=max_letters))
    return BraidWord(n, tuple(letters))


@st.composite
def decorated_tuples(draw, max_r=3):
    group = make_group(draw(st.sampled_from(GROUP_SPECS)))
    r = draw(st.integers(1, max_r))
    els = group.elements()
    b = tuple(draw(st.sampled_from(els)) for _ in range(r))
    sigma = draw(st.sampled_from(tuple(all_permutations(r))))
    colors = tuple(draw(st.sampled_from(els)) for _ in range(r))
    return DecoratedTuple(b, sigma, colors)


@given(braid_words())
@settings(max_examples=150, deadline=None)
def test_normal_form_is_idempotent(w):
    nf = normal_form(w)
    assert normal_form(nf) == nf
    assert underlying_permutation(nf) == underlying_permutation(w)


@given(braid_words())
@settings(max_examples=150, deadline=None)
def test_word_times_inverse_is_trivial(w):
    inverse = BraidWord(w.strands, tuple(-l for l in reversed(w.letters)))
    product = BraidWord(w.strands, w.letters + inverse.letters)
    assert braids_equal(product, BraidWord(w.strands, ()))


@given(braid_words(min_strands=2), braid_words(min_strands=2))
@settings(max_examples=100, deadline=None)
def test_equality_respects_concatenation(u, v):
    if u.strands != v.strands:
        v = BraidWord(u.strands, tuple(
            l for l in v.letters if abs(l) < u.strands))
    direct = BraidWord(u.strands, u.letters + v.letters)
    vianf = BraidWord(u.strands,
                      normal_form(u).letters + normal_form(v).letters)
    assert braids_equal(direct, vianf)


@given(braid_words(min_strands=2, max_strands=4),
       st.data())
@settings(max_examples=100, deadline=None)
def test_braid_action_factors_through_letters(w, data):
    group = make_group(data.draw(st.sampled_from(GROUP_SPECS)))
    els = group.elements()
    r = w.strands
    x = DecoratedTuple(
        tuple(data.draw(st.sampled_from(els)) for _ in range(r)),
        data.draw(st.sampled_from(tuple(all_permutations(r)))),
        tuple(data.draw(st.sampled_from(els)) for _ in range(r)))
    cut = data.draw(st.integers(0, len(w.letters)))
    left = BraidWord(r, w.letters[:cut])
    right = BraidWord(r, w.letters[cut:])
    assert braid_act(w, x) == braid_act(left, braid_act(right, x))


@given(braid_words(min_strands=2, max_strands=4), st.data())
@settings(max_examples=100, deadline=None)
def test_braid_action_invariants(w, data):
    group = make_group(data.draw(st.sampled_from(GROUP_SPECS)))
    els = group.elements()
    r = w.strands
    x = DecoratedTuple(
        tuple(data.draw(st.sampled_from(els)) for _ in range(r)),
        data.draw(st.sampled_from(tuple(all_permutations(r)))),
        tuple(data.draw(st.sampled_from(els)) for _ in range(r)))
    y = braid_act(w, x)
    # boundary data is preserved, and equal braids act equally
    assert boundary_colors(y) == boundary_colors(x)
    assert braid_act(normal_form(w), x) == y


@given(decorated_tuples())
@settings(max_examples=200, deadline=None)
def test_denormalize_round_trip(x):
    assert normalize(denormalize(x)) == x


@given(st.sampled_from(GROUP_SPECS), st.integers(1, 4), st.randoms())
@settings(max_examples=100, deadline=None)
def test_random_tree_output_matches_normal_form(spec, r, rng):
    group = make_group(spec)
    tree = random_tree(group, r, rng)
    nf = normalize(tree, group)
    assert color_condition(nf.sigma, nf.b, nf.colors) == output_color(tree, group)


@given(decorated_tuples(max_r=2), st.data())
@settings(max_examples=100, deadline=None)
def test_splice_associativity(x, data):
    group = x.group
    els = group.elements()

    def filler(r):
        b = tuple(data.draw(st.sampled_from(els)) for _ in range(r))
        sigma = data.draw(st.sampled_from(tuple(all_permutations(r))))
        colors = tuple(data.draw(st.sampled_from(els)) for _ in range(r))
        return DecoratedTuple(b, sigma, colors)

    j = data.draw(st.integers(1, x.size))
    y = filler(data.draw(st.integers(1, 2)))
    # retune the outer color so the splice is defined
    x = DecoratedTuple(x.b, x.sigma, tuple(
        color_condition(y.sigma, y.b, y.colors) if i == j - 1 else c
        for i, c in enumerate(x.colors)))
    k = data.draw(st.integers(1, y.size))
    z = filler(data.draw(st.integers(1, 2)))
    y = DecoratedTuple(y.b, y.sigma, tuple(
        color_condition(z.sigma, z.b, z.colors) if i == k - 1 else c
        for i, c in enumerate(y.colors)))
    x = DecoratedTuple(x.b, x.sigma, tuple(
        color_condition(y.sigma, y.b, y.colors) if i == j - 1 else c
        for i, c in enumerate(x.colors)))
    nested = compose_normal(x, j, compose_normal(y, k, z))
    flat = compose_normal(compose_normal(x, j, y), j + k - 1, z)
    assert nested == flat


@given(braid_words(min_strands=1, max_strands=3),
       braid_words(min_strands=1, max_strands=3),
       st.data())
@settings(max_examples=150, deadline=None)
def test_cable_permutation_matches_cable_compose(u, v, data):
    j = data.draw(st.integers(1, u.strands))
    assert underlying_permutation(cable_compose(u, j, v)) == \
        cable_permutation(underlying_permutation(u), j,
                          underlying_permutation(v))


@given(st.sampled_from(("C2", "C3")), st.integers(2, 5))
@settings(max_examples=60, deadline=None)
def test_trivial_algebra_data_is_coherent(spec, modulus):
    group = make_group(spec)
    datum = CrossedAlgebraData.trivial(group, modulus)
    assert check_coherence(datum)["coherent"]
