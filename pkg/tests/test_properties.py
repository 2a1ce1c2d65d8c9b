"""Hypothesis-driven invariants over randomly built models."""

from hypothesis import assume, given, settings, strategies as st

from imk import (BirelationalModel, FlatWorld, PropModel, as_partial,
                 build_frame, classify, entails, flatten, forces, forces_ik,
                 forces_mk, forces_partial, general_model, is_partial_copy,
                 upward_restrict, validate_partial)
from imk.formulas import And, Atom, BOTTOM, Box, Diamond, Implies, Or

ATOMS = ("p", "q")


def small_formulas(modal=True, depth=3):
    leaves = [Atom(a) for a in ATOMS] + [BOTTOM]
    base = st.sampled_from(leaves)
    unary = ([Box, Diamond] if modal else []) + [lambda f: Implies(f, BOTTOM)]
    return st.recursive(
        base,
        lambda sub: st.one_of(
            st.tuples(st.sampled_from([And, Or, Implies]), sub, sub)
            .map(lambda t: t[0](t[1], t[2])),
            st.tuples(st.sampled_from(unary), sub).map(lambda t: t[0](t[1]))),
        max_leaves=2 ** depth)


@st.composite
def frames(draw, max_worlds=3):
    n = draw(st.integers(1, max_worlds))
    worlds = [f"w{i}" for i in range(1, n + 1)]
    pairs = st.tuples(st.sampled_from(worlds), st.sampled_from(worlds))
    return build_frame(worlds, draw(st.frozensets(pairs)))


@st.composite
def hereditary_vals(draw, frame):
    val = set()
    for atom in ATOMS:
        seeds = draw(st.frozensets(st.sampled_from(frame.sorted_worlds())))
        for w in seeds:
            val |= {(v, atom) for v in frame.above(w)}
    return frozenset(val)


@st.composite
def prop_models(draw, max_worlds=3):
    frame = draw(frames(max_worlds))
    return PropModel(frame, draw(hereditary_vals(frame)))


@st.composite
def birelational_models(draw, max_worlds=3):
    frame = draw(frames(max_worlds))
    worlds = frame.sorted_worlds()
    pairs = st.tuples(st.sampled_from(worlds), st.sampled_from(worlds))
    return BirelationalModel(frame, draw(st.frozensets(pairs)),
                             draw(hereditary_vals(frame)))


@st.composite
def partial_models(draw, max_members=3, max_worlds=3):
    ref = draw(frames(max_worlds))
    count = draw(st.integers(1, max_members))
    members = {}
    for i in range(1, count + 1):
        if i == 1:
            frame = ref
        else:
            root = draw(st.sampled_from(ref.sorted_worlds()))
            frame = upward_restrict(ref, root)
        members[f"K{i}"] = PropModel(frame, draw(hereditary_vals(frame)))
    ids = sorted(members)
    succ = draw(st.frozensets(
        st.tuples(st.sampled_from(ids), st.sampled_from(ids))))
    return as_partial(general_model(members, succ), "K1")


@given(prop_models(), small_formulas(modal=False))
def test_propositional_monotonicity(m, f):
    for a, b in m.frame.le:
        if forces(m, a, f):
            assert forces(m, b, f)


@given(prop_models(), small_formulas(modal=False, depth=2))
def test_entailment_is_monotone_too(m, f):
    gamma = [Atom("p")]
    for a, b in m.frame.le:
        if entails(m, a, gamma, f):
            assert entails(m, b, gamma, f)


@given(birelational_models(), small_formulas())
@settings(max_examples=150)
def test_ik_monotonicity(m, f):
    assume(classify(m) != "none")
    for a, b in m.frame.le:
        if forces_ik(m, a, f):
            assert forces_ik(m, b, f)


@given(birelational_models(), small_formulas())
@settings(max_examples=150)
def test_mk_monotonicity(m, f):
    assume(classify(m) in ("strong", "excessive"))
    for a, b in m.frame.le:
        if forces_mk(m, a, f):
            assert forces_mk(m, b, f)


@given(partial_models(), small_formulas(depth=2))
@settings(max_examples=150)
def test_partial_forcing_matches_ik_on_the_flat_image(m, f):
    flat = flatten(m.general)
    for k, w in m.general.cells():
        assert forces_partial(m, k, w, f) == forces_ik(flat, FlatWorld(w, k), f)


@given(partial_models())
def test_flatten_image_is_birelational(m):
    assert classify(flatten(m.general)) != "none"


@given(partial_models())
def test_upward_restrictions_stay_partial_copies(m):
    ref = m.general.submodel(m.reference).frame
    for _, sm in m.general.submodels:
        assert is_partial_copy(sm.frame, ref)
    assert validate_partial(m.general) is not None


@given(frames())
def test_upward_restrict_of_any_frame(fr):
    for w in fr.sorted_worlds():
        assert is_partial_copy(upward_restrict(fr, w), fr)
