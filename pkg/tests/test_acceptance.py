"""Acceptance suite: one test and one printed pass/fail line per criterion.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines as the
criteria execute.  Sweeps described as "formulas to depth N" draw from
seeded deterministic pools (the full syntactic space at depth 3 over two
atoms already runs to tens of millions of formulas).
"""

import random
import time

import pytest

from imk import (Atom, BOTTOM, BirelationalModel, HomogeneousModel,
                 SearchBounds, build_frame, build_prop_model, check_condition,
                 classify, evaluate, find_countermodel, forces,
                 forces_homogeneous, forces_ik, forces_mk, forces_partial,
                 flatten, general_model, lift, parse, render,
                 valid_in_model, as_partial)
from imk.flatten import FlatWorld
from imk.formulas import And, Box, Diamond, Implies, Not, Or, TOP
from imk.search import enumerate_models

from gen import (classical_k_forces, formula_pool, homogeneous_corpus,
                 partial_corpus, random_formula)

SEP1 = parse("(~[]_|_) -> <>T")
SEP2 = parse("([](p|~p) & ~[]p) -> <>~p")


def _report(number: int, ok: bool, detail: str) -> None:
    print(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'} - {detail}",
          flush=True)
    assert ok, f"criterion {number}: {detail}"


@pytest.fixture(scope="module")
def three_world_frame():
    return build_frame({"w", "w2", "w3"}, {("w", "w2")})


@pytest.fixture(scope="module")
def partial_200():
    return partial_corpus(200)


@pytest.fixture(scope="module")
def homogeneous_200():
    return homogeneous_corpus(200)


@pytest.fixture(scope="module")
def depth3_pool():
    return formula_pool(40, 3, ["p1", "p2"], seed=104)


def test_criterion_01_three_world_ik_countermodel(three_world_frame):
    start = time.perf_counter()
    m = BirelationalModel(three_world_frame, frozenset({("w2", "w3")}), frozenset())
    refuted = not forces_ik(m, "w", SEP1)
    f1, f2, f3 = (check_condition(m, c) for c in ("F1", "F2", "F3"))
    frame_ok = (f1.holds and f1.unique and f2.holds and f2.unique
                and not f3.holds and f3.violations == (("w", "w2", "w3"),))
    elapsed = time.perf_counter() - start
    _report(1, refuted and frame_ok and elapsed < 1.0,
            f"3-world model refutes {render(SEP1)!r}; F1/F2 unique, F3 fails "
            f"at (w,w2,w3); {elapsed:.3f}s")


def test_criterion_02_three_world_atom_countermodel(three_world_frame):
    start = time.perf_counter()
    m = BirelationalModel(three_world_frame, frozenset({("w2", "w3")}), frozenset())
    refuted = not forces_ik(m, "w", SEP2)
    elapsed = time.perf_counter() - start
    _report(2, refuted and elapsed < 1.0,
            f"p absent at w3: 3-world model refutes {render(SEP2)!r}; "
            f"{elapsed:.3f}s")


def test_criterion_03_mk_validity_evidence():
    start = time.perf_counter()
    bounds = SearchBounds("mk", max_worlds=3, max_atoms=1)
    out1 = find_countermodel(SEP1, [], bounds)
    out2 = find_countermodel(SEP2, [], bounds)
    elapsed = time.perf_counter() - start
    _report(3, not out1.found and not out2.found and elapsed < 300,
            f"no strong countermodel within 3 worlds/1 atom for either "
            f"separation formula ({out1.models_examined} models, {elapsed:.1f}s)")


def test_criterion_04_flatten_equivalence_ik(partial_200, depth3_pool):
    start = time.perf_counter()
    disagreements = 0
    cells = 0
    for m in partial_200:
        flat = flatten(m.general)
        for k, w in m.general.cells():
            for f in depth3_pool:
                cells += 1
                if forces_partial(m, k, w, f) != forces_ik(flat, FlatWorld(w, k), f):
                    disagreements += 1
    elapsed = time.perf_counter() - start
    _report(4, disagreements == 0 and elapsed < 600,
            f"{len(partial_200)} partial models, {cells} comparisons, "
            f"{disagreements} disagreements, {elapsed:.1f}s")


def test_criterion_05_flatten_equivalence_mk(homogeneous_200, depth3_pool):
    start = time.perf_counter()
    disagreements = 0
    non_excessive = 0
    for h in homogeneous_200:
        flat = flatten(h.general)
        if classify(flat) != "excessive":
            non_excessive += 1
        for k, w in h.general.cells():
            for f in depth3_pool:
                if forces_homogeneous(h, k, w, f) != forces_mk(flat, FlatWorld(w, k), f):
                    disagreements += 1
    elapsed = time.perf_counter() - start
    _report(5, disagreements == 0 and non_excessive == 0,
            f"{len(homogeneous_200)} homogeneous models vs MK on the image: "
            f"{disagreements} disagreements, {non_excessive} non-excessive "
            f"images, {elapsed:.1f}s")


def test_criterion_06_monotonicity_suites(partial_200, homogeneous_200):
    start = time.perf_counter()
    violations = 0

    prop_pool = formula_pool(30, 3, ["p1", "p2"], seed=106, modal=False)
    for m in enumerate_models(SearchBounds("prop", 4, 2)):
        for f in prop_pool:
            for a, b in m.frame.le:
                if forces(m, a, f) and not forces(m, b, f):
                    violations += 1

    birel_pool = formula_pool(15, 3, ["p1"], seed=1066)
    for m in enumerate_models(SearchBounds("ik", 3, 1)):
        for f in birel_pool:
            for a, b in m.frame.le:
                if forces_ik(m, a, f) and not forces_ik(m, b, f):
                    violations += 1
    for m in enumerate_models(SearchBounds("mk", 3, 1)):
        for f in birel_pool:
            for a, b in m.frame.le:
                if forces_mk(m, a, f) and not forces_mk(m, b, f):
                    violations += 1

    family_pool = formula_pool(15, 3, ["p1", "p2"], seed=1067)
    for pm in partial_200:
        for k, sm in pm.general.submodels:
            for f in family_pool:
                for a, b in sm.frame.le:
                    if forces_partial(pm, k, a, f) and not forces_partial(pm, k, b, f):
                        violations += 1
    for h in homogeneous_200:
        for k, sm in h.general.submodels:
            for f in family_pool:
                for a, b in sm.frame.le:
                    if forces_homogeneous(h, k, a, f) and \
                            not forces_homogeneous(h, k, b, f):
                        violations += 1

    elapsed = time.perf_counter() - start
    _report(6, violations == 0,
            f"monotonicity across prop<=4w, birelational<=3w, and both "
            f"family corpora: {violations} violations, {elapsed:.1f}s")


def _closed(succ, ids, reflexive=False, transitive=False):
    succ = set(succ)
    if reflexive:
        succ |= {(k, k) for k in ids}
    if transitive:
        changed = True
        while changed:
            changed = False
            for a, b in list(succ):
                for c, d in list(succ):
                    if b == c and (a, d) not in succ:
                        succ.add((a, d))
                        changed = True
    return succ


def test_criterion_07_t_and_four_axioms(homogeneous_200):
    start = time.perf_counter()
    schemes = formula_pool(25, 2, ["p1", "p2"], seed=107)
    failures = 0
    corpus = homogeneous_200[:100]
    for h in corpus:
        members = dict(h.general.submodels)
        ids = h.general.ids
        refl = HomogeneousModel(general_model(
            members, _closed(h.general.succ, ids, reflexive=True)))
        trans = HomogeneousModel(general_model(
            members, _closed(h.general.succ, ids, transitive=True)))
        for a in schemes:
            if not valid_in_model(refl, [], Implies(Box(a), a)):
                failures += 1
            if not valid_in_model(trans, [], Implies(Box(a), Box(Box(a)))):
                failures += 1
    elapsed = time.perf_counter() - start
    _report(7, failures == 0,
            f"[]A->A under reflexive succ and []A->[][]A under transitive "
            f"succ on {len(corpus)} models x {len(schemes)} schemes: "
            f"{failures} failures, {elapsed:.1f}s")


def test_criterion_08_classical_degeneration():
    start = time.perf_counter()
    pool = formula_pool(12, 3, ["p1", "p2"], seed=108)
    disagreements = 0
    models = 0
    for h in enumerate_models(SearchBounds("classicalK", 1, 2, max_submodels=3)):
        models += 1
        vals = {k: frozenset(atom for _, atom in sm.val)
                for k, sm in h.general.submodels}
        for k in vals:
            for f in pool:
                if forces_homogeneous(h, k, "w1", f) != \
                        classical_k_forces(vals, h.general.succ, k, f):
                    disagreements += 1
    elapsed = time.perf_counter() - start
    _report(8, disagreements == 0,
            f"all {models} single-world families vs the classical K oracle: "
            f"{disagreements} disagreements, {elapsed:.1f}s")


def test_criterion_09_higher_order_bridge(homogeneous_200, depth3_pool):
    start = time.perf_counter()
    disagreements = 0
    for h in homogeneous_200:
        lifted = lift(h)
        for k, w in h.general.cells():
            for f in depth3_pool:
                if evaluate(lifted, [k, w], f) != forces_homogeneous(h, k, w, f):
                    disagreements += 1
    elapsed = time.perf_counter() - start
    _report(9, disagreements == 0,
            f"evaluate(lift(h)) vs family forcing on {len(homogeneous_200)} "
            f"models: {disagreements} disagreements, {elapsed:.1f}s")


def test_criterion_10_timeline_worked_example():
    chain = build_frame({"m", "a", "e"}, {("m", "a"), ("a", "e")})
    short = build_frame({"a", "e"}, {("a", "e")})
    members = {
        "K": build_prop_model(chain, {"e": {"p"}}),
        "K1": build_prop_model(chain, {"m": {"p"}, "a": {"p"}, "e": {"p", "q"}}),
        "K2": build_prop_model(short, {"a": {"p"}, "e": {"p", "q"}}),
    }
    one = as_partial(general_model(members, {("K", "K1")}), "K")
    two = as_partial(general_model(members, {("K", "K1"), ("K", "K2")}), "K")
    loop = as_partial(general_model(
        members, {("K", "K1"), ("K", "K2"), ("K", "K")}), "K")
    ok = (forces_partial(one, "K", "m", parse("<>p"))
          and forces_partial(two, "K", "e", parse("[]q"))
          and not forces_partial(loop, "K", "e", parse("[]q")))
    _report(10, ok, "morning <>p holds; evening []q holds without self-access "
                    "and fails with it")


def test_criterion_11_parser_round_trip():
    start = time.perf_counter()
    rng = random.Random(111)
    failures = 0
    for _ in range(1000):
        f = random_formula(rng, 6, ["p", "q", "r"])
        if parse(render(f)) != f:
            failures += 1

    p = Atom("p")
    pinned = [
        ("~p", Implies(p, BOTTOM)),
        ("(~[]_|_) -> <>T", Implies(Not(Box(BOTTOM)), Diamond(TOP))),
        ("[](p|~p) & ~[]p -> <>~p",
         Implies(And(Box(Or(p, Not(p))), Not(Box(p))), Diamond(Not(p)))),
    ]
    for text, ast in pinned:
        if parse(text) != ast:
            failures += 1
    elapsed = time.perf_counter() - start
    _report(11, failures == 0,
            f"1000 depth<=6 round trips and 3 pinned parses: "
            f"{failures} failures, {elapsed:.1f}s")
