"""Bounded enumeration of models and countermodel search.

Models are generated with canonical labels (worlds w1..wn, atoms p1..pk,
members K1..Km), in a fixed deterministic order, each labeled structure
exactly once.  Isomorphic structures under different labelings may both
appear; deduplication is by canonical labeling, not isomorphism.  A search
that finds nothing within bounds is one-sided evidence only and is reported
as such, never as validity.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .birelational import BirelationalModel, classify, forces_ik, forces_mk
from .formulas import Formula
from .general import (HomogeneousModel, PartialModel, forces_homogeneous,
                      forces_partial, general_model)
from .kripke import Frame, PropModel, closure, forces
from .modelfile import dump_birelational, dump_general, dump_prop_model

__all__ = ["SearchBounds", "SearchOutcome", "LOGICS",
           "enumerate_models", "find_countermodel", "serialize_model"]

LOGICS = ("prop", "ik", "mk", "partial", "homogeneous", "classicalK")

# Preorders are precomputed from all generator subsets; past 4 points the
# 2^(n^2-n) closure sweep stops being a sensible way to do this.
MAX_ENUMERABLE_WORLDS = 4


@dataclass(frozen=True)
class SearchBounds:
    logic: str
    max_worlds: int = 3
    max_atoms: int = 1
    max_submodels: int = 1
    rooted: bool = False

    def __post_init__(self):
        if self.logic not in LOGICS:
            raise ValueError(f"logic must be one of {LOGICS}, not {self.logic!r}")
        if min(self.max_worlds, self.max_atoms, self.max_submodels) < 1:
            raise ValueError("all bounds must be at least 1")
        if self.max_worlds > MAX_ENUMERABLE_WORLDS:
            raise ValueError(f"enumeration is capped at {MAX_ENUMERABLE_WORLDS} worlds")


@dataclass(frozen=True)
class SearchOutcome:
    found: bool
    model: str | None          # canonical model file text
    locus: tuple[str | None, str] | None  # (submodel or None, world)
    models_examined: int
    elapsed: float


def _world_names(n: int) -> list[str]:
    return [f"w{i}" for i in range(1, n + 1)]


@lru_cache(maxsize=8)
def _preorders(n: int) -> tuple:
    """All preorders over w1..wn, canonically ordered."""
    worlds = _world_names(n)
    off_diag = [(a, b) for a in worlds for b in worlds if a != b]
    seen = set()
    for bits in itertools.product((False, True), repeat=len(off_diag)):
        gens = [p for p, keep in zip(off_diag, bits) if keep]
        seen.add(closure(worlds, gens))
    return tuple(sorted(seen, key=lambda rel: sorted(rel)))


def _frames(n: int) -> list[Frame]:
    worlds = frozenset(_world_names(n))
    return [Frame(worlds, le) for le in _preorders(n)]


def _up_sets(frame: Frame, nonempty: bool = False) -> list[frozenset]:
    worlds = frame.sorted_worlds()
    out = []
    for size in range(0 if not nonempty else 1, len(worlds) + 1):
        for combo in itertools.combinations(worlds, size):
            s = frozenset(combo)
            if all(b in s for a, b in frame.le if a in s):
                out.append(s)
    return out


def _valuations(frame: Frame, atoms: list[str]) -> Iterator[frozenset]:
    """All hereditary valuations: each atom's extension is an upward-closed set."""
    ups = _up_sets(frame)
    for choice in itertools.product(ups, repeat=len(atoms)):
        yield frozenset((w, atom) for atom, ext in zip(atoms, choice) for w in ext)


def _relation_subsets(worlds: list) -> Iterator[frozenset]:
    pairs = [(a, b) for a in worlds for b in worlds]
    for bits in itertools.product((False, True), repeat=len(pairs)):
        yield frozenset(p for p, keep in zip(pairs, bits) if keep)


def _is_rooted(frame: Frame) -> bool:
    return any(frame.above(w) == frame.worlds for w in frame.worlds)


def _sub_frame(frame: Frame, kept: frozenset) -> Frame:
    return Frame(kept, frozenset((a, b) for a, b in frame.le
                                 if a in kept and b in kept))


def _atom_names(k: int) -> list[str]:
    return [f"p{i}" for i in range(1, k + 1)]


def _query_alphabet(formulas, k: int) -> list[str]:
    """Atom names the search valuates: the query's own atoms (sorted, first k),
    padded with fresh p1, p2, ... up to exactly k names."""
    from .formulas import subformulas, Atom
    names = sorted({sub.name for f in formulas for sub in subformulas(f)
                    if isinstance(sub, Atom)})[:k]
    fresh = (name for name in _atom_names(k + len(names)) if name not in names)
    while len(names) < k:
        names.append(next(fresh))
    return sorted(names)


def enumerate_models(b: SearchBounds, atoms: list[str] | None = None) -> Iterator:
    """Every model of the requested class within bounds, exactly once, in a
    fixed order.  The valuation alphabet defaults to the canonical p1..pk."""
    if atoms is None:
        atoms = _atom_names(b.max_atoms)
    if b.logic == "prop":
        for n in range(1, b.max_worlds + 1):
            for frame in _frames(n):
                for val in _valuations(frame, atoms):
                    yield PropModel(frame, val)
    elif b.logic in ("ik", "mk"):
        want = "strong" if b.logic == "mk" else "birelational"
        rank = {"none": 0, "birelational": 1, "strong": 2, "excessive": 3}
        for n in range(1, b.max_worlds + 1):
            worlds = _world_names(n)
            for frame in _frames(n):
                for val in _valuations(frame, atoms):
                    for r in _relation_subsets(worlds):
                        m = BirelationalModel(frame, r, val)
                        if rank[classify(m)] >= rank[want]:
                            yield m
    elif b.logic == "partial":
        yield from _enumerate_partial(b, atoms)
    elif b.logic == "homogeneous":
        yield from _enumerate_homogeneous(b, atoms, singleton=False)
    elif b.logic == "classicalK":
        yield from _enumerate_homogeneous(b, atoms, singleton=True)
    else:  # pragma: no cover
        raise ValueError(b.logic)


def _member_ids(m: int) -> list[str]:
    return [f"K{i}" for i in range(1, m + 1)]


def _succ_subsets(ids: list[str]) -> Iterator[frozenset]:
    pairs = [(a, b) for a in ids for b in ids]
    for bits in itertools.product((False, True), repeat=len(pairs)):
        yield frozenset(p for p, keep in zip(pairs, bits) if keep)


def _enumerate_partial(b: SearchBounds, atoms: list[str]) -> Iterator[PartialModel]:
    """K1 carries the full reference frame; later members carry upward-closed
    subframes of it.  Every partial model has this shape up to relabeling."""
    for n in range(1, b.max_worlds + 1):
        for ref in _frames(n):
            if b.rooted and not _is_rooted(ref):
                continue
            sub_frames = [_sub_frame(ref, kept) for kept in _up_sets(ref, nonempty=True)]
            if b.rooted:
                sub_frames = [fr for fr in sub_frames if _is_rooted(fr)]
            for m in range(1, b.max_submodels + 1):
                ids = _member_ids(m)
                for frames in itertools.product(*([[ref]] + [sub_frames] * (m - 1))):
                    val_spaces = [list(_valuations(fr, atoms)) for fr in frames]
                    for vals in itertools.product(*val_spaces):
                        members = {kid: PropModel(fr, v)
                                   for kid, fr, v in zip(ids, frames, vals)}
                        for succ in _succ_subsets(ids):
                            yield PartialModel(general_model(members, succ), "K1")


def _enumerate_homogeneous(b: SearchBounds, atoms: list[str],
                           singleton: bool) -> Iterator[HomogeneousModel]:
    sizes = [1] if singleton else range(1, b.max_worlds + 1)
    for n in sizes:
        for frame in _frames(n):
            if b.rooted and not _is_rooted(frame):
                continue
            vals = list(_valuations(frame, atoms))
            for m in range(1, b.max_submodels + 1):
                ids = _member_ids(m)
                for choice in itertools.product(vals, repeat=m):
                    members = {kid: PropModel(frame, v) for kid, v in zip(ids, choice)}
                    for succ in _succ_subsets(ids):
                        yield HomogeneousModel(general_model(members, succ))


def _points(model) -> list[tuple[str | None, object]]:
    if isinstance(model, (PartialModel, HomogeneousModel)):
        return [(k, w) for k, w in model.general.cells()]
    return [(None, w) for w in model.frame.sorted_worlds()]


def _holds(model, k: str | None, w, f: Formula) -> bool:
    if isinstance(model, PartialModel):
        return forces_partial(model, k, w, f)
    if isinstance(model, HomogeneousModel):
        return forces_homogeneous(model, k, w, f)
    if isinstance(model, BirelationalModel):
        raise AssertionError("caller picks ik or mk")  # pragma: no cover
    return forces(model, w, f)


def serialize_model(model) -> str:
    """Canonical model-file text for anything enumerate_models yields."""
    if isinstance(model, PartialModel):
        return dump_general(model.general, reference=model.reference)
    if isinstance(model, HomogeneousModel):
        return dump_general(model.general)
    if isinstance(model, BirelationalModel):
        return dump_birelational(model)
    return dump_prop_model(model)


def find_countermodel(f: Formula, gamma, b: SearchBounds) -> SearchOutcome:
    """First enumerated model with a point where all of gamma holds and f
    fails, under the forcing relation of the requested class."""
    gamma = list(gamma)
    start = time.perf_counter()
    examined = 0
    alphabet = _query_alphabet([f, *gamma], b.max_atoms)
    for model in enumerate_models(b, atoms=alphabet):
        examined += 1
        if isinstance(model, BirelationalModel):
            point_holds = forces_ik if b.logic == "ik" else forces_mk
            holds = lambda k, w, g: point_holds(model, w, g)
        else:
            holds = lambda k, w, g: _holds(model, k, w, g)
        for k, w in _points(model):
            if all(holds(k, w, g) for g in gamma) and not holds(k, w, f):
                return SearchOutcome(True, serialize_model(model), (k, str(w)),
                                     examined, time.perf_counter() - start)
    return SearchOutcome(False, None, None, examined, time.perf_counter() - start)
