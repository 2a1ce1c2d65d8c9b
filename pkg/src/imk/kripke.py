"""Propositional Kripke models and intuitionistic forcing.

Frames are finite preorders stored with ``le`` already closed under
reflexivity and transitivity; builders compute the closure.  Valuations are
hereditary: an atom forced at a world stays forced at every later world.
World labels are plain identifiers in files, but any hashable value works
internally (flattening uses (world, submodel) pairs).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Hashable, Iterable, Mapping

from .formulas import And, Atom, Bottom, Box, Diamond, Formula, Implies, Or

__all__ = [
    "World", "Frame", "PropModel",
    "ModelError", "HeredityError", "UnknownWorldError", "UnsupportedConnectiveError",
    "build_frame", "build_prop_model", "closure",
    "forces", "entails", "model_valid",
    "is_partial_copy", "upward_restrict", "world_key",
]

World = Hashable
Pair = tuple[World, World]


class ModelError(ValueError):
    pass


class HeredityError(ModelError):
    def __init__(self, low: World, high: World, atom: str):
        super().__init__(f"heredity violated: atom {atom!r} holds at {low!r} "
                         f"but not at later world {high!r}")
        self.witness = (low, high, atom)


class UnknownWorldError(ModelError):
    def __init__(self, w: World):
        super().__init__(f"unknown world {w!r}")


class UnsupportedConnectiveError(ModelError):
    """Box/Diamond have no clauses in purely propositional models."""


def world_key(w: World):
    """Sort key that works for both string worlds and tuple-shaped worlds."""
    return tuple(w) if isinstance(w, tuple) else (w,)


def closure(worlds: Iterable[World], pairs: Iterable[Pair]) -> frozenset[Pair]:
    """Reflexive-transitive closure of pairs over the given world set."""
    ws = list(worlds)
    rel = {(w, w) for w in ws} | set(pairs)
    changed = True
    while changed:
        changed = False
        for a, b in list(rel):
            for c, d in list(rel):
                if b == c and (a, d) not in rel:
                    rel.add((a, d))
                    changed = True
    return frozenset(rel)


@dataclass(frozen=True)
class Frame:
    worlds: frozenset
    le: frozenset

    def __post_init__(self):
        if not self.worlds:
            raise ModelError("a frame needs at least one world")
        for a, b in self.le:
            if a not in self.worlds or b not in self.worlds:
                raise ModelError(f"le endpoint {a!r} or {b!r} is not a world")
        for w in self.worlds:
            if (w, w) not in self.le:
                raise ModelError(f"le is not reflexive at {w!r}")
        for a, b in self.le:
            for c, d in self.le:
                if b == c and (a, d) not in self.le:
                    raise ModelError(f"le is not transitive: {a!r} {b!r} {d!r}")

    def above(self, w: World) -> frozenset:
        return _above(self)[w]

    def sorted_worlds(self) -> list:
        return sorted(self.worlds, key=world_key)


@lru_cache(maxsize=4096)
def _above(frame: Frame) -> dict:
    out: dict[World, set] = {w: set() for w in frame.worlds}
    for a, b in frame.le:
        out[a].add(b)
    return {w: frozenset(s) for w, s in out.items()}


def build_frame(worlds: Iterable[World], le_generators: Iterable[Pair]) -> Frame:
    """Frame over worlds whose le is the reflexive-transitive closure of the generators."""
    ws = frozenset(worlds)
    gens = list(le_generators)
    for a, b in gens:
        if a not in ws or b not in ws:
            raise ModelError(f"le generator ({a!r}, {b!r}) has an endpoint outside the world set")
    return Frame(ws, closure(ws, gens))


@dataclass(frozen=True)
class PropModel:
    frame: Frame
    val: frozenset  # pairs (world, atom)

    def __post_init__(self):
        for w, _ in self.val:
            if w not in self.frame.worlds:
                raise UnknownWorldError(w)
        for a, b in self.frame.le:
            for w, atom in self.val:
                if w == a and (b, atom) not in self.val:
                    raise HeredityError(a, b, atom)

    def atoms(self, w: World) -> frozenset[str]:
        if w not in self.frame.worlds:
            raise UnknownWorldError(w)
        return frozenset(atom for world, atom in self.val if world == w)

    @property
    def worlds(self) -> frozenset:
        return self.frame.worlds


def build_prop_model(frame: Frame, val: Mapping[World, Iterable[str]]) -> PropModel:
    """Validated model; worlds missing from val get the empty atom set."""
    pairs = set()
    for w, atoms in val.items():
        for atom in atoms:
            pairs.add((w, atom))
    return PropModel(frame, frozenset(pairs))


@lru_cache(maxsize=1 << 16)
def _extension(model: PropModel, f: Formula) -> frozenset:
    """Worlds forcing f, computed bottom-up over the subformula."""
    frame = model.frame
    if isinstance(f, Atom):
        return frozenset(w for w, atom in model.val if atom == f.name)
    if isinstance(f, Bottom):
        return frozenset()
    if isinstance(f, And):
        return _extension(model, f.left) & _extension(model, f.right)
    if isinstance(f, Or):
        return _extension(model, f.left) | _extension(model, f.right)
    if isinstance(f, Implies):
        ante, cons = _extension(model, f.left), _extension(model, f.right)
        return frozenset(w for w in frame.worlds
                         if all(v in cons for v in frame.above(w) if v in ante))
    raise UnsupportedConnectiveError(
        f"propositional models have no clause for {type(f).__name__}")


def forces(model: PropModel, w: World, f: Formula) -> bool:
    """Intuitionistic forcing at w: atoms by valuation, -> quantifies over later worlds."""
    if w not in model.frame.worlds:
        raise UnknownWorldError(w)
    return w in _extension(model, f)


def entails(model: PropModel, w: World, gamma: Iterable[Formula], f: Formula) -> bool:
    """With empty gamma this is plain forcing; otherwise every later world
    forcing all of gamma must force f."""
    gamma = list(gamma)
    if w not in model.frame.worlds:
        raise UnknownWorldError(w)
    if not gamma:
        return forces(model, w, f)
    return all(forces(model, v, f)
               for v in model.frame.above(w)
               if all(forces(model, v, g) for g in gamma))


def model_valid(model: PropModel, gamma: Iterable[Formula], f: Formula) -> bool:
    gamma = list(gamma)
    return all(entails(model, w, gamma, f) for w in model.frame.worlds)


def is_partial_copy(candidate: Frame, reference: Frame) -> bool:
    """True when candidate repeats part of reference: a subset of its worlds,
    closed upward under the reference order, carrying the restricted order."""
    if not candidate.worlds <= reference.worlds:
        return False
    for a, b in reference.le:
        if a in candidate.worlds and b not in candidate.worlds:
            return False
    for a in candidate.worlds:
        for b in candidate.worlds:
            if ((a, b) in reference.le) != ((a, b) in candidate.le):
                return False
    return True


def upward_restrict(frame: Frame, j: World) -> Frame:
    """Subframe on the worlds at or above j, with the restricted order."""
    if j not in frame.worlds:
        raise UnknownWorldError(j)
    kept = frame.above(j)
    return Frame(frozenset(kept),
                 frozenset((a, b) for a, b in frame.le if a in kept and b in kept))
