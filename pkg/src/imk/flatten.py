"""Flattening a family of models into a single birelational model.

Each (world, member) pair becomes one world of the flat model.  The order
relates pairs within one member exactly as that member does; the modal
relation links the two occurrences of one world across ``succ``-related
members.  Flattening a partial model yields a birelational model, flattening
a homogeneous model an excessive one, and forcing is preserved cell by cell:
partial evaluation matches IK forcing on the image, homogeneous evaluation
matches MK forcing.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from .birelational import (BirelationalModel, ConditionReport, check_condition,
                           entails_ik, entails_mk)
from .formulas import Formula, render
from .general import (GeneralModel, HomogeneousModel, InvalidModelClassError,
                      PartialModel, as_homogeneous, as_partial,
                      entails_homogeneous, entails_partial,
                      validate_homogeneous, validate_partial)
from .kripke import Frame

__all__ = ["FlatWorld", "Disagreement", "EquivalenceReport",
           "flatten", "verify_flatten_class", "equivalence_report"]


class FlatWorld(NamedTuple):
    world: str
    submodel: str


def flatten(g: GeneralModel) -> BirelationalModel:
    """The single birelational model carrying every (world, member) pair."""
    worlds = frozenset(FlatWorld(w, k) for k, m in g.submodels
                       for w in m.frame.worlds)
    le = frozenset((FlatWorld(a, k), FlatWorld(b, k))
                   for k, m in g.submodels for a, b in m.frame.le)
    r = frozenset((FlatWorld(w, a), FlatWorld(w, b))
                  for a, b in g.succ
                  for w in g.submodel(a).frame.worlds
                  if w in g.submodel(b).frame.worlds)
    val = frozenset((FlatWorld(w, k), atom)
                    for k, m in g.submodels for w, atom in m.val)
    return BirelationalModel(Frame(worlds, le), r, val)


def verify_flatten_class(g: GeneralModel) -> list[ConditionReport]:
    """F1-F4 reports for the flat model, in order."""
    flat = flatten(g)
    return [check_condition(flat, c) for c in ("F1", "F2", "F3", "F4")]


@dataclass(frozen=True)
class Disagreement:
    submodel: str
    world: str
    gamma: tuple[str, ...]
    formula: str
    family_side: bool
    flat_side: bool


@dataclass(frozen=True)
class EquivalenceReport:
    logic: str  # "ik" for partial input, "mk" for homogeneous input
    cases: int
    disagreements: tuple

    @property
    def ok(self) -> bool:
        return not self.disagreements


def equivalence_report(g: GeneralModel, formulas: Sequence[Formula],
                       gammas: Sequence[Iterable[Formula]] = ((),),
                       logic: str | None = None) -> EquivalenceReport:
    """Compare family-side entailment against IK/MK entailment on the flat
    model at every (member, world) cell.  Homogeneous input is checked
    against MK, other partial input against IK; expected: no disagreements.
    """
    if logic is None:
        logic = "mk" if validate_homogeneous(g) else "ik"
    if logic == "mk":
        if not validate_homogeneous(g):
            raise InvalidModelClassError("MK comparison needs a homogeneous model")
        family: HomogeneousModel | PartialModel = as_homogeneous(g)
        family_entails, flat_entails = entails_homogeneous, entails_mk
    elif logic == "ik":
        if validate_partial(g) is None:
            raise InvalidModelClassError("IK comparison needs a partial model")
        family = as_partial(g)
        family_entails, flat_entails = entails_partial, entails_ik
    else:
        raise ValueError(f"logic must be 'ik' or 'mk', not {logic!r}")

    flat = flatten(g)
    gammas = [tuple(gset) for gset in gammas]
    cases = 0
    bad = []
    for k, w in g.cells():
        for gset in gammas:
            for f in formulas:
                lhs = family_entails(family, k, w, gset, f)
                rhs = flat_entails(flat, FlatWorld(w, k), gset, f)
                cases += 1
                if lhs != rhs:
                    bad.append(Disagreement(k, w, tuple(render(x) for x in gset),
                                            render(f), lhs, rhs))
    return EquivalenceReport(logic, cases, tuple(bad))
