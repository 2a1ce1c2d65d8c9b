"""Families of propositional Kripke models joined by an accessibility relation.

A general model is a finite set of propositional models (the "possible
models") plus a relation ``succ`` saying which members count as alternative
versions of which.  Two refinements matter:

* partial models: every member's frame is a partial copy of one reference
  member's frame (worlds may be dropped, but only from the past);
* homogeneous models: all members share one identical frame.

Modal formulas are evaluated at a (member, world) cell.  A world looks for
itself inside the alternative members: diamond finds some alternative where
the same world satisfies the formula, box requires it of every alternative
(for partial models, of every later world present in the alternative).
Homogeneous evaluation is the MK reading, partial evaluation the IK reading.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Mapping

from .formulas import And, Atom, Bottom, Box, Diamond, Formula, Implies, Or
from .kripke import (Frame, ModelError, PropModel, UnknownWorldError, World,
                     is_partial_copy)

__all__ = [
    "GeneralModel", "PartialModel", "HomogeneousModel",
    "UnknownSubmodelError", "InvalidModelClassError", "CarrierMismatchError",
    "general_model", "as_partial", "as_homogeneous",
    "validate_partial", "validate_homogeneous",
    "forces_partial", "forces_homogeneous",
    "entails_partial", "entails_homogeneous",
    "valid_at_submodel", "valid_in_model",
    "modular_mk_evaluate", "intuitionistic_base_forces",
    "classical_base_forces", "classical_carrier", "CLASSICAL_POINT",
]


class UnknownSubmodelError(ModelError):
    def __init__(self, k: str):
        super().__init__(f"unknown submodel {k!r}")


class InvalidModelClassError(ModelError):
    pass


class CarrierMismatchError(ModelError):
    pass


@dataclass(frozen=True)
class GeneralModel:
    submodels: tuple  # sorted pairs (id, PropModel)
    succ: frozenset   # pairs (id, id)

    def __post_init__(self):
        if not self.submodels:
            raise ModelError("a general model needs at least one submodel")
        ids = {k for k, _ in self.submodels}
        if len(ids) != len(self.submodels):
            raise ModelError("duplicate submodel id")
        for a, b in self.succ:
            if a not in ids or b not in ids:
                raise ModelError(f"succ endpoint {a!r} or {b!r} is not a declared submodel")

    @property
    def ids(self) -> list[str]:
        return [k for k, _ in self.submodels]

    def submodel(self, k: str) -> PropModel:
        for kid, m in self.submodels:
            if kid == k:
                return m
        raise UnknownSubmodelError(k)

    def successors(self, k: str) -> list[str]:
        return sorted(b for a, b in self.succ if a == k)

    def cells(self) -> list[tuple[str, World]]:
        return [(k, w) for k, m in self.submodels for w in m.frame.sorted_worlds()]


def general_model(submodels: Mapping[str, PropModel],
                  succ: Iterable[tuple[str, str]] = ()) -> GeneralModel:
    return GeneralModel(tuple(sorted(submodels.items())), frozenset(succ))


def validate_partial(g: GeneralModel) -> str | None:
    """Some submodel id usable as reference (every member frame is a partial
    copy of its frame), or None."""
    for k, ref in g.submodels:
        if all(is_partial_copy(m.frame, ref.frame) for _, m in g.submodels):
            return k
    return None


def validate_homogeneous(g: GeneralModel) -> bool:
    frames = {m.frame for _, m in g.submodels}
    return len(frames) == 1


@dataclass(frozen=True)
class PartialModel:
    general: GeneralModel
    reference: str

    def __post_init__(self):
        ref = self.general.submodel(self.reference).frame
        for k, m in self.general.submodels:
            if not is_partial_copy(m.frame, ref):
                raise InvalidModelClassError(
                    f"submodel {k!r} is not a partial copy of reference {self.reference!r}")


@dataclass(frozen=True)
class HomogeneousModel:
    general: GeneralModel

    def __post_init__(self):
        if not validate_homogeneous(self.general):
            raise InvalidModelClassError("submodels do not share one identical frame")

    @property
    def frame(self) -> Frame:
        return self.general.submodels[0][1].frame


def as_partial(g: GeneralModel, reference: str | None = None) -> PartialModel:
    if reference is None:
        reference = validate_partial(g)
        if reference is None:
            raise InvalidModelClassError("no submodel works as a reference model")
    return PartialModel(g, reference)


def as_homogeneous(g: GeneralModel) -> HomogeneousModel:
    return HomogeneousModel(g)


def _check_cell(g: GeneralModel, k: str, w: World) -> None:
    m = g.submodel(k)
    if w not in m.frame.worlds:
        raise UnknownWorldError(w)


@lru_cache(maxsize=1 << 16)
def _extension_partial(m: PartialModel, f: Formula) -> frozenset:
    """Cells (submodel, world) where f holds, under the partial-model clauses.

    The box clause reads the order in the reference model: every pair
    (w, w') related there with w' present in the alternative member counts.
    On worlds present in both members this agrees with the member's own
    order, because partial copies restrict the reference order.
    """
    g = m.general
    ref_le = g.submodel(m.reference).frame.le
    if isinstance(f, Atom):
        return frozenset((k, w) for k, sm in g.submodels
                         for w, atom in sm.val if atom == f.name)
    if isinstance(f, Bottom):
        return frozenset()
    if isinstance(f, And):
        return _extension_partial(m, f.left) & _extension_partial(m, f.right)
    if isinstance(f, Or):
        return _extension_partial(m, f.left) | _extension_partial(m, f.right)
    if isinstance(f, Implies):
        ante, cons = _extension_partial(m, f.left), _extension_partial(m, f.right)
        return frozenset((k, w) for k, sm in g.submodels for w in sm.frame.worlds
                         if all((k, v) in cons for v in sm.frame.above(w)
                                if (k, v) in ante))
    if isinstance(f, Box):
        inner = _extension_partial(m, f.inner)
        out = []
        for k, sm in g.submodels:
            succs = [(k2, g.submodel(k2)) for k2 in g.successors(k)]
            for w in sm.frame.worlds:
                if all((k2, w2) in inner
                       for k2, sm2 in succs
                       for w2 in sm2.frame.worlds
                       if (w, w2) in ref_le):
                    out.append((k, w))
        return frozenset(out)
    if isinstance(f, Diamond):
        inner = _extension_partial(m, f.inner)
        out = []
        for k, sm in g.submodels:
            succs = [(k2, g.submodel(k2)) for k2 in g.successors(k)]
            for w in sm.frame.worlds:
                if any(w in sm2.frame.worlds and (k2, w) in inner
                       for k2, sm2 in succs):
                    out.append((k, w))
        return frozenset(out)
    raise TypeError(f"not a formula: {f!r}")


@lru_cache(maxsize=1 << 16)
def _extension_homogeneous(h: HomogeneousModel, f: Formula) -> frozenset:
    """Cells where f holds under the homogeneous clauses: box and diamond
    look at the same world in alternative members, with no order quantifier."""
    g = h.general
    frame = h.frame
    if isinstance(f, Atom):
        return frozenset((k, w) for k, sm in g.submodels
                         for w, atom in sm.val if atom == f.name)
    if isinstance(f, Bottom):
        return frozenset()
    if isinstance(f, And):
        return _extension_homogeneous(h, f.left) & _extension_homogeneous(h, f.right)
    if isinstance(f, Or):
        return _extension_homogeneous(h, f.left) | _extension_homogeneous(h, f.right)
    if isinstance(f, Implies):
        ante, cons = _extension_homogeneous(h, f.left), _extension_homogeneous(h, f.right)
        return frozenset((k, w) for k, _ in g.submodels for w in frame.worlds
                         if all((k, v) in cons for v in frame.above(w)
                                if (k, v) in ante))
    if isinstance(f, Box):
        inner = _extension_homogeneous(h, f.inner)
        return frozenset((k, w) for k, _ in g.submodels for w in frame.worlds
                         if all((k2, w) in inner for k2 in g.successors(k)))
    if isinstance(f, Diamond):
        inner = _extension_homogeneous(h, f.inner)
        return frozenset((k, w) for k, _ in g.submodels for w in frame.worlds
                         if any((k2, w) in inner for k2 in g.successors(k)))
    raise TypeError(f"not a formula: {f!r}")


def forces_partial(m: PartialModel, k: str, w: World, f: Formula) -> bool:
    _check_cell(m.general, k, w)
    return (k, w) in _extension_partial(m, f)


def forces_homogeneous(h: HomogeneousModel, k: str, w: World, f: Formula) -> bool:
    _check_cell(h.general, k, w)
    return (k, w) in _extension_homogeneous(h, f)


def _entails_cells(ext: frozenset, gamma_exts: list, sm: PropModel,
                   k: str, w: World) -> bool:
    return all((k, v) in ext for v in sm.frame.above(w)
               if all((k, v) in ge for ge in gamma_exts))


def entails_partial(m: PartialModel, k: str, w: World,
                    gamma: Iterable[Formula], f: Formula) -> bool:
    """Entailment runs inside one member, over its own order."""
    gamma = list(gamma)
    _check_cell(m.general, k, w)
    if not gamma:
        return forces_partial(m, k, w, f)
    return _entails_cells(_extension_partial(m, f),
                          [_extension_partial(m, g) for g in gamma],
                          m.general.submodel(k), k, w)


def entails_homogeneous(h: HomogeneousModel, k: str, w: World,
                        gamma: Iterable[Formula], f: Formula) -> bool:
    gamma = list(gamma)
    _check_cell(h.general, k, w)
    if not gamma:
        return forces_homogeneous(h, k, w, f)
    return _entails_cells(_extension_homogeneous(h, f),
                          [_extension_homogeneous(h, g) for g in gamma],
                          h.general.submodel(k), k, w)


def _entails_for(m) -> Callable:
    if isinstance(m, PartialModel):
        return entails_partial
    if isinstance(m, HomogeneousModel):
        return entails_homogeneous
    raise InvalidModelClassError(
        f"expected a PartialModel or HomogeneousModel, got {type(m).__name__}")


def valid_at_submodel(m, k: str, gamma: Iterable[Formula], f: Formula) -> bool:
    gamma = list(gamma)
    ent = _entails_for(m)
    sm = m.general.submodel(k)
    return all(ent(m, k, w, gamma, f) for w in sm.frame.worlds)


def valid_in_model(m, gamma: Iterable[Formula], f: Formula) -> bool:
    gamma = list(gamma)
    return all(valid_at_submodel(m, k, gamma, f) for k in m.general.ids)


# --- modular MK clauses over a pluggable propositional base -----------------
#
# The box/diamond clauses above do not care that the members are
# intuitionistic: any notion of propositional model with a shared carrier of
# evaluation points works.  base_forces(member, point, formula, rec) must
# evaluate the non-modal connectives, calling rec(point, subformula) so that
# nested modalities re-enter the modal layer.

CLASSICAL_POINT = "pt"


def modular_mk_evaluate(family: Mapping[str, object],
                        succ: Iterable[tuple[str, str]],
                        base_forces: Callable,
                        k: str, w, f: Formula, *,
                        carrier_of: Callable) -> bool:
    if not family:
        raise ModelError("empty family")
    carriers = {kid: carrier_of(member) for kid, member in family.items()}
    first = next(iter(carriers.values()))
    for kid, carrier in carriers.items():
        if carrier != first:
            raise CarrierMismatchError(
                f"member {kid!r} has carrier {set(carrier)!r}, expected {set(first)!r}")
    succ = frozenset(succ)
    for a, b in succ:
        if a not in family or b not in family:
            raise ModelError(f"succ endpoint {a!r} or {b!r} is not a family member")
    if k not in family:
        raise UnknownSubmodelError(k)
    if w not in first:
        raise UnknownWorldError(w)

    memo: dict = {}

    def eval_at(kid: str, point, g: Formula) -> bool:
        key = (kid, point, g)
        if key in memo:
            return memo[key]
        if isinstance(g, Box):
            out = all(eval_at(k2, point, g.inner) for a, k2 in succ if a == kid)
        elif isinstance(g, Diamond):
            out = any(eval_at(k2, point, g.inner) for a, k2 in succ if a == kid)
        else:
            out = base_forces(family[kid], point, g,
                              lambda p, sub: eval_at(kid, p, sub))
        memo[key] = out
        return out

    return eval_at(k, w, f)


def intuitionistic_base_forces(model: PropModel, w: World, f: Formula,
                               rec: Callable) -> bool:
    """Intuitionistic clauses for the non-modal connectives of one member."""
    if isinstance(f, Atom):
        return (w, f.name) in model.val
    if isinstance(f, Bottom):
        return False
    if isinstance(f, And):
        return rec(w, f.left) and rec(w, f.right)
    if isinstance(f, Or):
        return rec(w, f.left) or rec(w, f.right)
    if isinstance(f, Implies):
        return all(rec(v, f.right) for v in model.frame.above(w) if rec(v, f.left))
    raise TypeError(f"base evaluator got a modal formula: {f!r}")


def classical_base_forces(valuation: frozenset, w, f: Formula,
                          rec: Callable) -> bool:
    """Truth-table clauses; the member is just a set of true atoms."""
    if isinstance(f, Atom):
        return f.name in valuation
    if isinstance(f, Bottom):
        return False
    if isinstance(f, And):
        return rec(w, f.left) and rec(w, f.right)
    if isinstance(f, Or):
        return rec(w, f.left) or rec(w, f.right)
    if isinstance(f, Implies):
        return (not rec(w, f.left)) or rec(w, f.right)
    raise TypeError(f"base evaluator got a modal formula: {f!r}")


def classical_carrier(valuation) -> frozenset:
    return frozenset({CLASSICAL_POINT})
