"""Epistemic structures: propositions, formulas, frames, and evaluation.

Worlds are the composite's states.  Two accessibility families are kept side
by side for every supervisor:

* the *total* relation relates worlds with the same estimate and is an
  equivalence relation;
* the *partial* relation additionally requires both worlds' plant states to
  be legal, hence it is a partial equivalence: worlds with an illegal plant
  state are related to nothing, not even themselves, and knowledge at them
  holds vacuously.

The partial relation is the load-bearing correction: with it, nothing is
demanded of a supervisor once the system has already left the legal
behaviour, and the guard transform below shows the two relations express the
same thing.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

from .automata import PlantSpec, SupervisionProfile
from .errors import ModelError
from .observation import Composite, Estimate, World

Relation = Literal["partial", "total"]


# ---------------------------------------------------------------------------
# Propositions

@dataclass(frozen=True)
class Prop:
    """An atomic proposition evaluated at a world.

    ``kind`` is one of ``possible`` (the event can physically occur at the
    world's plant state), ``legal`` (the event is allowed by the
    specification there), or ``state_legal`` (the plant state itself lies in
    the legal subautomaton).
    """

    kind: str
    event: str | None = None

    def pretty(self) -> str:
        if self.kind == "state_legal":
            return "legal-state"
        mark = "G" if self.kind == "possible" else "E"
        return f"{self.event}_{mark}"


def possible(event: str) -> Prop:
    return Prop("possible", event)


def legal(event: str) -> Prop:
    return Prop("legal", event)


STATE_LEGAL = Prop("state_legal")


# ---------------------------------------------------------------------------
# Formulas

@dataclass(frozen=True)
class Formula:
    pass


@dataclass(frozen=True)
class Const(Formula):
    value: bool


@dataclass(frozen=True)
class Var(Formula):
    prop: Prop


@dataclass(frozen=True)
class Not(Formula):
    sub: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Know(Formula):
    """``Know(i, f)``: f holds at every world supervisor i considers possible."""

    agent: int
    sub: Formula


@dataclass(frozen=True)
class SomeoneKnows(Formula):
    """Disjunction of ``Know(i, sub)`` over the controllers of the context event."""

    sub: Formula


@dataclass(frozen=True)
class OtherKnows(Formula):
    """Like :class:`SomeoneKnows` but excluding supervisor ``agent``.

    With a single controller this is the empty disjunction, i.e. false.
    """

    agent: int
    sub: Formula


TRUE = Const(True)
FALSE = Const(False)


def or_all(parts) -> Formula:
    parts = list(parts)
    if not parts:
        return FALSE
    out = parts[0]
    for p in parts[1:]:
        out = Or(out, p)
    return out


def and_all(parts) -> Formula:
    parts = list(parts)
    if not parts:
        return TRUE
    out = parts[0]
    for p in parts[1:]:
        out = And(out, p)
    return out


def expand_derived(phi: Formula) -> Formula:
    """Rewrite Or and Implies into the primitive not/and fragment."""
    if isinstance(phi, (Const, Var)):
        return phi
    if isinstance(phi, Not):
        return Not(expand_derived(phi.sub))
    if isinstance(phi, And):
        return And(expand_derived(phi.left), expand_derived(phi.right))
    if isinstance(phi, Or):
        return Not(And(Not(expand_derived(phi.left)), Not(expand_derived(phi.right))))
    if isinstance(phi, Implies):
        return expand_derived(Or(Not(phi.left), phi.right))
    if isinstance(phi, Know):
        return Know(phi.agent, expand_derived(phi.sub))
    if isinstance(phi, SomeoneKnows):
        return SomeoneKnows(expand_derived(phi.sub))
    if isinstance(phi, OtherKnows):
        return OtherKnows(phi.agent, expand_derived(phi.sub))
    raise TypeError(f"not a formula: {phi!r}")


def uses_state_legal(phi: Formula) -> bool:
    if isinstance(phi, Var):
        return phi.prop.kind == "state_legal"
    if isinstance(phi, Const):
        return False
    if isinstance(phi, Not):
        return uses_state_legal(phi.sub)
    if isinstance(phi, (And, Or, Implies)):
        return uses_state_legal(phi.left) or uses_state_legal(phi.right)
    if isinstance(phi, (Know, SomeoneKnows, OtherKnows)):
        return uses_state_legal(phi.sub)
    raise TypeError(f"not a formula: {phi!r}")


def guard_transform(phi: Formula) -> Formula:
    """Push explicit legality guards into every modal subterm.

    Every ``Know(i, f)`` becomes ``Know(i, state_legal => f')`` recursively
    and the root is guarded the same way.  Evaluated under the total
    relations, the result agrees at every legal world with the original
    formula evaluated under the partial relations; this is exactly what the
    partial relations encapsulate.
    """
    if uses_state_legal(phi):
        raise ValueError("guard_transform expects a formula without state_legal")
    return Implies(Var(STATE_LEGAL), _guard(phi))


def _guard(phi: Formula) -> Formula:
    if isinstance(phi, (Const, Var)):
        return phi
    if isinstance(phi, Not):
        return Not(_guard(phi.sub))
    if isinstance(phi, And):
        return And(_guard(phi.left), _guard(phi.right))
    if isinstance(phi, Or):
        return Or(_guard(phi.left), _guard(phi.right))
    if isinstance(phi, Implies):
        return Implies(_guard(phi.left), _guard(phi.right))
    if isinstance(phi, Know):
        return Know(phi.agent, Implies(Var(STATE_LEGAL), _guard(phi.sub)))
    if isinstance(phi, SomeoneKnows):
        return SomeoneKnows(Implies(Var(STATE_LEGAL), _guard(phi.sub)))
    if isinstance(phi, OtherKnows):
        return OtherKnows(phi.agent, Implies(Var(STATE_LEGAL), _guard(phi.sub)))
    raise TypeError(f"not a formula: {phi!r}")


# ---------------------------------------------------------------------------
# Frames

class KripkeFrame:
    """Worlds, valuation, and both accessibility families.

    Accessibility is stored as a partition: per supervisor and relation, a
    map from estimate to the tuple of member worlds, so evaluating a
    knowledge operator is a scan of one class.  Evaluation results are
    memoized per (relation, context event, formula, world); the cache is
    write-once per key, so sharing the frame between readers is safe.
    """

    def __init__(self, composite: Composite, model: PlantSpec,
                 profile: SupervisionProfile):
        self.composite = composite
        self.model = model
        self.profile = profile
        self.worlds = composite.worlds
        self._legal = {w: (w.plant in model.legal_states) for w in self.worlds}
        n = profile.n
        total: list[dict[Estimate, list[World]]] = [{} for _ in range(n)]
        partial: list[dict[Estimate, list[World]]] = [{} for _ in range(n)]
        for w in self.worlds:
            for i in range(n):
                total[i].setdefault(w.estimates[i], []).append(w)
                if self._legal[w]:
                    partial[i].setdefault(w.estimates[i], []).append(w)
        self._total = [{k: tuple(v) for k, v in per.items()} for per in total]
        self._partial = [{k: tuple(v) for k, v in per.items()} for per in partial]
        self._memo: dict = {}

    # -- structure ---------------------------------------------------------

    def world_legal(self, w: World) -> bool:
        return self._legal[w]

    @property
    def legal_worlds(self) -> tuple[World, ...]:
        return tuple(w for w in self.worlds if self._legal[w])

    def class_of(self, w: World, i: int, relation: Relation = "partial") -> tuple[World, ...]:
        """The accessibility class of ``w`` for supervisor ``i``.

        Under the partial relation the class of a world with an illegal plant
        state is empty.
        """
        if relation == "total":
            return self._total[i][w.estimates[i]]
        if not self._legal[w]:
            return ()
        return self._partial[i][w.estimates[i]]

    def witness(self, w: World):
        return self.composite.witnesses[w]

    # -- valuation ---------------------------------------------------------

    def pi(self, w: World, prop: Prop) -> bool:
        if prop.kind == "possible":
            return (w.plant, prop.event) in self.model.delta
        if prop.kind == "legal":
            return (w.plant, prop.event) in self.model.legal_transitions
        if prop.kind == "state_legal":
            return self._legal[w]
        raise ModelError(f"unknown proposition kind {prop.kind!r}")

    # -- evaluation --------------------------------------------------------

    def eval(self, w: World, phi: Formula, relation: Relation = "partial",
             event: str | None = None) -> bool:
        """Standard inductive semantics.

        ``event`` supplies the controller set for the macro operators
        :class:`SomeoneKnows` and :class:`OtherKnows`; formulas without
        macros do not need it.
        """
        key = (relation, event, phi, w)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        value = self._eval(w, phi, relation, event)
        self._memo[key] = value
        return value

    def _eval(self, w: World, phi: Formula, relation: Relation,
              event: str | None) -> bool:
        if isinstance(phi, Const):
            return phi.value
        if isinstance(phi, Var):
            if phi.prop.event is not None and phi.prop.event not in self.model.events:
                raise ModelError(f"proposition refers to unknown event {phi.prop.event!r}")
            return self.pi(w, phi.prop)
        if isinstance(phi, Not):
            return not self.eval(w, phi.sub, relation, event)
        if isinstance(phi, And):
            return (self.eval(w, phi.left, relation, event)
                    and self.eval(w, phi.right, relation, event))
        if isinstance(phi, Or):
            return (self.eval(w, phi.left, relation, event)
                    or self.eval(w, phi.right, relation, event))
        if isinstance(phi, Implies):
            return (not self.eval(w, phi.left, relation, event)
                    or self.eval(w, phi.right, relation, event))
        if isinstance(phi, Know):
            return all(self.eval(v, phi.sub, relation, event)
                       for v in self.class_of(w, phi.agent, relation))
        if isinstance(phi, SomeoneKnows):
            return any(self.eval(w, Know(i, phi.sub), relation, event)
                       for i in self._controllers(event))
        if isinstance(phi, OtherKnows):
            return any(self.eval(w, Know(j, phi.sub), relation, event)
                       for j in self._controllers(event) if j != phi.agent)
        raise TypeError(f"not a formula: {phi!r}")

    def _controllers(self, event: str | None) -> tuple[int, ...]:
        if event is None:
            raise ModelError("macro operators need a context event")
        return self.profile.controllers(event)


def build_frame(composite: Composite, model: PlantSpec,
                profile: SupervisionProfile) -> KripkeFrame:
    return KripkeFrame(composite, model, profile)


def eval_formula(frame: KripkeFrame, w: World, phi: Formula,
                 relation: Relation = "partial", event: str | None = None) -> bool:
    """Module-level alias for :meth:`KripkeFrame.eval`."""
    return frame.eval(w, phi, relation, event)
