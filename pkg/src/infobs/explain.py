"""Structured per-decision explanations for the simulator and reports."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ModelError
from .fusion import ControlDecision, FusedDecision, fuse
from .kripke import KripkeFrame
from .observation import World
from .synthesis import PolicyCase, SynthesisResult, kp_case, policy_truths

_TRUTH_LABELS = ("knows can-enable", "knows can-disable",
                 "knows others cover enabling", "knows others cover disabling")


@dataclass(frozen=True)
class SupervisorView:
    supervisor: int                     # 0-based
    estimate: frozenset[str]
    class_members: tuple[World, ...]
    truths: tuple[bool, bool, bool, bool]
    decision: ControlDecision
    case: PolicyCase | None             # None when a table overrides the policy


@dataclass(frozen=True)
class Explanation:
    event: str
    world: World
    controllable: bool
    views: tuple[SupervisorView, ...] = ()
    fused: FusedDecision | None = None
    default: FusedDecision | None = None

    def lines(self) -> list[str]:
        """Render for terminals; one block per supervisor."""
        if not self.controllable:
            return [f"event {self.event}: uncontrollable; always allowed when possible"]
        out = [f"event {self.event}: controllable by "
               + ", ".join(str(v.supervisor + 1) for v in self.views)]
        for v in self.views:
            members = ", ".join(w.pretty() for w in v.class_members) or "(none)"
            out.append(f"  supervisor {v.supervisor + 1}: estimate "
                       "{" + ",".join(sorted(v.estimate)) + "}")
            out.append(f"    considers possible: {members}")
            for label, value in zip(_TRUTH_LABELS, v.truths):
                out.append(f"    {label}: {'yes' if value else 'no'}")
            origin = v.case.value if v.case is not None else "from table"
            out.append(f"    decision: {v.decision} ({origin})")
        bag = ", ".join(str(v.decision) for v in self.views)
        out.append(f"  fused({bag}) with default {self.default} -> {self.fused}")
        return out

    def as_dict(self) -> dict:
        if not self.controllable:
            return {"event": self.event, "controllable": False}
        return {
            "event": self.event,
            "controllable": True,
            "supervisors": [
                {
                    "supervisor": v.supervisor + 1,
                    "estimate": sorted(v.estimate),
                    "class": [w.pretty() for w in v.class_members],
                    "knows_can_enable": v.truths[0],
                    "knows_can_disable": v.truths[1],
                    "knows_cover_enable": v.truths[2],
                    "knows_cover_disable": v.truths[3],
                    "decision": v.decision.value,
                    "case": v.case.value if v.case else None,
                }
                for v in self.views
            ],
            "fused": self.fused.value if self.fused else None,
            "default": self.default.value if self.default else None,
        }


def explain(frame: KripkeFrame, result: SynthesisResult, w: World,
            event: str) -> Explanation:
    """Explain the fused decision for ``event`` at world ``w``.

    The knowledge truths always come from the policy; the decision shown is
    the supervisor table's entry where one resolves (it can differ from the
    policy only for hand-edited tables), so the fused value matches what the
    closed loop would do.
    """
    controllers = frame.profile.controllers(event)
    if not controllers:
        return Explanation(event, w, controllable=False)
    views = []
    for i in controllers:
        policy_decision, case = kp_case(frame, w, event, i)
        decision = policy_decision
        if i < len(result.supervisors):
            try:
                decision = result.supervisors[i].decide(w.estimates[i], event)
            except ModelError:
                pass
        views.append(SupervisorView(
            supervisor=i,
            estimate=w.estimates[i],
            class_members=frame.class_of(w, i, "partial"),
            truths=policy_truths(frame, w, event, i),
            decision=decision,
            case=case if decision is policy_decision else None,
        ))
    fused = fuse([v.decision for v in views], result.defaults[event])
    return Explanation(event, w, True, tuple(views), fused,
                       result.defaults[event])
