"""Decision alphabets and the two fusion rules.

Control decisions (what individual supervisors vote) and fused decisions
(what the plant actually experiences) are deliberately distinct enumerations:
there are no operations on fused decisions, they are final.

Two rules are provided.  The five-valued rule with a per-event default action
is the one synthesis couples to; the legacy four-valued two-supervisor table
is kept verbatim for comparison, including its row that resolves the on/off
conflict as disable, a case the five-valued rule treats as an error because
conforming supervisors never produce it.
"""

from __future__ import annotations

from enum import Enum
from typing import Iterable

from .errors import ControlConflict, UndefinedFusion


class ControlDecision(Enum):
    ON = "on"
    OFF = "off"
    WON = "won"
    WOFF = "woff"
    ABSTAIN = "abstain"

    def __str__(self) -> str:
        return self.value


class FusedDecision(Enum):
    ENABLE = "enable"
    DISABLE = "disable"

    def __str__(self) -> str:
        return self.value


ON = ControlDecision.ON
OFF = ControlDecision.OFF
WON = ControlDecision.WON
WOFF = ControlDecision.WOFF
ABSTAIN = ControlDecision.ABSTAIN
ENABLE = FusedDecision.ENABLE
DISABLE = FusedDecision.DISABLE


def fuse(cd: Iterable[ControlDecision], dft: FusedDecision) -> FusedDecision:
    """Five-valued fusion with default action ``dft``.

    A definite vote wins outright; a conditional vote wins only when no
    definite vote and no opposite conditional vote is present; the default
    applies when everyone abstains.  Order and multiplicity of the bag do
    not matter.

    Raises :class:`ControlConflict` on {on, off} and :class:`UndefinedFusion`
    on {won, woff} without a definite vote; both are unreachable for
    supervisors that follow the knowledge-based policy.
    """
    bag = set(cd)
    has_on, has_off = ON in bag, OFF in bag
    has_won, has_woff = WON in bag, WOFF in bag
    if has_on and has_off:
        raise ControlConflict("bag contains both on and off")
    if has_on:
        return ENABLE
    if has_off:
        return DISABLE
    if has_won and has_woff:
        raise UndefinedFusion("bag contains both won and woff with no definite vote")
    if has_won:
        return ENABLE
    if has_woff:
        return DISABLE
    return dft


#: Legacy two-supervisor fusion over {on, off, woff, abstain}, by unordered
#: pair.  Exactly the published table; note off beats on here.
_LEGACY_TABLE = {
    frozenset({ON}): ENABLE,            # on, on
    frozenset({ON, WOFF}): ENABLE,
    frozenset({ON, ABSTAIN}): ENABLE,
    frozenset({OFF}): DISABLE,          # off, off
    frozenset({OFF, ON}): DISABLE,
    frozenset({OFF, ABSTAIN}): DISABLE,
    frozenset({WOFF, OFF}): DISABLE,
    frozenset({WOFF}): DISABLE,         # woff, woff
    frozenset({WOFF, ABSTAIN}): DISABLE,
    frozenset({ABSTAIN}): ENABLE,       # abstain, abstain
}


def fuse_legacy_pair(cd_i: ControlDecision, cd_j: ControlDecision) -> FusedDecision:
    """Legacy four-valued rule for exactly two supervisors."""
    pair = frozenset({cd_i, cd_j})
    try:
        return _LEGACY_TABLE[pair]
    except KeyError:
        names = ", ".join(sorted(d.value for d in pair))
        raise UndefinedFusion(f"pair ({names}) is outside the legacy table") from None
