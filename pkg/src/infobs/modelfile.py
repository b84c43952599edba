"""Text format for models and JSON format for synthesized supervisors.

Model files are UTF-8, line oriented, ``#`` starts a comment::

    supervisors <n>
    event <name> [obs=<i,...>] [ctrl=<i,...>]
    state <name> [init] [legal]
    trans <src> <event> <dst> [legal]

Supervisor indices in files are 1-based.  Exactly one state carries ``init``.
Parsing validates every structural invariant and reports the offending line.
"""

from __future__ import annotations

import json
import re
from pathlib import Path

from .automata import (PlantSpec, SupervisionProfile, reachable,
                       validate_profile)
from .errors import FormatError
from .fusion import ControlDecision, FusedDecision
from .observation import Estimate, Observer
from .synthesis import PolicyCase, Supervisor, SynthesisResult

_NAME = re.compile(r"^[^\s#=]+$")


def _parse_indices(spec: str, n: int, line: int) -> frozenset[int]:
    out = set()
    for part in spec.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            idx = int(part)
        except ValueError:
            raise FormatError(f"supervisor index {part!r} is not a number", line)
        if not 1 <= idx <= n:
            raise FormatError(f"supervisor index {idx} out of range 1..{n}", line)
        out.add(idx - 1)
    return frozenset(out)


def parse_model(text: str) -> tuple[PlantSpec, SupervisionProfile]:
    """Parse and validate a model file; errors carry line numbers."""
    n: int | None = None
    events: dict[str, tuple[frozenset[int], frozenset[int], int]] = {}
    states: dict[str, tuple[bool, bool, int]] = {}  # name -> (init, legal, line)
    transitions: dict[tuple[str, str], tuple[str, bool, int]] = {}
    pending_events: list[tuple[str, str, str, int]] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        keyword, args = tokens[0], tokens[1:]
        if keyword == "supervisors":
            if n is not None:
                raise FormatError("duplicate supervisors directive", lineno)
            if len(args) != 1 or not args[0].isdigit() or int(args[0]) < 1:
                raise FormatError("supervisors needs one positive count", lineno)
            n = int(args[0])
        elif keyword == "event":
            if not args:
                raise FormatError("event needs a name", lineno)
            obs_spec = ctrl_spec = None
            for extra in args[1:]:
                if extra.startswith("obs=") and obs_spec is None:
                    obs_spec = extra[4:]
                elif extra.startswith("ctrl=") and ctrl_spec is None:
                    ctrl_spec = extra[5:]
                else:
                    raise FormatError(f"unknown event option {extra!r}", lineno)
            pending_events.append((args[0], obs_spec, ctrl_spec, lineno))
        elif keyword == "state":
            if not args:
                raise FormatError("state needs a name", lineno)
            name = args[0]
            if not _NAME.match(name):
                raise FormatError(f"bad state name {name!r}", lineno)
            if name in states:
                raise FormatError(f"duplicate state {name!r}", lineno)
            flags = set(args[1:])
            unknown = flags - {"init", "legal"}
            if unknown:
                raise FormatError(f"unknown state option {unknown.pop()!r}", lineno)
            states[name] = ("init" in flags, "legal" in flags, lineno)
        elif keyword == "trans":
            if len(args) not in (3, 4):
                raise FormatError("trans needs: src event dst [legal]", lineno)
            src, ev, dst = args[:3]
            legal = False
            if len(args) == 4:
                if args[3] != "legal":
                    raise FormatError(f"unknown transition option {args[3]!r}", lineno)
                legal = True
            if (src, ev) in transitions:
                raise FormatError(
                    f"duplicate transition from {src!r} on {ev!r}"
                    " (the plant must stay deterministic)", lineno)
            transitions[(src, ev)] = (dst, legal, lineno)
        else:
            raise FormatError(f"unknown directive {keyword!r}", lineno)

    if n is None:
        raise FormatError("missing supervisors directive", 1)

    observable = [set() for _ in range(n)]
    controllable = [set() for _ in range(n)]
    for name, obs_spec, ctrl_spec, lineno in pending_events:
        if not _NAME.match(name):
            raise FormatError(f"bad event name {name!r}", lineno)
        if name in events:
            raise FormatError(f"duplicate event {name!r}", lineno)
        obs = _parse_indices(obs_spec, n, lineno) if obs_spec else frozenset()
        ctrl = _parse_indices(ctrl_spec, n, lineno) if ctrl_spec else frozenset()
        events[name] = (obs, ctrl, lineno)
        for i in obs:
            observable[i].add(name)
        for i in ctrl:
            controllable[i].add(name)

    initials = [name for name, (init, _lgl, _ln) in states.items() if init]
    if len(initials) != 1:
        raise FormatError(f"exactly one init state required, found {len(initials)}",
                          1 if not initials else states[initials[-1]][2])
    initial = initials[0]
    if not states[initial][1]:
        raise FormatError(f"initial state {initial!r} must be legal",
                          states[initial][2])

    delta = {}
    legal_transitions = set()
    for (src, ev), (dst, legal, lineno) in transitions.items():
        for endpoint in (src, dst):
            if endpoint not in states:
                raise FormatError(f"undefined state {endpoint!r}", lineno)
        if ev not in events:
            raise FormatError(f"undefined event {ev!r}", lineno)
        delta[(src, ev)] = dst
        if legal:
            if not (states[src][1] and states[dst][1]):
                raise FormatError(
                    f"legal transition {src} -{ev}-> {dst} must run between"
                    " legal states", lineno)
            legal_transitions.add((src, ev))

    model = PlantSpec(
        events=frozenset(events),
        states=frozenset(states),
        initial=initial,
        delta=delta,
        legal_states=frozenset(name for name, (_i, lgl, _ln) in states.items() if lgl),
        legal_transitions=frozenset(legal_transitions),
    )
    unreachable = model.states - reachable(model)
    if unreachable:
        worst = min(unreachable, key=lambda s: states[s][2])
        raise FormatError(f"state {worst!r} is unreachable from {initial!r}",
                          states[worst][2])
    profile = SupervisionProfile(tuple(frozenset(o) for o in observable),
                                 tuple(frozenset(c) for c in controllable))
    validate_profile(model, profile)
    return model, profile


def serialize_model(model: PlantSpec, profile: SupervisionProfile) -> str:
    """Canonical text for a model; parse/serialize round-trips to a fixpoint."""
    lines = [f"supervisors {profile.n}"]
    for ev in sorted(model.events):
        parts = [f"event {ev}"]
        obs = [str(i + 1) for i in range(profile.n) if ev in profile.observable[i]]
        ctrl = [str(i + 1) for i in range(profile.n) if ev in profile.controllable[i]]
        if obs:
            parts.append("obs=" + ",".join(obs))
        if ctrl:
            parts.append("ctrl=" + ",".join(ctrl))
        lines.append(" ".join(parts))
    for name in sorted(model.states):
        parts = [f"state {name}"]
        if name == model.initial:
            parts.append("init")
        if name in model.legal_states:
            parts.append("legal")
        lines.append(" ".join(parts))
    for (src, ev), dst in sorted(model.delta.items()):
        parts = [f"trans {src} {ev} {dst}"]
        if (src, ev) in model.legal_transitions:
            parts.append("legal")
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"


def load_model(path: str | Path) -> tuple[PlantSpec, SupervisionProfile]:
    return parse_model(Path(path).read_text(encoding="utf-8"))


# ---------------------------------------------------------------------------
# Supervisor files (JSON, one per supervisor, plus a defaults file)

def _estimate_json(est: Estimate) -> list[str]:
    return sorted(est)


def supervisor_to_json(supervisor: Supervisor, result: SynthesisResult) -> dict:
    obs = supervisor.observer
    table = []
    for (est, ev), decision in sorted(supervisor.table.items(),
                                      key=lambda kv: (sorted(kv[0][0]), kv[0][1])):
        case = result.provenance.get((supervisor.index, est, ev))
        entry = {"state": _estimate_json(est), "event": ev,
                 "decision": decision.value}
        if case is not None:
            entry["case"] = case.value
        table.append(entry)
    return {
        "supervisor": supervisor.index + 1,
        "observable": sorted(obs.observable),
        "initial": _estimate_json(obs.initial),
        "states": sorted((_estimate_json(e) for e in obs.states)),
        "transitions": [
            {"src": _estimate_json(src), "event": ev, "dst": _estimate_json(dst)}
            for (src, ev), dst in sorted(obs.delta.items(),
                                         key=lambda kv: (sorted(kv[0][0]), kv[0][1]))
        ],
        "table": table,
    }


def save_supervisors(result: SynthesisResult, directory: str | Path) -> list[Path]:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for sup in result.supervisors:
        path = directory / f"supervisor_{sup.index + 1}.json"
        path.write_text(json.dumps(supervisor_to_json(sup, result), indent=2) + "\n",
                        encoding="utf-8")
        written.append(path)
    defaults_path = directory / "defaults.json"
    defaults_path.write_text(
        json.dumps({"defaults": {ev: dft.value
                                 for ev, dft in sorted(result.defaults.items())}},
                   indent=2) + "\n",
        encoding="utf-8")
    written.append(defaults_path)
    return written


def load_supervisors(directory: str | Path) -> SynthesisResult:
    """Rebuild a :class:`SynthesisResult` from a supervisor directory."""
    directory = Path(directory)
    paths = sorted(directory.glob("supervisor_*.json"))
    if not paths:
        raise FormatError(f"no supervisor_*.json files in {directory}")
    supervisors = []
    provenance: dict = {}
    for path in paths:
        data = json.loads(path.read_text(encoding="utf-8"))
        index = int(data["supervisor"]) - 1
        states = frozenset(frozenset(e) for e in data["states"])
        delta = {(frozenset(t["src"]), t["event"]): frozenset(t["dst"])
                 for t in data["transitions"]}
        observer = Observer(index, frozenset(data["observable"]),
                            frozenset(data["initial"]), states, delta)
        table = {}
        for entry in data["table"]:
            est = frozenset(entry["state"])
            decision = ControlDecision(entry["decision"])
            table[(est, entry["event"])] = decision
            if "case" in entry:
                provenance[(index, est, entry["event"])] = PolicyCase(entry["case"])
        supervisors.append(Supervisor(observer, table))
    supervisors.sort(key=lambda s: s.index)
    if [s.index for s in supervisors] != list(range(len(supervisors))):
        raise FormatError(f"supervisor files in {directory} do not cover 1..n")
    defaults_file = directory / "defaults.json"
    if not defaults_file.exists():
        raise FormatError(f"missing defaults.json in {directory}")
    raw = json.loads(defaults_file.read_text(encoding="utf-8"))["defaults"]
    defaults = {ev: FusedDecision(v) for ev, v in raw.items()}
    return SynthesisResult(tuple(supervisors), defaults, provenance)
