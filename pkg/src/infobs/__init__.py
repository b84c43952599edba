"""Decentralized supervisory control of discrete-event systems.

The package models a plant with a legal subautomaton, builds per-supervisor
observers and the epistemic frame over their composite, decides
controllability and the family of inference-observability conditions,
synthesizes knowledge-based supervisors whose decisions mirror the condition
line by line, and cross-checks everything with brute-force oracles at desk
scale.
"""

from .automata import (Automaton, EquivalenceVerdict, PlantSpec,
                       SupervisionProfile, dfa_equivalent, format_word,
                       language_upto, legal_automaton, plant_automaton,
                       reachable, validate_model, validate_profile)
from .conditions import (Counterexample, Verdict, can_disable, can_enable,
                         check_controllability, check_coobservability,
                         check_inf_obs_corrected, check_inf_obs_extended,
                         check_inf_obs_legacy, default_frame, must_disable,
                         must_enable)
from .errors import (AlphabetMismatch, ControlConflict, EnumerationBound,
                     FormatError, InfobsError, InstanceTooLarge, ModelError,
                     NotControllable, NotInferenceObservable, PolicyAmbiguity,
                     SynthesisError, UndefinedFusion)
from .explain import Explanation, explain
from .fusion import (ABSTAIN, DISABLE, ENABLE, OFF, ON, WOFF, WON,
                     ControlDecision, FusedDecision, fuse, fuse_legacy_pair)
from .kripke import (And, Const, Formula, Implies, Know, KripkeFrame, Not, Or,
                     OtherKnows, Prop, SomeoneKnows, Var, build_frame,
                     eval_formula, expand_derived, guard_transform, legal,
                     possible, STATE_LEGAL)
from .modelfile import (load_model, load_supervisors, parse_model,
                        save_supervisors, serialize_model)
from .observation import (Composite, Observer, World, build_composite,
                          compose, project)
from .oracle import (OracleVerdict, SearchResult, exhaustive_supervisor_search,
                     oracle_condition, oracle_solves)
from .randgen import instance_stream, random_instance
from .synthesis import (PolicyCase, Supervisor, SynthesisResult, closed_loop,
                        kp, kp_case, project_policy, synthesize,
                        verify_solution)

__version__ = "0.1.0"
