"""Chain-condition verdicts for Leavitt path algebras.

Verdicts are ``"yes"``, ``"no"`` or ``"unknown"``.  Each report lists the rules
it applied (stable ids from :data:`RULES`) and carries computed witnesses, so
every verdict can be replayed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from .graph import Graph, analyze
from .lpa import LeavittPathAlgebra
from .rings import RingDescriptor

YES, NO, UNKNOWN = "yes", "no", "unknown"

RULES = {
    "noetherian-criterion": "L_R(E) is left (right) noetherian iff E is finite, every cycle is exit-free "
    "and R is left (right) noetherian",
    "artinian-criterion": "L_R(E) is left (right) artinian iff E is finite acyclic and R is left (right) artinian",
    "semisimple-sufficient": "E finite acyclic, R semisimple and every nonzero integer invertible in R: "
    "the epsilon-unit trace is invertible in degree 0, so L_R(E) is semisimple",
    "semisimple-necessary": "a semisimple L_R(E) forces E finite acyclic and R semisimple",
    "semisimple-open": "E acyclic and R semisimple, but some nonzero integer is not invertible in R; "
    "the sufficient condition does not apply and is not necessary",
    "exit-gives-idempotents": "a cycle with an exit yields infinitely many distinct pairwise orthogonal "
    "idempotents gamma^n alpha alpha^* (gamma^*)^n in degree 0",
    "cycle-gives-infinite-support": "a cycle gamma gives nonzero components in every degree (powers of gamma)",
    "acyclic-finite-support": "an acyclic graph has support inside [-L, L], L the longest path length",
    "degree-zero-filtration": "without exits on cycles the degree-0 part is C_0 + ... + C_k",
    "crossed-noetherian": "a unital twisted partial crossed product by a polycyclic-by-finite group "
    "is left (right) noetherian iff R is",
    "crossed-artinian-torsion-free": "for a torsion-free group the crossed product is left (right) artinian iff "
    "R is and D_g = 0 for all but finitely many g",
    "graded-artinian-sufficient": "an epsilon-strong grading with finite support over a left (right) artinian "
    "principal component is left (right) artinian",
    "graded-artinian-necessary": "the principal component of a left (right) artinian graded ring is "
    "left (right) artinian",
    "graded-semisimple-necessary": "the principal component of a semisimple graded ring is semisimple",
}

VERDICT_FIELDS = ("noetherian_left", "noetherian_right", "artinian_left", "artinian_right", "semisimple")


def _yn(flag: bool) -> str:
    return YES if flag else NO


@dataclass
class ClassificationReport:
    subject: str
    noetherian_left: str
    noetherian_right: str
    artinian_left: str
    artinian_right: str
    semisimple: str
    rules: list[str] = field(default_factory=list)
    witnesses: dict[str, Any] = field(default_factory=dict)
    reasons: dict[str, str] = field(default_factory=dict)

    def verdicts(self) -> dict[str, str]:
        return {f: getattr(self, f) for f in VERDICT_FIELDS}

    def to_dict(self) -> dict[str, Any]:
        return {
            "subject": self.subject,
            **self.verdicts(),
            "reasons": dict(self.reasons),
            "rules": [{"id": r, "statement": RULES[r]} for r in self.rules],
            "witnesses": self.witnesses,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False)

    def render_text(self) -> str:
        lines = [f"subject: {self.subject}"]
        for f in VERDICT_FIELDS:
            reason = self.reasons.get(f)
            lines.append(f"{f}: {getattr(self, f)}" + (f"  ({reason})" if reason else ""))
        if self.witnesses:
            lines.append("witnesses:")
            for k, v in self.witnesses.items():
                if isinstance(v, list):
                    lines.append(f"  {k}:")
                    lines.extend(f"    {x}" for x in v)
                else:
                    lines.append(f"  {k}: {v}")
        lines.append("rules:")
        lines.extend(f"  [{r}] {RULES[r]}" for r in self.rules)
        return "\n".join(lines)


def classify_lpa(g: Graph, r: RingDescriptor, witness_count: int = 4) -> ClassificationReport:
    rep = analyze(g)
    flags = r.flags()
    alg = LeavittPathAlgebra(g, r)
    rules: list[str] = []
    wit: dict[str, Any] = {}
    reasons: dict[str, str] = {}

    rules.append("noetherian-criterion")
    noeth = {}
    for side in ("left", "right"):
        noeth[side] = _yn(rep.condition_ne and flags.noetherian(side))
        if not rep.condition_ne:
            reasons[f"noetherian_{side}"] = "a cycle has an exit"
        elif not flags.noetherian(side):
            reasons[f"noetherian_{side}"] = f"{r} is not {side} noetherian"
    if rep.condition_ne:
        rules.append("degree-zero-filtration")
        wit["stabilization_level"] = alg.cm_filtration().k
    else:
        rules.append("exit-gives-idempotents")
        cycle, exit_edge = rep.ne_witness
        idems = alg.ne_witness_idempotents(cycle, exit_edge, witness_count)
        verified = all(
            (x * y == x) if i == j else (x * y).is_zero()
            for i, x in enumerate(idems)
            for j, y in enumerate(idems)
        ) and len(set(idems)) == len(idems)
        wit["exit_cycle"] = ".".join(cycle)
        wit["exit_edge"] = exit_edge
        wit["orthogonal_idempotents"] = [str(x) for x in idems]
        wit["idempotents_verified"] = verified

    rules.append("artinian-criterion")
    art = {}
    for side in ("left", "right"):
        art[side] = _yn(rep.acyclic and flags.artinian(side))
        if not rep.acyclic:
            reasons[f"artinian_{side}"] = "the graph has a cycle (infinite support)"
        elif not flags.artinian(side):
            reasons[f"artinian_{side}"] = f"{r} is not {side} artinian"
    if rep.acyclic:
        rules.append("acyclic-finite-support")
        wit["support_bound"] = int(rep.max_path_length)
    else:
        rules.append("cycle-gives-infinite-support")
        wit["cycle"] = ".".join(rep.cycle_witness)

    if not rep.acyclic or not flags.semisimple:
        semi = NO
        rules.append("semisimple-necessary")
        reasons["semisimple"] = "the graph has a cycle" if not rep.acyclic else f"{r} is not semisimple"
    elif flags.all_nonzero_integers_invertible:
        semi = YES
        rules.append("semisimple-sufficient")
        t = alg.trace_unit()
        t_inv = alg.trace_inverse()
        eps0 = alg.epsilon(0).value
        wit["trace"] = str(t)
        wit["trace_inverse"] = str(t_inv)
        wit["trace_inverse_verified"] = t * t_inv == eps0 and t_inv * t == eps0
    else:
        semi = UNKNOWN
        rules.append("semisimple-open")
        reasons["semisimple"] = f"nonzero integers are not all invertible in {r}"

    return ClassificationReport(
        subject=f"L_{r}(E) for E with vertices {' '.join(g.vertices)}",
        noetherian_left=noeth["left"],
        noetherian_right=noeth["right"],
        artinian_left=art["left"],
        artinian_right=art["right"],
        semisimple=semi,
        rules=rules,
        witnesses=wit,
        reasons=reasons,
    )
