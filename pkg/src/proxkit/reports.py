"""Law reports: the one result shape every check produces.

Statuses:

* ``holds-exhaustive``: the decision covers every instance, either by full
  enumeration or by a closed-form rule that settles all levels;
* ``holds-on-family``: verified on the generated probe family only;
* ``counterexample``: refuted, with re-checkable witnesses;
* ``inconclusive``: neither proved nor refuted within the probe budget;
* ``refused``: the subject violates a precondition; the first witness names
  the originating error.
"""

from __future__ import annotations

from dataclasses import dataclass

HOLDS_EXHAUSTIVE = "holds-exhaustive"
HOLDS_ON_FAMILY = "holds-on-family"
COUNTEREXAMPLE = "counterexample"
INCONCLUSIVE = "inconclusive"
REFUSED = "refused"

_HOLDING = (HOLDS_EXHAUSTIVE, HOLDS_ON_FAMILY)


@dataclass(frozen=True)
class Witness:
    kind: str
    rendering: str

    def to_json_dict(self) -> dict:
        return {"kind": self.kind, "rendering": self.rendering}


def note(text: str) -> Witness:
    return Witness("note", text)


def witness_set(s) -> Witness:
    return Witness("set", s.render())


def witness_pair(a, b) -> Witness:
    return Witness("pair", f"({a.render()}, {b.render()})")


@dataclass(frozen=True)
class LawReport:
    law: str
    subjects: tuple
    status: str
    witnesses: tuple = ()
    cases_checked: int = 0
    seed: int | None = None
    elapsed_ms: int = 0

    def holds(self) -> bool:
        return self.status in _HOLDING

    def to_json_dict(self) -> dict:
        return {
            "law": self.law,
            "subjects": list(self.subjects),
            "status": self.status,
            "witnesses": [w.to_json_dict() for w in self.witnesses],
            "cases_checked": self.cases_checked,
            "seed": self.seed,
            "elapsed_ms": self.elapsed_ms,
        }


def exit_code(reports) -> int:
    """0 all holding, 1 any counterexample, 3 any inconclusive or refusal."""
    statuses = [r.status for r in reports]
    if any(s == COUNTEREXAMPLE for s in statuses):
        return 1
    if any(s in (INCONCLUSIVE, REFUSED) for s in statuses):
        return 3
    return 0
