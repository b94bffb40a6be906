"""Self-checking isomorphism certificates."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InconsistencyError


@dataclass(frozen=True, eq=False)
class IsoWitness:
    """A pair of mutually inverse structure morphisms.

    ``forward`` and ``backward`` are any morphism type exposing
    ``components`` (the underlying maps of groups with operations, in a
    fixed order) and ``first_violation()``.  Both directions are verified
    when the witness is built; a failure raises :class:`InconsistencyError`.
    """

    forward: object
    backward: object

    def __post_init__(self):
        problem = iso_problem(self.forward, self.backward)
        if problem:
            raise InconsistencyError(f"isomorphism witness rejected: {problem}")

    @property
    def kind(self) -> str:
        return type(self.forward).__name__

    def to_dict(self):
        return {
            "kind": self.kind,
            "forward": [c.map.tolist() for c in self.forward.components],
            "backward": [c.map.tolist() for c in self.backward.components],
        }


def iso_problem(forward, backward) -> str | None:
    for label, m in (("forward", forward), ("backward", backward)):
        v = m.first_violation()
        if v is not None:
            return f"{label} map fails {v.axiom} at {v.witness}"
    fc, bc = forward.components, backward.components
    if len(fc) != len(bc):
        return "component count differs"
    for i, (f, b) in enumerate(zip(fc, bc)):
        if f.dom.order != b.cod.order or f.cod.order != b.dom.order:
            return f"component {i}: orders do not match"
        if not np.array_equal(b.map[f.map], np.arange(f.dom.order)):
            return f"component {i}: backward∘forward is not the identity"
        if not np.array_equal(f.map[b.map], np.arange(b.dom.order)):
            return f"component {i}: forward∘backward is not the identity"
    return None


def witness_from_forward(forward, invert) -> IsoWitness:
    """Build a witness from a bijective forward morphism and an inverter
    ``invert(forward) -> backward``."""
    return IsoWitness(forward, invert(forward))
