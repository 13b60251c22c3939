"""Physical theories: which vertex types exist and which specifications each allows."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping


class TheoryError(ValueError):
    """Raised when a theory document is malformed or inconsistent."""


Signature = tuple[str, ...]


def signature_of(types) -> Signature:
    """Normalize a multiset of half-edge type names into a sorted tuple."""
    return tuple(sorted(types))


@dataclass(frozen=True)
class HalfEdgeType:
    name: str


@dataclass(frozen=True)
class VertexType:
    name: str
    signature: Signature
    allowed_specs: frozenset[int]

    def __post_init__(self):
        if not self.signature:
            raise TheoryError(f"vertex type {self.name!r} has an empty signature")
        if not self.allowed_specs:
            raise TheoryError(f"vertex type {self.name!r} has no allowed specs")


@dataclass(frozen=True)
class Theory:
    name: str
    half_edge_types: tuple[HalfEdgeType, ...]
    vertex_types: tuple[VertexType, ...]
    pairing: frozenset[tuple[str, str]]
    _by_signature: Mapping[Signature, VertexType] = field(
        default=None, repr=False, compare=False
    )

    def __post_init__(self):
        names = [t.name for t in self.half_edge_types]
        dup = [n for n, k in Counter(names).items() if k > 1]
        if dup:
            raise TheoryError(f"duplicate half-edge type names: {dup}")
        vnames = [v.name for v in self.vertex_types]
        dup = [n for n, k in Counter(vnames).items() if k > 1]
        if dup:
            raise TheoryError(f"duplicate vertex type names: {dup}")
        known = set(names)
        by_sig: dict[Signature, VertexType] = {}
        for vt in self.vertex_types:
            unknown = set(vt.signature) - known
            if unknown:
                raise TheoryError(
                    f"vertex type {vt.name!r} references unknown half-edge types {sorted(unknown)}"
                )
            if vt.signature in by_sig:
                raise TheoryError(
                    f"vertex types {by_sig[vt.signature].name!r} and {vt.name!r} share a signature"
                )
            by_sig[vt.signature] = vt
        for a, b in self.pairing:
            if a not in known or b not in known:
                raise TheoryError(f"pairing ({a}, {b}) references an unknown half-edge type")
        object.__setattr__(self, "_by_signature", by_sig)

    def can_pair(self, a: str, b: str) -> bool:
        return (a, b) in self.pairing or (b, a) in self.pairing

    def vertex_type(self, signature) -> VertexType | None:
        """The vertex type whose star has this signature, ignoring specification."""
        return self._by_signature.get(signature_of(signature))

    def admits(self, signature, spec: int) -> bool:
        return vertex_type_for(self, signature, spec) is not None

    def allowed_specs(self, signature) -> tuple[int, ...]:
        vt = self.vertex_type(signature)
        return tuple(sorted(vt.allowed_specs)) if vt else ()

    def to_document(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "half_edge_types": [t.name for t in self.half_edge_types],
            "pairing": sorted([list(p) for p in self.pairing]),
            "vertex_types": [
                {
                    "name": vt.name,
                    "signature": list(vt.signature),
                    "specs": sorted(vt.allowed_specs),
                }
                for vt in self.vertex_types
            ],
        }


def vertex_type_for(theory: Theory, signature, spec: int) -> VertexType | None:
    vt = theory.vertex_type(signature)
    if vt is None or spec not in vt.allowed_specs:
        return None
    return vt


def load_theory(document: Mapping[str, Any] | str) -> Theory:
    """Build a validated Theory from a JSON document, or a preset name."""
    if isinstance(document, str):
        if document in PRESETS:
            document = PRESETS[document]
        else:
            path = Path(document)
            if not path.exists():
                raise TheoryError(f"unknown theory {document!r}")
            document = json.loads(path.read_text())
    if not document:
        raise TheoryError("empty theory document")
    try:
        name = document["name"]
        he = [HalfEdgeType(str(n)) for n in document["half_edge_types"]]
        pairing = frozenset(tuple(p) for p in document.get("pairing", []))
        if not pairing:
            pairing = frozenset((t.name, t.name) for t in he)
        vts = tuple(
            VertexType(
                name=str(v["name"]),
                signature=signature_of(v["signature"]),
                allowed_specs=frozenset(int(k) for k in v["specs"]),
            )
            for v in document["vertex_types"]
        )
    except (KeyError, TypeError) as exc:
        raise TheoryError(f"malformed theory document: {exc!r}") from exc
    if not he:
        raise TheoryError("theory declares no half-edge types")
    return Theory(name=str(name), half_edge_types=tuple(he), vertex_types=vts, pairing=pairing)


# The crossed two-point vertices carry the specification index; the coupling
# vertex only admits 0.  QED fermion lines are unoriented here.
PRESETS: dict[str, dict[str, Any]] = {
    "phi3": {
        "name": "phi3",
        "half_edge_types": ["s"],
        "pairing": [["s", "s"]],
        "vertex_types": [
            {"name": "phi3-vertex", "signature": ["s", "s", "s"], "specs": [0]},
            {"name": "phi3-crossed", "signature": ["s", "s"], "specs": [0, 1]},
        ],
    },
    "qed": {
        "name": "qed",
        "half_edge_types": ["f", "a"],
        "pairing": [["f", "f"], ["a", "a"]],
        "vertex_types": [
            {"name": "qed-vertex", "signature": ["a", "f", "f"], "specs": [0]},
            {"name": "fermion-crossed", "signature": ["f", "f"], "specs": [0, 1]},
            {"name": "photon-crossed", "signature": ["a", "a"], "specs": [1]},
        ],
    },
}
