"""The .grp group-file format: JSON with a fixed schema and rationals as strings."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction

from crystalkit.errors import GroupFileSyntaxError, SchemaError, SemanticError
from crystalkit.crystal import CrystalGroup, build_crystal

TOP_KEYS = ("name", "dimension", "generators", "metadata")
REQUIRED = ("name", "dimension", "generators")
GEN_KEYS = ("matrix", "vector")
_RATIONAL = re.compile(r"^\s*(-?\d+)\s*(?:/\s*(-?\d+)\s*)?$")


@dataclass(frozen=True)
class GeneratorSpec:
    matrix: tuple          # rows of ints
    vector: tuple          # rational strings exactly as written


@dataclass(frozen=True)
class GroupFile:
    name: str
    dimension: int
    generators: tuple
    metadata: dict = field(default_factory=dict, compare=False, hash=False)

    def expected(self) -> dict:
        return dict(self.metadata.get("expected", {}))

    def to_crystal(self) -> CrystalGroup:
        mats = [[list(r) for r in g.matrix] for g in self.generators]
        vecs = [[parse_rational(x) for x in g.vector] for g in self.generators]
        return build_crystal(self.dimension, mats, vecs, name=self.name, metadata=dict(self.metadata))


def parse_rational(text: str) -> Fraction:
    m = _RATIONAL.match(text)
    if not m:
        raise SemanticError(f"vector entry {text!r} is not a rational p/q")
    num, den = int(m.group(1)), int(m.group(2) or 1)
    if den == 0:
        raise SemanticError(f"vector entry {text!r} has zero denominator")
    return Fraction(num, den)


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def parse_group_file(text: str) -> GroupFile:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GroupFileSyntaxError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(data, dict):
        raise SchemaError("top level must be an object")
    missing = [k for k in REQUIRED if k not in data]
    extra = [k for k in data if k not in TOP_KEYS]
    if missing:
        raise SchemaError(f"missing fields: {', '.join(missing)}")
    if extra:
        raise SchemaError(f"unexpected fields: {', '.join(extra)}")
    name, n, gens = data["name"], data["dimension"], data["generators"]
    meta = data.get("metadata", {})
    if not isinstance(name, str):
        raise SchemaError("name must be a string")
    if not _is_int(n) or n < 1:
        raise SchemaError("dimension must be a positive integer")
    if not isinstance(gens, list):
        raise SchemaError("generators must be a list")
    if not isinstance(meta, dict):
        raise SchemaError("metadata must be an object")
    specs = []
    for k, g in enumerate(gens):
        if not isinstance(g, dict):
            raise SchemaError(f"generator {k} must be an object")
        if set(g) != set(GEN_KEYS):
            raise SchemaError(f"generator {k} must have exactly the fields matrix and vector")
        M, v = g["matrix"], g["vector"]
        if not isinstance(M, list) or not M or not all(isinstance(r, list) for r in M):
            raise SchemaError(f"generator {k}: matrix must be a list of rows")
        if any(len(r) != len(M) for r in M):
            raise SchemaError(f"generator {k}: matrix is not square")
        if not all(_is_int(x) for r in M for x in r):
            raise SchemaError(f"generator {k}: matrix entries must be integers")
        if not isinstance(v, list) or not all(isinstance(x, str) for x in v):
            raise SchemaError(f"generator {k}: vector must be a list of strings")
        if len(M) != n:
            raise SemanticError(f"generator {k}: matrix size {len(M)} does not match dimension {n}")
        if len(v) != n:
            raise SemanticError(f"generator {k}: vector length {len(v)} does not match dimension {n}")
        for x in v:
            parse_rational(x)
        specs.append(GeneratorSpec(tuple(tuple(r) for r in M), tuple(v)))
    return GroupFile(name, n, tuple(specs), meta)


def write_group_file(gf: GroupFile) -> str:
    """Canonical text; parse_group_file(write_group_file(gf)) == gf."""
    lines = ["{", f'  "name": {json.dumps(gf.name)},', f'  "dimension": {gf.dimension},']
    if gf.generators:
        lines.append('  "generators": [')
        for k, g in enumerate(gf.generators):
            comma = "," if k + 1 < len(gf.generators) else ""
            lines.append("    {")
            lines.append(f'      "matrix": {json.dumps([list(r) for r in g.matrix])},')
            lines.append(f'      "vector": {json.dumps(list(g.vector))}')
            lines.append("    }" + comma)
        lines.append("  ],")
    else:
        lines.append('  "generators": [],')
    meta = json.dumps(gf.metadata, indent=2, sort_keys=True).replace("\n", "\n  ")
    lines.append(f'  "metadata": {meta}')
    lines.append("}")
    return "\n".join(lines) + "\n"


def group_file_from_crystal(G: CrystalGroup, name: str | None = None, metadata: dict | None = None) -> GroupFile:
    specs = []
    for g in G.generators()[:len(G.holonomy.generators)]:
        specs.append(GeneratorSpec(tuple(tuple(r) for r in g.h), tuple(str(Fraction(x)) for x in g.t)))
    return GroupFile(name or G.name, G.n, tuple(specs), dict(metadata or {}))
