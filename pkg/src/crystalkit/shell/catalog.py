"""Built-in catalog of flat manifold groups shipped as .grp files."""

from __future__ import annotations

from functools import lru_cache
from importlib import resources

from crystalkit.errors import InvalidInput, NotOrientable
from crystalkit.crystal import CrystalGroup, abelianization, betti1, is_torsion_free
from crystalkit.shell.groupfile import GroupFile, parse_group_file


class UnknownEntry(InvalidInput):
    pass


def _data_dir():
    return resources.files("crystalkit.shell").joinpath("data")


@lru_cache(maxsize=None)
def catalog_names() -> tuple[str, ...]:
    return tuple(sorted(p.name[:-4] for p in _data_dir().iterdir() if p.name.endswith(".grp")))


@lru_cache(maxsize=None)
def catalog_text(name: str) -> str:
    if name not in catalog_names():
        raise UnknownEntry(f"no catalog entry named {name!r}")
    return _data_dir().joinpath(f"{name}.grp").read_text(encoding="utf-8")


def catalog_entry(name: str) -> GroupFile:
    return parse_group_file(catalog_text(name))


def catalog_group(name: str) -> CrystalGroup:
    return catalog_entry(name).to_crystal()


def entries_with_tag(tag: str) -> list[str]:
    return [k for k in catalog_names() if tag in catalog_entry(k).metadata.get("tags", [])]


def computed_invariants(G: CrystalGroup, with_spin: bool = True) -> dict:
    """The invariants stored as expected metadata, recomputed from scratch."""
    ab = abelianization(G)
    out = {
        "dimension": G.n,
        "holonomy_order": G.order,
        "orientable": G.is_orientable(),
        "torsion_free": is_torsion_free(G),
        "betti1": betti1(G),
        "abelianization": [ab.free_rank, list(ab.torsion)],
    }
    if with_spin:
        from crystalkit.spin import spin_structures
        try:
            out["spin_count"] = spin_structures(G, keep_lifts=0).count
        except NotOrientable:
            out["spin_count"] = "NotOrientable"
    return out


def verify_entry(name: str) -> dict:
    """Stored expectation vs recomputation; returns the mismatching keys."""
    gf = catalog_entry(name)
    expected = gf.expected()
    actual = computed_invariants(gf.to_crystal(), with_spin="spin_count" in expected)
    return {k: (v, actual.get(k)) for k, v in expected.items() if actual.get(k) != v}
