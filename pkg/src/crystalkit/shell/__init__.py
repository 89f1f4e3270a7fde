"""Group files, the built-in catalog and the command-line interface."""

from crystalkit.shell.catalog import (
    catalog_entry,
    catalog_group,
    catalog_names,
    computed_invariants,
    entries_with_tag,
    verify_entry,
)
from crystalkit.shell.cli import main, run_command
from crystalkit.shell.groupfile import (
    GeneratorSpec,
    GroupFile,
    group_file_from_crystal,
    parse_group_file,
    write_group_file,
)

__all__ = [
    "GeneratorSpec",
    "GroupFile",
    "catalog_entry",
    "catalog_group",
    "catalog_names",
    "computed_invariants",
    "entries_with_tag",
    "group_file_from_crystal",
    "main",
    "parse_group_file",
    "run_command",
    "verify_entry",
]
