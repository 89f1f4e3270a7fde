"""Out-finiteness and related predicates, decided by two independent routes.

Route one reads indicators, Galois orbits and multiplicities off the
character table.  Route two classifies the simple blocks of the
commutant algebra.  ``out_finite`` computes both and insists they agree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from crystalkit.errors import CrossValidationMismatch, TableMismatch
from crystalkit.groups import CharacterTable
from crystalkit.repanalysis.algebra import (
    FINITE_UNIT_KINDS,
    BlockReport,
    IntegralRep,
    block_decomposition,
    commutant,
)

FINITE = "Finite"
INFINITE = "Infinite"
INDETERMINATE = "Indeterminate"
YES = "Yes"
NO = "No"


@dataclass
class MultiplicityVector:
    multiplicities: list[int]            # a_chi per irreducible, table order
    orbit_multiplicities: list[int]      # one per Galois orbit, table orbit order
    degree: int

    def constituents(self) -> list[int]:
        return [i for i, a in enumerate(self.multiplicities) if a > 0]


def complex_multiplicities(rho: IntegralRep, table: CharacterTable | None = None) -> MultiplicityVector:
    if table is None:
        table = rho.table()
    elif table.group is not rho.group:
        if table.order != rho.group.order or set(table.group.elements) != set(rho.group.elements):
            raise TableMismatch("character table belongs to a different group")
        table = rho.table()
    trace = rho.character()
    mults = []
    for row in table.characters:
        a = table.inner_product(trace, row)
        if a.denominator != 1 or a < 0:
            raise ArithmeticError(f"multiplicity {a} is not a nonnegative integer")
        mults.append(int(a))
    if sum(a * table.degree(i) for i, a in enumerate(mults)) != rho.degree:
        raise ArithmeticError("multiplicities do not account for the degree")
    orbit_mults = []
    for orbit in table.orbits:
        vals = {mults[i] for i in orbit}
        if len(vals) != 1:
            raise ArithmeticError("multiplicity varies along a Galois orbit")
        orbit_mults.append(vals.pop())
    return MultiplicityVector(mults, orbit_mults, rho.degree)


# ---------------------------------------------------------------------------
# character checklist
# ---------------------------------------------------------------------------

def _checklist_ok(table: CharacterTable, i: int, a: int) -> bool:
    ind = table.indicators[i]
    orbit = table.orbit_of(i)
    if ind == 1:
        return len(orbit) == 1 and a == 1
    if ind == 0:
        return sorted(orbit) == sorted({i, table.conjugate_index(i)}) and a == 1
    return len(orbit) == 1 and a == 2


@dataclass
class OutFiniteResult:
    verdict: str
    checklist_verdict: str
    block_verdict: str
    failing_characters: list[int]
    blocks: list[BlockReport] = field(default_factory=list)
    multiplicities: MultiplicityVector | None = None


def _attach_constituents(rho: IntegralRep, blocks: list[BlockReport], mv: MultiplicityVector) -> None:
    """Identify which irreducibles live in each block via traces of h e."""
    table = rho.table()
    G = rho.group
    n = rho.degree
    for b in blocks:
        e = b.idempotent
        trace = []
        for z in table.representatives:
            h = G.elements[z]
            trace.append(sum((sum(h[r][k] * e[k][r] for k in range(n)) for r in range(n)), Fraction(0)))
        b.constituents = [i for i, row in enumerate(table.characters) if table.inner_product(trace, row) != 0]
        if b.constituents:
            b.multiplicity = mv.multiplicities[b.constituents[0]]


def analyze(rho: IntegralRep, seed: int = 0) -> OutFiniteResult:
    """Both routes plus the raw data they were computed from."""
    table = rho.table()
    mv = complex_multiplicities(rho, table)
    failing = [i for i, a in enumerate(mv.multiplicities) if a > 0 and not _checklist_ok(table, i, a)]
    checklist = INFINITE if failing else FINITE
    blocks = block_decomposition(commutant(rho), seed=seed)
    _attach_constituents(rho, blocks, mv)
    block_route = FINITE if all(b.classification in FINITE_UNIT_KINDS for b in blocks) else INFINITE
    verdict = checklist if checklist == block_route else INDETERMINATE
    return OutFiniteResult(verdict, checklist, block_route, failing, blocks, mv)


def out_finite(rho: IntegralRep, seed: int = 0) -> OutFiniteResult:
    res = analyze(rho, seed=seed)
    if res.checklist_verdict != res.block_verdict:
        raise CrossValidationMismatch(
            f"character checklist says {res.checklist_verdict}, commutant blocks say {res.block_verdict}")
    return res


# ---------------------------------------------------------------------------
# multiplicity-freeness and its variants
# ---------------------------------------------------------------------------

def _block_division_by_characters(rho: IntegralRep, b: BlockReport) -> bool | None:
    """Schur-index argument: a = m s with s | chi(1); indicator -1 forces 2 | s."""
    table = rho.table()
    if not b.constituents:
        return None
    i = b.constituents[0]
    a = b.multiplicity
    if a == 1:
        return True
    if table.indicators[i] == -1 and a == 2:
        return True
    if table.degree(i) % a != 0:
        return False
    return None


def block_is_division(rho: IntegralRep, b: BlockReport) -> bool | None:
    if b.division is not None:
        by_chars = _block_division_by_characters(rho, b)
        if by_chars is not None and by_chars != b.division:
            raise CrossValidationMismatch("Hilbert-symbol and Schur-index verdicts disagree")
        return b.division
    return _block_division_by_characters(rho, b)


def mult_free_check(rho: IntegralRep, seed: int = 0) -> str:
    """Yes iff every simple block of the commutant is a division algebra."""
    res = analyze(rho, seed=seed)
    verdicts = [block_is_division(rho, b) for b in res.blocks]
    if any(v is False for v in verdicts):
        return NO
    if any(v is None for v in verdicts):
        return INDETERMINATE
    return YES


def kahler_out_finite(rho: IntegralRep, seed: int = 0) -> str:
    """Multiplicity-free with every real-irreducible component complex-reducible."""
    table = rho.table()
    mv = complex_multiplicities(rho, table)
    if any(a > 0 and table.indicators[i] == 1 for i, a in enumerate(mv.multiplicities)):
        return INFINITE
    mf = mult_free_check(rho, seed=seed)
    return {YES: FINITE, NO: INFINITE}.get(mf, INDETERMINATE)


def calabi_yau_check(rho: IntegralRep) -> bool:
    """Every real-type constituent occurs with even multiplicity."""
    table = rho.table()
    mv = complex_multiplicities(rho, table)
    return all(a % 2 == 0 for i, a in enumerate(mv.multiplicities) if table.indicators[i] == 1)
