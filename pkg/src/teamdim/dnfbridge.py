"""Boolean functions as families, prime implicants, and minimal DNF length.

Valuation ``v`` (variable 0 least significant) corresponds to the subset whose
bitmask is ``v``; a family is the set of satisfying valuations.
"""

from __future__ import annotations

from dataclasses import dataclass

from .dims import BUDGET, EXACT, CoverResult, SearchBudget, solve_cover
from .errors import CapExceededError, ParseError
from .setfam import BaseSet, Family, Interval

MAX_VARS = 20


@dataclass(frozen=True)
class BoolFunc:
    var_count: int
    truth_table: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.var_count < 0:
            raise ValueError("variable count must be non-negative")
        table = tuple(int(v) for v in self.truth_table)
        if len(table) != 1 << self.var_count:
            raise ValueError(f"truth table needs {1 << self.var_count} entries, got {len(table)}")
        if any(v not in (0, 1) for v in table):
            raise ValueError("truth table entries must be 0 or 1")
        object.__setattr__(self, "truth_table", table)

    def __call__(self, valuation: int) -> int:
        return self.truth_table[valuation]

    def minterms(self) -> list[int]:
        return [v for v, out in enumerate(self.truth_table) if out]

    def to_text(self) -> str:
        return f"boolfunc {self.var_count}\n" + "".join(map(str, self.truth_table)) + "\n"


@dataclass(frozen=True, order=True)
class Implicant:
    """A cube: variables in ``care`` are fixed to their bit in ``value``; the rest are free."""

    value: int
    care: int
    var_count: int

    def interval(self) -> Interval:
        free = ((1 << self.var_count) - 1) & ~self.care
        return Interval(self.value, self.value | free)

    def covers(self, valuation: int) -> bool:
        return (valuation ^ self.value) & self.care == 0

    def __str__(self) -> str:
        out = []
        for i in range(self.var_count):
            out.append("-" if not self.care >> i & 1 else str(self.value >> i & 1))
        return "".join(out)


def family_to_boolfunc(fam: Family) -> BoolFunc:
    n = fam.base.size
    if n > MAX_VARS:
        raise CapExceededError(f"{n} variables exceed the cap of {MAX_VARS}")
    table = [0] * (1 << n)
    for m in fam:
        table[m] = 1
    return BoolFunc(n, tuple(table))


def boolfunc_to_family(f: BoolFunc) -> Family:
    return Family(BaseSet(f.var_count), f.minterms())


def prime_implicants(f: BoolFunc) -> list[Implicant]:
    """Quine-McCluskey: repeatedly merge cubes that differ in one fixed variable."""
    n = f.var_count
    if n > MAX_VARS:
        raise CapExceededError(f"{n} variables exceed the cap of {MAX_VARS}")
    full = (1 << n) - 1
    layer = {(v, full) for v in f.minterms()}
    primes: list[Implicant] = []
    while layer:
        merged: set[tuple[int, int]] = set()
        used: set[tuple[int, int]] = set()
        for value, care in layer:
            spare = care & ~value
            while spare:
                bit = spare & -spare
                spare ^= bit
                partner = (value | bit, care)
                if partner in layer:
                    merged.add((value, care & ~bit))
                    used.add((value, care))
                    used.add(partner)
        primes.extend(Implicant(v, c, n) for v, c in layer - used)
        layer = merged
    primes.sort(key=lambda p: (-(n - bin(p.care).count("1")), p.value, p.care))
    return primes


def minimal_dnf_length(f: BoolFunc, budget: SearchBudget | None = None) -> CoverResult:
    """Shortest DNF: fewest prime implicants covering every minterm."""
    minterms = f.minterms()
    if not minterms:
        return CoverResult(0, [])
    position = {v: i for i, v in enumerate(minterms)}
    primes = prime_implicants(f)
    cands = []
    for p in primes:
        mask = 0
        for member in p.interval().members():
            mask |= 1 << position[member]
        cands.append(mask)
    chosen, exact = solve_cover((1 << len(minterms)) - 1, cands, (), budget)
    witness = [primes[i] for i in chosen]
    return CoverResult(len(witness), witness, EXACT if exact else BUDGET)


def parse_boolfunc(text: str) -> BoolFunc:
    """Read ``boolfunc n`` followed by the 2^n-character truth table (may wrap lines)."""
    header: int | None = None
    bits: list[str] = []
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if header is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != "boolfunc" or not parts[1].isdigit():
                raise ParseError("expected header 'boolfunc <n>'", no, 1)
            header = int(parts[1])
            if header > MAX_VARS:
                raise CapExceededError(f"{header} variables exceed the cap of {MAX_VARS}")
            continue
        for col, ch in enumerate(raw, 1):
            if ch in "01":
                bits.append(ch)
            elif ch == "#":
                break
            elif not ch.isspace():
                raise ParseError(f"unexpected character {ch!r} in truth table", no, col)
    if header is None:
        raise ParseError("missing 'boolfunc <n>' header")
    if len(bits) != 1 << header:
        raise ParseError(f"truth table has {len(bits)} entries, expected {1 << header}")
    return BoolFunc(header, tuple(int(b) for b in bits))
