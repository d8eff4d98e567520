"""Residue classes and covering systems: verification, splitting, affine
transforms, exhaustive enumeration over a moduli multiset, and orbit closure.

A covering system is a finite list of residue classes a(n) whose union is
all of Z; verification is exhaustive over one period lcm(n_1..n_t).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

from . import _cover_kernels
from .arith import NotCoprime

DEFAULT_MAX_ASSIGNMENTS = 2_000_000


class ModulusMismatch(ValueError):
    """Swap requested between classes with different moduli."""


class BudgetExceeded(RuntimeError):
    """Enumeration space larger than the allowed assignment budget."""


@dataclass(frozen=True)
class ResidueClass:
    """The arithmetic progression residue + modulus * Z."""

    residue: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError("modulus must be a positive integer")
        if not 0 <= self.residue < self.modulus:
            raise ValueError(f"residue {self.residue} out of range for modulus {self.modulus}")

    def covers(self, x: int) -> bool:
        return (x - self.residue) % self.modulus == 0

    def __str__(self) -> str:
        return f"{self.residue}({self.modulus})"


_CLASS_RE = re.compile(r"^\s*(\d+)\s*\(\s*(\d+)\s*\)\s*$")


@dataclass(frozen=True, init=False)
class CoveringSystem:
    """An ordered tuple of residue classes with their period lcm.

    The name is aspirational: instances need not actually cover Z; use
    verify_cover to check. Order matters (classes are positional for
    swaps and prime assignments), and equality is positional too.
    """

    classes: tuple[ResidueClass, ...]
    lcm: int

    def __init__(self, classes):
        cs = []
        for c in classes:
            if isinstance(c, ResidueClass):
                cs.append(c)
            else:
                a, n = c
                cs.append(ResidueClass(int(a), int(n)))
        if not cs:
            raise ValueError("a covering system needs at least one class")
        object.__setattr__(self, "classes", tuple(cs))
        object.__setattr__(self, "lcm", math.lcm(*(c.modulus for c in cs)))

    @property
    def residues(self) -> tuple[int, ...]:
        return tuple(c.residue for c in self.classes)

    @property
    def moduli(self) -> tuple[int, ...]:
        return tuple(c.modulus for c in self.classes)

    def covers(self, x: int) -> bool:
        return any(c.covers(x) for c in self.classes)

    @classmethod
    def parse(cls, text: str) -> "CoveringSystem":
        """Parse "a1(n1),a2(n2),..." into a system."""
        parts = text.split(",")
        classes = []
        for part in parts:
            m = _CLASS_RE.match(part)
            if not m:
                raise ValueError(f"cannot parse residue class {part!r}; expected a(n)")
            classes.append(ResidueClass(int(m.group(1)), int(m.group(2))))
        return cls(classes)

    @classmethod
    def from_json(cls, items) -> "CoveringSystem":
        return cls((item["a"], item["n"]) for item in items)

    def to_json(self) -> list[dict]:
        return [{"a": c.residue, "n": c.modulus} for c in self.classes]

    def __str__(self) -> str:
        return ",".join(str(c) for c in self.classes)


def verify_cover(system: CoveringSystem) -> tuple[bool, int | None]:
    """Exhaustively test one full period.

    Returns (True, None) for a cover, else (False, w) where w is the
    smallest uncovered nonnegative integer.
    """
    for x in range(system.lcm):
        if not system.covers(x):
            return False, x
    return True, None


def split_class(cls: ResidueClass, factor: int) -> list[ResidueClass]:
    """Replace a(n) by the equivalent classes a + i*n (mod factor*n).

    The returned classes are pairwise disjoint and their union is exactly
    the original progression.
    """
    if factor < 1:
        raise ValueError("factor must be a positive integer")
    n = cls.modulus
    return [ResidueClass(cls.residue + i * n, factor * n) for i in range(factor)]


def affine_transform(system: CoveringSystem, a: int, b: int) -> CoveringSystem:
    """Pull the system back along x -> a*x + b.

    a*x + b lies in a_s(n_s) exactly when x lies in a^{-1}*(a_s - b) (n_s),
    so covers map to covers; gcd(a, lcm) = 1 makes a invertible modulo
    every class modulus.
    """
    if math.gcd(a, system.lcm) != 1:
        raise NotCoprime(f"multiplier {a} shares a factor with the period {system.lcm}")
    classes = []
    for c in system.classes:
        inv = pow(a, -1, c.modulus)
        classes.append(((c.residue - b) * inv % c.modulus, c.modulus))
    return CoveringSystem(classes)


def swap_equal_moduli(system: CoveringSystem, i: int, j: int) -> CoveringSystem:
    """Exchange the residues of positions i and j (same modulus required)."""
    t = len(system.classes)
    if not (0 <= i < t and 0 <= j < t):
        raise IndexError("class index out of range")
    ci, cj = system.classes[i], system.classes[j]
    if ci.modulus != cj.modulus:
        raise ModulusMismatch(f"moduli differ at positions {i} and {j}: {ci.modulus} vs {cj.modulus}")
    classes = list(system.classes)
    classes[i], classes[j] = ResidueClass(cj.residue, ci.modulus), ResidueClass(ci.residue, cj.modulus)
    return CoveringSystem(classes)


def enumerate_covers(
    moduli,
    max_assignments: int = DEFAULT_MAX_ASSIGNMENTS,
    backend: str | None = None,
) -> list[CoveringSystem]:
    """All residue assignments to the moduli multiset that cover Z.

    Returns systems in lexicographic residue order, preserving the given
    moduli order positionally. Returns [] straight away when the density
    sum(1/n) is below 1 (no assignment can cover). Raises BudgetExceeded
    when the assignment space prod(n) exceeds max_assignments.
    """
    moduli = tuple(int(n) for n in moduli)
    if not moduli:
        raise ValueError("moduli must be a nonempty sequence")
    if any(n < 1 for n in moduli):
        raise ValueError("moduli must be positive integers")
    if sum(Fraction(1, n) for n in moduli) < 1:
        return []
    space = math.prod(moduli)
    if space > max_assignments:
        raise BudgetExceeded(
            f"assignment space {space} exceeds the budget of {max_assignments}"
        )
    rows = _cover_kernels.enumerate_cover_tuples(moduli, backend=backend)
    return [
        CoveringSystem(zip((int(r) for r in row), moduli))
        for row in rows
    ]


def affine_orbit(seed: CoveringSystem) -> set[CoveringSystem]:
    """Closure of a covering system under affine transforms and swaps.

    Breadth-first search applying every x -> a*x + b with gcd(a, lcm) = 1,
    0 <= a, b < lcm, and every swap of equal-modulus positions, until no
    new system appears. The seed must itself be a cover; every member of
    the returned set is then a cover as well.
    """
    ok, witness = verify_cover(seed)
    if not ok:
        raise ValueError(f"orbit seed is not a covering system (first uncovered: {witness})")
    L = seed.lcm
    moduli = seed.moduli
    t = len(moduli)
    units = [a for a in range(L) if math.gcd(a, L) == 1]
    inv = {(a, n): pow(a, -1, n) for a in units for n in set(moduli)}
    swaps = [
        (i, j)
        for i in range(t)
        for j in range(i + 1, t)
        if moduli[i] == moduli[j]
    ]
    start = seed.residues
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for res in frontier:
            for a in units:
                for b in range(L):
                    image = tuple(
                        (r - b) * inv[a, n] % n for r, n in zip(res, moduli)
                    )
                    if image not in seen:
                        seen.add(image)
                        nxt.append(image)
            for i, j in swaps:
                image = list(res)
                image[i], image[j] = image[j], image[i]
                image = tuple(image)
                if image not in seen:
                    seen.add(image)
                    nxt.append(image)
        frontier = nxt
    return {CoveringSystem(zip(res, moduli)) for res in seen}
