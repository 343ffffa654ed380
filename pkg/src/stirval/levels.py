"""Residue classes modulo powers of two and the level-splitting machinery.

For a fixed Stirling order k, the class C(m, j) is the arithmetic
progression {2**m * i + j : i >= 0} restricted to n >= k.  A class is
*constant* when n -> nu_2(S(n,k)) takes a single value on it.  The m-level
is the set of non-constant classes mod 2**m, built by splitting each
survivor of the (m-1)-level into its two children.

Constancy is only semi-decidable: a constant verdict here is empirical
(first ``samples`` members), while a non-constant verdict carries a
certificate (two members with provably different valuations).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterator, NamedTuple

from .padic import INFINITE, Valuation
from .reports import ConjectureReport
from .stirling import PrecisionExceeded, val2_stirling

CONSTANT = "CONSTANT"
NON_CONSTANT = "NON_CONSTANT"
INCONCLUSIVE = "INCONCLUSIVE"

DEFAULT_SAMPLES = 64


def m0_of(k: int) -> int:
    """The unique m0 with 2**(m0-1) < k <= 2**m0."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return (k - 1).bit_length()


@dataclass(frozen=True)
class ResidueClass:
    """The class C(m, j) for Stirling order k, with j canonical mod 2**m.

    Labels with j >= 2**m (which occur naturally when a progression is
    written with a shifted index) are reduced on construction.
    """

    k: int
    m: int
    j: int

    def __post_init__(self):
        if self.k < 1 or self.m < 1:
            raise ValueError("need k >= 1 and m >= 1")
        object.__setattr__(self, "j", self.j % (1 << self.m))

    @property
    def modulus(self) -> int:
        return 1 << self.m

    def iter_members(self) -> Iterator[int]:
        n = self.j
        while n < self.k:
            n += self.modulus
        while True:
            yield n
            n += self.modulus

    def members(self, count: int) -> list[int]:
        if count < 1:
            raise ValueError("count must be >= 1")
        it = self.iter_members()
        return [next(it) for _ in range(count)]

    def split(self) -> tuple["ResidueClass", "ResidueClass"]:
        """The two children mod 2**(m+1): residues j and j + 2**m."""
        return (
            ResidueClass(self.k, self.m + 1, self.j),
            ResidueClass(self.k, self.m + 1, self.j + self.modulus),
        )

    def label(self) -> str:
        return f"C({self.m},{self.j})"

    def as_dict(self) -> dict:
        return {"k": self.k, "m": self.m, "j": self.j}


def class_members(c: ResidueClass, count: int) -> list[int]:
    """First ``count`` members of c in increasing order, all >= k."""
    return c.members(count)


@dataclass(frozen=True)
class ClassStatus:
    """Empirical verdict for one residue class.

    CONSTANT carries the common value and the sample bound it was checked
    to; NON_CONSTANT carries a two-member certificate; INCONCLUSIVE means
    some member's valuation could not be determined.
    """

    kind: str
    samples: int
    value: Valuation | None = None
    witness_a: tuple[int, Valuation] | None = None
    witness_b: tuple[int, Valuation] | None = None

    def as_dict(self) -> dict:
        out: dict = {"status": self.kind, "samples": self.samples}
        if self.kind == CONSTANT:
            out["value"] = self.value
        if self.kind == NON_CONSTANT:
            out["witnesses"] = [list(self.witness_a), list(self.witness_b)]
        return out


def classify_class(
    c: ResidueClass,
    samples: int = DEFAULT_SAMPLES,
    val2: Callable[[int, int], Valuation] = val2_stirling,
) -> ClassStatus:
    """Classify c by evaluating its first ``samples`` members.

    Returns NON_CONSTANT with a witness pair as soon as two members
    disagree; otherwise CONSTANT up to the sample bound.  A member whose
    valuation is infinite cannot occur (members are >= k) but is mapped
    to INCONCLUSIVE defensively.  PrecisionExceeded propagates to the
    caller, which is expected to record the class as inconclusive.
    """
    if samples < 2:
        raise ValueError("samples must be >= 2")
    it = c.iter_members()
    first_n = next(it)
    first_v = val2(first_n, c.k)
    if first_v is INFINITE:
        return ClassStatus(INCONCLUSIVE, samples)
    for _ in range(samples - 1):
        n = next(it)
        v = val2(n, c.k)
        if v is INFINITE:
            return ClassStatus(INCONCLUSIVE, samples)
        if v != first_v:
            return ClassStatus(
                NON_CONSTANT, samples, witness_a=(first_n, first_v), witness_b=(n, v)
            )
    return ClassStatus(CONSTANT, samples, value=first_v)


@dataclass
class LevelRecord:
    """Verdicts for all candidate classes at one level."""

    m: int
    survivors: list[ResidueClass] = field(default_factory=list)
    constants: list[tuple[ResidueClass, Valuation]] = field(default_factory=list)
    inconclusive: list[ResidueClass] = field(default_factory=list)
    statuses: dict[int, ClassStatus] = field(default_factory=dict)

    def as_dict(self) -> dict:
        classes = []
        for j in sorted(self.statuses):
            entry = {"m": self.m, "j": j}
            entry.update(self.statuses[j].as_dict())
            classes.append(entry)
        return {"m": self.m, "classes": classes}


@dataclass
class LevelTree:
    """Level structure for one Stirling order, up to a chosen depth."""

    k: int
    m0: int
    samples: int
    levels: list[LevelRecord] = field(default_factory=list)

    def level(self, m: int) -> LevelRecord:
        return self.levels[m - 1]

    @property
    def has_inconclusive(self) -> bool:
        return any(rec.inconclusive for rec in self.levels)

    def as_dict(self) -> dict:
        return {
            "k": self.k,
            "m0": self.m0,
            "samples": self.samples,
            "levels": [rec.as_dict() for rec in self.levels],
        }


def build_level_tree(k: int, m_max: int, samples: int = DEFAULT_SAMPLES) -> LevelTree:
    """Build the level structure for order k up to level m_max.

    Level 1 starts from the two parity classes; level m+1 classifies the
    children of the level-m survivors.  Inconclusive classes are recorded
    and not split further.
    """
    if k < 3:
        raise ValueError("level trees need k >= 3")
    if m_max < 2:
        raise ValueError("m_max must be >= 2")
    tree = LevelTree(k=k, m0=m0_of(k), samples=samples)
    candidates = [ResidueClass(k, 1, 0), ResidueClass(k, 1, 1)]
    for m in range(1, m_max + 1):
        rec = LevelRecord(m=m)
        for c in candidates:
            try:
                status = classify_class(c, samples)
            except PrecisionExceeded:
                status = ClassStatus(INCONCLUSIVE, samples)
            rec.statuses[c.j] = status
            if status.kind == NON_CONSTANT:
                rec.survivors.append(c)
            elif status.kind == CONSTANT:
                rec.constants.append((c, status.value))
            else:
                rec.inconclusive.append(c)
        rec.survivors.sort(key=lambda c: c.j)
        tree.levels.append(rec)
        candidates = [child for c in rec.survivors for child in c.split()]
        if not candidates:
            break
    return tree


def verify_main_conjecture(
    k: int, m_max: int = 10, samples: int = DEFAULT_SAMPLES
) -> ConjectureReport:
    """Check the level-splitting conjecture for order k against the tree.

    Part 1: no constant class before level m0-1, at least one there.
    Part 2: every level m >= m0 has exactly 2**(m0-2) surviving classes,
    and each survivor has exactly one surviving child.

    For k <= 4 the valuation depends only on parity, both level-1 classes
    are constant and no level tree exists; the conjecture is not asserted
    and an explanatory INCONCLUSIVE report is returned.
    """
    report = ConjectureReport(
        "level-splitting conjecture",
        params={"k": k, "m_max": m_max, "samples": samples},
    )
    if k < 1:
        raise ValueError("k must be >= 1")
    if k <= 4:
        report.record_inconclusive(
            {
                "reason": "degenerate order: nu_2(S(n,k)) depends only on the parity "
                "of n for k <= 4, so every class mod 2 is constant and no level "
                "structure exists; the class-count claim is not asserted",
                "k": k,
            }
        )
        return report

    m0 = m0_of(k)
    tree = build_level_tree(k, m_max, samples)
    report.details["m0"] = m0
    report.details["tree"] = tree.as_dict()
    level_verdicts = []

    for rec in tree.levels:
        m = rec.m
        verdict = "PASS"
        if rec.inconclusive:
            verdict = "INCONCLUSIVE"
            for c in rec.inconclusive:
                report.record_inconclusive({"m": m, "j": c.j})
        if m <= m0 - 2:
            ok = not rec.constants
            report.record(
                ok,
                None
                if ok
                else {
                    "part": 1,
                    "m": m,
                    "reason": "constant class below level m0-1",
                    "classes": [(c.j, v) for c, v in rec.constants],
                },
            )
            if not ok:
                verdict = "FAIL"
        elif m == m0 - 1:
            ok = bool(rec.constants) or verdict == "INCONCLUSIVE"
            report.record(
                ok,
                None
                if ok
                else {"part": 1, "m": m, "reason": "no constant class at level m0-1"},
            )
            if not ok and verdict != "INCONCLUSIVE":
                verdict = "FAIL"
        else:
            expected = 1 << (m0 - 2)
            ok = len(rec.survivors) == expected
            report.record(
                ok,
                None
                if ok
                else {
                    "part": 2,
                    "m": m,
                    "reason": "level size differs from 2^(m0-2)",
                    "expected": expected,
                    "survivors": [c.j for c in rec.survivors],
                },
            )
            if not ok:
                verdict = "FAIL"
        level_verdicts.append({"m": m, "verdict": verdict})

    # part 2, splitting dynamic: one surviving child per survivor
    for rec, nxt in zip(tree.levels, tree.levels[1:]):
        if rec.m < m0:
            continue
        surviving_children = {c.j for c in nxt.survivors}
        for c in rec.survivors:
            kids = [ch.j for ch in c.split() if ch.j in surviving_children]
            ok = len(kids) == 1
            report.record(
                ok,
                None
                if ok
                else {
                    "part": 2,
                    "m": rec.m,
                    "j": c.j,
                    "reason": "survivor must produce exactly one non-constant child",
                    "surviving_children": kids,
                },
            )
            if not ok:
                level_verdicts[rec.m - 1]["verdict"] = "FAIL"

    report.details["levels"] = level_verdicts
    return report


class ChainLink(NamedTuple):
    level: int
    j: int
    sibling_value: Valuation


def k5_surviving_chain(m_max: int, samples: int = DEFAULT_SAMPLES) -> list[ChainLink]:
    """Surviving-class chain for k=5 on the branch of indices == 0 mod 4.

    For each level m in 2..m_max, returns the canonical residue j of the
    non-constant child and the constant value of its sibling.  Raises if
    the expected one-constant/one-survivor split ever fails.
    """
    if m_max < 2:
        raise ValueError("m_max must be >= 2")
    chain: list[ChainLink] = []
    parent = ResidueClass(5, 1, 0)
    for m in range(2, m_max + 1):
        a, b = parent.split()
        status = {c: classify_class(c, samples) for c in (a, b)}
        constant = [c for c in (a, b) if status[c].kind == CONSTANT]
        surviving = [c for c in (a, b) if status[c].kind == NON_CONSTANT]
        if len(constant) != 1 or len(surviving) != 1:
            raise ArithmeticError(
                f"level {m}: expected one constant and one surviving child, got "
                f"{[(c.label(), status[c].kind) for c in (a, b)]}"
            )
        chain.append(ChainLink(m, surviving[0].j, status[constant[0]].value))
        parent = surviving[0]
    return chain


def c_set_sequence(count: int, samples: int = DEFAULT_SAMPLES) -> list[int]:
    """First ``count`` values of the index sequence read off the k=5 chain.

    The first value is the smallest member of the level-2 survivor; each
    later value is the smallest member of the next level's survivor that
    strictly exceeds its predecessor.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    chain = k5_surviving_chain(count + 1, samples)
    values: list[int] = []
    for link in chain:
        cls = ResidueClass(5, link.level, link.j)
        prev = values[-1] if values else None
        for n in cls.iter_members():
            if prev is None or n > prev:
                values.append(n)
                break
        if len(values) == count:
            break
    return values


class ExceptionalScan(NamedTuple):
    indices: list[int]
    matches_pattern: bool


def exceptional_indices(i_max: int) -> ExceptionalScan:
    """Indices i <= i_max with nu_2(S(4i,5)) != nu_2(S(4i+3,5)).

    Also reports whether the set equals {32j + 7} within the scanned range.
    """
    if i_max < 2:
        raise ValueError("i_max must be >= 2")
    found = [
        i
        for i in range(2, i_max + 1)
        if val2_stirling(4 * i, 5) != val2_stirling(4 * i + 3, 5)
    ]
    pattern = [n for n in range(7, i_max + 1, 32)]
    return ExceptionalScan(found, found == pattern)


def k5_structure_report(
    m_max: int = 10, samples: int = DEFAULT_SAMPLES, i_max: int = 200
) -> ConjectureReport:
    """Verify the proved k=5 splitting structure level by level.

    On both branches (indices 0 and 3 mod 4), for each level m in
    3..m_max the two children of the previous survivor must satisfy,
    over member indices i <= i_max:

      * every member valuation exceeds m - 3,
      * exactly one child is constant with value m - 2,
      * every sampled member of the other child exceeds m - 2.

    Also rechecks the eight fixed congruence-class facts for the classes
    mod 8 and mod 16 (values 1, 1, >=2, >=2, 2, 2, >=3, >=3).
    """
    report = ConjectureReport(
        "k=5 level structure",
        params={"m_max": m_max, "samples": samples, "i_max": i_max},
    )

    def vals_up_to(c: ResidueClass, bound: int) -> list[tuple[int, Valuation]]:
        out = []
        for i in range(bound + 1):
            n = c.modulus * i + c.j
            if n >= c.k:
                out.append((n, val2_stirling(n, 5)))
        return out

    for branch_j in (0, 3):
        parent = ResidueClass(5, 2, branch_j)
        for m in range(3, m_max + 1):
            a, b = parent.split()
            pairs = {c: vals_up_to(c, i_max) for c in (a, b)}
            floor_ok = all(v > m - 3 for vs in pairs.values() for _, v in vs)
            report.record(
                floor_ok,
                None
                if floor_ok
                else {
                    "check": "child floor",
                    "m": m,
                    "branch": branch_j,
                    "bad": [
                        (c.j, n, v)
                        for c, vs in pairs.items()
                        for n, v in vs
                        if v <= m - 3
                    ],
                },
            )
            constant = [c for c in (a, b) if all(v == m - 2 for _, v in pairs[c])]
            above = [c for c in (a, b) if all(v > m - 2 for _, v in pairs[c])]
            split_ok = len(constant) == 1 and len(above) == 1
            report.record(
                split_ok,
                None
                if split_ok
                else {
                    "check": "one constant child at m-2, one child above",
                    "m": m,
                    "branch": branch_j,
                    "constant": [c.j for c in constant],
                    "above": [c.j for c in above],
                },
            )
            if not split_ok:
                break
            parent = above[0]

    facts = (
        (8, 0, "==", 1),
        (8, 3, "==", 1),
        (8, 4, ">=", 2),
        (8, 7, ">=", 2),
        (16, 4, "==", 2),
        (16, 7, "==", 2),
        (16, 12, ">=", 3),
        (16, 15, ">=", 3),
    )
    for modulus, r, op, bound in facts:
        for i in range(i_max + 1):
            n = modulus * i + r
            if n < 5:
                continue
            v = val2_stirling(n, 5)
            ok = v == bound if op == "==" else v >= bound
            report.record(
                ok,
                None
                if ok
                else {
                    "check": f"nu2(S({modulus}i+{r},5)) {op} {bound}",
                    "n": n,
                    "computed": v,
                },
            )

    try:
        chain = k5_surviving_chain(m_max, samples)
        report.details["surviving_chain"] = [
            {"level": link.level, "j": link.j, "sibling_value": link.sibling_value}
            for link in chain
        ]
    except PrecisionExceeded as exc:
        report.record_inconclusive({"check": "surviving chain", "reason": str(exc)})
    return report
