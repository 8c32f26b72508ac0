"""Exact point-group character tables and representation algebra.

Three groups are built in: C3v (axial defect configurations), C1h (basal
configurations) and the double group of C3v (half-integer spin).  Tables
are stored in a plain text format (see ``load_table``) and every table,
built-in or user supplied, is validated against the orthogonality
relations before use.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources

from .exact import GaussianRational, ONE, ZERO, parse_scalar, rational

BUILTIN_GROUPS = ("C3v", "C1h", "C3v_double")

_DATA_FILES = {
    "C3v": "c3v.grp",
    "C1h": "c1h.grp",
    "C3v_double": "c3v_double.grp",
}


class GroupError(Exception):
    """Base class for group-algebra errors."""


class UnknownGroupError(GroupError):
    pass


class GroupMismatchError(GroupError):
    pass


class InvalidRepresentationError(GroupError):
    """Character vector that is not a non-negative integer combination of irreps."""


class TableFormatError(GroupError):
    pass


@dataclass(frozen=True)
class Irrep:
    label: str
    dim: int
    kind: str  # "single" or "extra" (double-group representation)
    characters: tuple[GaussianRational, ...]

    @property
    def is_trivial(self) -> bool:
        return all(c == ONE for c in self.characters)


@dataclass(frozen=True)
class PointGroupTable:
    name: str
    order: int
    class_labels: tuple[str, ...]
    class_sizes: tuple[int, ...]
    irreps: tuple[Irrep, ...]

    @property
    def n_classes(self) -> int:
        return len(self.class_labels)

    def irrep(self, label: str) -> Irrep:
        for ir in self.irreps:
            if ir.label == label:
                return ir
        valid = ", ".join(ir.label for ir in self.irreps)
        raise UnknownGroupError(
            f"group {self.name} has no irrep {label!r} (valid: {valid})"
        )

    def irrep_labels(self) -> tuple[str, ...]:
        return tuple(ir.label for ir in self.irreps)

    @property
    def trivial_irrep(self) -> Irrep:
        for ir in self.irreps:
            if ir.is_trivial:
                return ir
        raise GroupError(f"group {self.name} has no trivial irrep")

    def rep(self, label: str) -> "RepVector":
        return RepVector(self, self.irrep(label).characters)


@dataclass(frozen=True)
class RepVector:
    """A (possibly reducible) representation as an exact class function."""

    group: PointGroupTable
    characters: tuple[GaussianRational, ...]

    def __post_init__(self):
        if len(self.characters) != self.group.n_classes:
            raise GroupError(
                f"character vector has {len(self.characters)} entries, "
                f"group {self.group.name} has {self.group.n_classes} classes"
            )

    @property
    def dim_character(self) -> GaussianRational:
        return self.characters[0]

    def conjugate(self) -> "RepVector":
        return RepVector(self.group, tuple(c.conjugate() for c in self.characters))

    def __mul__(self, other: "RepVector") -> "RepVector":
        return tensor_product(self, other)


@dataclass(frozen=True)
class Multiplicities:
    """Decomposition of a representation into irrep multiplicities."""

    group: PointGroupTable
    counts: dict[str, int] = field(hash=False)

    def __getitem__(self, label: str) -> int:
        return self.counts.get(label, 0)

    def to_rep(self) -> RepVector:
        chars = [ZERO] * self.group.n_classes
        for ir in self.group.irreps:
            m = self[ir.label]
            if m:
                factor = rational(m)
                chars = [c + chi * factor for c, chi in zip(chars, ir.characters)]
        return RepVector(self.group, tuple(chars))

    def total_dim(self) -> int:
        return sum(m * self.group.irrep(lab).dim for lab, m in self.counts.items())

    def direct_sum_str(self) -> str:
        parts = []
        for ir in self.group.irreps:
            m = self[ir.label]
            if m == 1:
                parts.append(ir.label)
            elif m > 1:
                parts.append(f"{m}{ir.label}")
        return " + ".join(parts) if parts else "0"


def _parse_table_text(text: str) -> PointGroupTable:
    name = None
    order = None
    class_labels: list[str] = []
    class_sizes: list[int] = []
    irreps: list[Irrep] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        key = tokens[0]
        try:
            if key == "group":
                name = tokens[1]
            elif key == "order":
                order = int(tokens[1])
            elif key == "class":
                class_labels.append(tokens[1])
                class_sizes.append(int(tokens[2]))
            elif key == "irrep":
                label, dim, kind = tokens[1], int(tokens[2]), tokens[3]
                chars = tuple(parse_scalar(t) for t in tokens[4:])
                irreps.append(Irrep(label, dim, kind, chars))
            else:
                raise TableFormatError(f"line {lineno}: unknown keyword {key!r}")
        except (IndexError, ValueError) as exc:
            raise TableFormatError(f"line {lineno}: {exc}") from exc
    if name is None or order is None or not class_labels or not irreps:
        raise TableFormatError("incomplete table: need group, order, classes, irreps")
    for ir in irreps:
        if len(ir.characters) != len(class_labels):
            raise TableFormatError(
                f"irrep {ir.label}: {len(ir.characters)} characters for "
                f"{len(class_labels)} classes"
            )
    return PointGroupTable(name, order, tuple(class_labels), tuple(class_sizes), tuple(irreps))


def load_table(text: str) -> PointGroupTable:
    """Parse a character-table document and validate it.

    Raises InvalidRepresentationError-free TableFormatError on syntax
    problems and GroupError if any verification check fails; downstream
    code never sees an unvalidated table.
    """
    table = _parse_table_text(text)
    failures = [c for c in verify_table(table) if not c.passed]
    if failures:
        detail = "; ".join(f"{c.name}: {c.detail}" for c in failures)
        raise GroupError(f"table {table.name} failed verification: {detail}")
    return table


@functools.cache
def builtin_group(name: str) -> PointGroupTable:
    """Return one of the built-in validated tables: C3v, C1h, C3v_double."""
    if name not in _DATA_FILES:
        raise UnknownGroupError(
            f"unknown group {name!r}; supported: {', '.join(BUILTIN_GROUPS)}"
        )
    text = resources.files("sicpl.data").joinpath(_DATA_FILES[name]).read_text()
    return load_table(text)


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""


def verify_table(table: PointGroupTable) -> list[Check]:
    """Run every structural invariant; failures are reported, not raised."""
    checks: list[Check] = []
    g = rational(table.order)

    size_sum = sum(table.class_sizes)
    checks.append(
        Check(
            "class-size-sum",
            size_sum == table.order,
            f"sum of class sizes {size_sum} vs order {table.order}",
        )
    )

    dim_sum = sum(ir.dim ** 2 for ir in table.irreps)
    checks.append(
        Check(
            "dimension-sum",
            dim_sum == table.order,
            f"sum of squared dims {dim_sum} vs order {table.order}",
        )
    )

    checks.append(
        Check(
            "class-count",
            len(table.irreps) == table.n_classes,
            f"{len(table.irreps)} irreps vs {table.n_classes} classes",
        )
    )

    for ir in table.irreps:
        ok = ir.characters and ir.characters[0] == rational(ir.dim)
        checks.append(
            Check(
                f"identity-character[{ir.label}]",
                bool(ok),
                f"chi(E)={ir.characters[0]} vs dim {ir.dim}",
            )
        )

    row_ok = True
    row_detail = ""
    for i, a in enumerate(table.irreps):
        for j, b in enumerate(table.irreps):
            acc = ZERO
            for n, ca, cb in zip(table.class_sizes, a.characters, b.characters):
                acc = acc + (ca * cb.conjugate()).scale(Fraction(n))
            expected = g if i == j else ZERO
            if acc != expected:
                row_ok = False
                row_detail = f"<{a.label},{b.label}> = {acc}, expected {expected}"
    checks.append(Check("row-orthogonality", row_ok, row_detail))

    col_ok = True
    col_detail = ""
    for c1 in range(table.n_classes):
        for c2 in range(table.n_classes):
            acc = ZERO
            for ir in table.irreps:
                acc = acc + ir.characters[c1] * ir.characters[c2].conjugate()
            expected = (
                GaussianRational(Fraction(table.order, table.class_sizes[c1]))
                if c1 == c2
                else ZERO
            )
            if acc != expected:
                col_ok = False
                col_detail = (
                    f"columns {table.class_labels[c1]},{table.class_labels[c2]}: "
                    f"{acc}, expected {expected}"
                )
    checks.append(Check("column-orthogonality", col_ok, col_detail))

    trivials = [ir.label for ir in table.irreps if ir.is_trivial]
    checks.append(
        Check("unique-trivial", len(trivials) == 1, f"trivial irreps: {trivials}")
    )
    return checks


def tensor_product(a: RepVector, b: RepVector, *more: RepVector) -> RepVector:
    """Class-wise exact product of representation characters."""
    reps = (a, b) + more
    group = reps[0].group
    for r in reps[1:]:
        if r.group is not group and r.group != group:
            raise GroupMismatchError(
                f"cannot combine representations of {group.name} and {r.group.name}"
            )
    chars = reps[0].characters
    for r in reps[1:]:
        chars = tuple(x * y for x, y in zip(chars, r.characters))
    return RepVector(group, chars)


def decompose(rep: RepVector) -> Multiplicities:
    """Reduce a class function to irrep multiplicities.

    Uses m_k = (1/|G|) sum_c n_c chi(c) conj(chi_k(c)); a non-integral or
    negative multiplicity means the vector is not a genuine representation.
    """
    table = rep.group
    counts: dict[str, int] = {}
    for ir in table.irreps:
        acc = ZERO
        for n, c, ck in zip(table.class_sizes, rep.characters, ir.characters):
            acc = acc + (c * ck.conjugate()).scale(Fraction(n))
        m = acc.scale(Fraction(1, table.order))
        if not m.is_real or m.re.denominator != 1 or m.re < 0:
            raise InvalidRepresentationError(
                f"multiplicity of {ir.label} is {m}, not a non-negative integer; "
                "character vector is not a representation"
            )
        counts[ir.label] = int(m.re)
    return Multiplicities(table, counts)


def contains_trivial(rep: RepVector) -> bool:
    """True iff the class function contains the trivial irrep at least once."""
    return decompose(rep)[rep.group.trivial_irrep.label] >= 1
