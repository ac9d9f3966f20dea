"""Check records shared by every axiom checker and by the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Witness:
    """First domain basis vector on which two composites differ."""

    index: int
    lhs: tuple[str, ...]
    rhs: tuple[str, ...]

    def to_dict(self) -> dict:
        return {"index": self.index, "lhs": list(self.lhs), "rhs": list(self.rhs)}

    def __str__(self) -> str:
        return f"basis {self.index}: lhs [{', '.join(self.lhs)}] rhs [{', '.join(self.rhs)}]"


@dataclass(frozen=True)
class Check:
    name: str
    anchor: str
    passed: bool
    witness: Witness | None = None
    note: str = ""

    def to_dict(self) -> dict:
        d = {"check": self.name, "anchor": self.anchor, "verdict": "pass" if self.passed else "fail"}
        if self.note:
            d["note"] = self.note
        if self.witness is not None:
            d["witness"] = self.witness.to_dict()
        return d


@dataclass
class Report:
    """Ordered per-check verdicts, structural errors and nested sections.

    A report passes when it has no structural errors and every check and
    every section passes.
    """

    title: str
    checks: list[Check] = field(default_factory=list)
    errors: list[str] = field(default_factory=list)
    sections: list[Report] = field(default_factory=list)
    data: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return (
            not self.errors
            and all(c.passed for c in self.checks)
            and all(s.passed for s in self.sections)
        )

    def add(self, name: str, anchor: str, passed: bool, witness: Witness | None = None, note: str = "") -> Check:
        c = Check(name, anchor, bool(passed), witness, note)
        self.checks.append(c)
        return c

    def compare(self, name: str, anchor: str, lhs, rhs) -> Check:
        """Record whether two linear maps agree exactly, with a witness if not."""
        from .monoidal import first_difference

        w = first_difference(lhs, rhs)
        return self.add(name, anchor, w is None, w)

    def error(self, message: str):
        self.errors.append(message)

    def section(self, sub: Report) -> Report:
        self.sections.append(sub)
        return sub

    def absorb(self, other: Report, prefix: str = ""):
        """Copy checks and errors of ``other`` into this report (flattened)."""
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.anchor, c.passed, c.witness, c.note))
        self.errors.extend(prefix + e for e in other.errors)
        for s in other.sections:
            self.absorb(s, prefix)

    def all_checks(self):
        yield from self.checks
        for s in self.sections:
            yield from s.all_checks()

    def __getitem__(self, name: str) -> Check:
        for c in self.all_checks():
            if c.name == name:
                return c
        raise KeyError(name)

    def failures(self) -> list[Check]:
        return [c for c in self.all_checks() if not c.passed]

    def to_dict(self) -> dict:
        d = {
            "title": self.title,
            "verdict": "pass" if self.passed else "fail",
            "checks": [c.to_dict() for c in self.checks],
        }
        if self.errors:
            d["errors"] = list(self.errors)
        if self.sections:
            d["sections"] = [s.to_dict() for s in self.sections]
        if self.data:
            d["data"] = dict(self.data)
        return d

    def render(self, indent: int = 0) -> str:
        pad = "  " * indent
        lines = [f"{pad}[{'PASS' if self.passed else 'FAIL'}] {self.title}"]
        for e in self.errors:
            lines.append(f"{pad}  ERROR {e}")
        for c in self.checks:
            line = f"{pad}  {'pass' if c.passed else 'FAIL'}  {c.name}  <{c.anchor}>"
            if c.note:
                line += f"  ({c.note})"
            lines.append(line)
            if c.witness is not None:
                lines.append(f"{pad}        witness {c.witness}")
        for key, value in self.data.items():
            lines.append(f"{pad}  {key}: {value}")
        for s in self.sections:
            lines.append(s.render(indent + 1))
        return "\n".join(lines)
