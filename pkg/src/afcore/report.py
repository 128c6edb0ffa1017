"""Small pass/fail report plumbing used by the verification routines."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class CheckItem:
    label: str
    ok: bool
    detail: str = ""


@dataclass
class CheckReport:
    """An ordered list of labelled checks; ``ok`` iff every item passed."""

    title: str
    items: list[CheckItem] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(item.ok for item in self.items)

    def add(self, label: str, ok: bool, detail: str = "") -> None:
        self.items.append(CheckItem(label, bool(ok), detail))

    def extend(self, other: "CheckReport", prefix: str = "") -> None:
        for item in other.items:
            label = f"{prefix}{item.label}" if prefix else item.label
            self.items.append(CheckItem(label, item.ok, item.detail))

    def failures(self) -> list[CheckItem]:
        return [item for item in self.items if not item.ok]

    def summary(self) -> str:
        n_ok = sum(1 for item in self.items if item.ok)
        status = "PASS" if self.ok else "FAIL"
        return f"{self.title}: {status} ({n_ok}/{len(self.items)} checks)"

    def render(self) -> str:
        lines = [self.summary()]
        for item in self.items:
            mark = "ok" if item.ok else "FAIL"
            suffix = f"  # {item.detail}" if item.detail else ""
            lines.append(f"  [{mark}] {item.label}{suffix}")
        return "\n".join(lines)
