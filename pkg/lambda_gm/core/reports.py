from dataclasses import dataclass, field
from typing import Any, Optional


def _sorted(indices):
    return tuple(sorted(indices))


@dataclass(frozen=True)
class CIReport:
    """Вердикт проверки условной независимости a ⊥ b | c."""

    a: tuple
    b: tuple
    c: tuple
    verdict: bool
    witness: Optional[dict] = None

    @classmethod
    def build(cls, a, b, c, verdict, witness=None):
        return cls(_sorted(a), _sorted(b), _sorted(c), bool(verdict), witness)

    def __bool__(self):
        return self.verdict


@dataclass(frozen=True)
class AuditEntry:
    """Один проверенный экземпляр свойства Маркова или аксиомы."""

    prop: str
    sets: dict
    holds: bool
    witness: Optional[Any] = None


@dataclass
class MarkovAudit:
    entries: list = field(default_factory=list)

    def add(self, prop, sets, holds, witness=None):
        self.entries.append(
            AuditEntry(
                prop=prop,
                sets={name: _sorted(s) for name, s in sets.items()},
                holds=bool(holds),
                witness=witness,
            )
        )

    @property
    def holds(self):
        return all(entry.holds for entry in self.entries)

    @property
    def violations(self):
        return [entry for entry in self.entries if not entry.holds]

    def of(self, prop):
        return [entry for entry in self.entries if entry.prop == prop]
