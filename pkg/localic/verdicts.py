"""
Verdicts are the outcomes of checks, and Reports collect them by path.

The algebra mirrors the one constraints use: `Holds` plays the part of `Valid`, and
combining verdicts with `&` simplifies the same way `And` does.
"""
from __future__ import annotations

from abc import ABC
from abc import abstractmethod
from dataclasses import dataclass
from dataclasses import field
from functools import singledispatch
from typing import Any
from typing import Final
from typing import Iterable
from typing import Iterator
from typing import Mapping
from typing import Optional
from typing import Sequence

from localic.types import JSONData
from localic.types import JSONDict
from localic.utils import canonical_json

PASS: Final = "pass"
FAIL: Final = "fail"
UNDECIDED: Final = "undecided"

EXIT_CODES: Final[dict[str, int]] = {PASS: 0, FAIL: 2, UNDECIDED: 3}
EXIT_MALFORMED: Final = 1


class Verdict(ABC):
    """
    The outcome of a single check. Truthy iff it holds.

    >>> bool(Holds & Holds)
    True
    >>> v = Holds & Fails("coassociativity breaks at [0|1]")
    >>> bool(v), v.status
    (False, 'fail')
    >>> (Undecided("budget exhausted") & Holds).status
    'undecided'
    """

    status: str

    def __bool__(self) -> bool:
        return self.simplify() is Holds

    def __and__(self, other: Verdict) -> Verdict:
        return All(self, other)

    def simplify(self) -> Verdict:
        return self

    def negate(self, message: str) -> Verdict:
        """
        Flip a decided verdict. `message` describes the failure of the flipped check.
        """
        if isinstance(self, Undecided):
            return self
        if self:
            return Fails(message)
        return Holds

    @abstractmethod
    def __str__(self):
        pass


class HoldsClass(Verdict):
    """
    The verdict of a check that passed. Use its singleton Holds.
    """

    __singleton: HoldsClass
    status = PASS

    def __new__(cls):
        if not hasattr(cls, "__singleton"):
            cls.__singleton = super().__new__(cls)
        return cls.__singleton

    def __bool__(self) -> bool:
        return True

    def __repr__(self):
        return "Holds"

    def __str__(self):
        return "holds"


Holds: Final[HoldsClass] = HoldsClass()


@dataclass
class Fails(Verdict):
    message: str
    witness: JSONData = None
    status = FAIL

    def __str__(self):
        return self.message


@dataclass
class Undecided(Verdict):
    reason: str
    status = UNDECIDED

    def __str__(self):
        return f"undecided: {self.reason}"


@dataclass
class All(Verdict):
    verdicts: Sequence[Verdict]
    simplified: bool = False

    def __init__(self, *verdicts: Verdict, simplified: bool = False):
        self.verdicts = verdicts
        self.simplified = simplified

    @property
    def status(self) -> str:
        statuses = {v.status for v in self.verdicts}
        if FAIL in statuses:
            return FAIL
        if UNDECIDED in statuses:
            return UNDECIDED
        return PASS

    def __str__(self):
        return "; ".join(str(v) for v in self.verdicts if v.status != PASS) or "holds"

    def simplify(self) -> Verdict:
        """
        >>> All(Holds, All(Holds)).simplify()
        Holds
        >>> All(Holds, Fails("x")).simplify()
        Fails(message='x', witness=None)
        """
        if self.simplified:
            return self
        verdicts = []
        for v in self.verdicts:
            v = v.simplify()
            if v is Holds:
                continue
            if isinstance(v, All):
                verdicts.extend(v.verdicts)
            else:
                verdicts.append(v)
        if not verdicts:
            return Holds
        if len(verdicts) == 1:
            return verdicts[0]
        return All(*verdicts, simplified=True)


def holds_if(condition: bool, message: str, witness: JSONData = None) -> Verdict:
    """
    >>> holds_if(2 + 2 == 4, "arithmetic")
    Holds
    >>> holds_if(False, "no arrow from 1 to G/e", witness=["1", "G/e"]).witness
    ['1', 'G/e']
    """
    return Holds if condition else Fails(message, witness)


def first_failure(verdicts: Iterable[Verdict]) -> Verdict:
    """
    Combine verdicts, stopping at the first failure so large sweeps stay cheap.
    """
    undecided: list[Verdict] = []
    for v in verdicts:
        if v.status == FAIL:
            return v.simplify()
        if v.status == UNDECIDED:
            undecided.append(v)
    return All(*undecided).simplify()


@dataclass
class Report(Mapping[tuple[str, ...], Verdict]):
    """
    Checks keyed by a dotted path, plus the context needed to read them.

    >>> report = Report("demo")
    >>> report.add("laws", "counit", Holds)
    >>> report.add("laws", "coassociativity", Fails("differs at [0|1]"))
    >>> report.status
    'fail'
    >>> report.exit_code
    2
    >>> [".".join(k) for k in report]
    ['laws.counit', 'laws.coassociativity']
    """

    title: str
    engine: str = "exact"
    checks: dict[tuple[str, ...], Verdict] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)
    data: JSONDict = field(default_factory=dict)

    def add(self, *path_and_verdict: Any) -> None:
        *path, verdict = path_and_verdict
        self.checks[tuple(str(p) for p in path)] = verdict.simplify()

    def note(self, text: str) -> None:
        if text not in self.notes:
            self.notes.append(text)

    def __getitem__(self, item: Sequence[str]) -> Verdict:
        return self.checks[tuple(item)]

    def __iter__(self) -> Iterator[tuple[str, ...]]:
        return iter(self.checks)

    def __len__(self) -> int:
        return len(self.checks)

    def __bool__(self) -> bool:
        return self.status == PASS

    def __and__(self, other: Report) -> Report:
        if not isinstance(other, Report):
            return NotImplemented
        merged = Report(self.title, self.engine, dict(self.checks), list(self.notes))
        merged.data = dict(self.data) | other.data
        for path, verdict in other.checks.items():
            if path in merged.checks:
                merged.checks[path] = (merged.checks[path] & verdict).simplify()
            else:
                merged.checks[path] = verdict
        for text in other.notes:
            merged.note(text)
        if other.engine != self.engine and other.engine != "exact":
            merged.engine = other.engine if self.engine == "exact" else self.engine
        return merged

    def include(self, prefix: str, other: Report) -> None:
        """
        Re-root another report's checks under `prefix`.
        """
        for path, verdict in other.checks.items():
            self.checks[(prefix, *path)] = verdict
        for text in other.notes:
            self.note(text)
        if other.data:
            self.data[prefix] = other.data
        if other.engine != "exact":
            self.engine = other.engine

    @property
    def status(self) -> str:
        return All(*self.checks.values()).status

    def verdict(self) -> Verdict:
        """
        Every check at once.
        """
        return All(*self.checks.values()).simplify()

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]

    def failures(self) -> dict[str, Verdict]:
        return {".".join(k): v for k, v in self.checks.items() if v.status != PASS}

    def render(self, wall_time: Optional[float] = None) -> str:
        lines = [f"{self.title}", f"engine: {self.engine}", f"status: {self.status}"]
        if wall_time is not None:
            lines.append(f"wall time: {wall_time:.3f}s")
        for text in self.notes:
            lines.append(f"note: {text}")
        for key, value in self.data.items():
            if key.startswith("_"):
                continue
            lines.append(f"{key}: {_render_value(value)}")
        for path, verdict in self.checks.items():
            lines.append(f"{verdict.status.upper():9} {'.'.join(path)}: {verdict}")
        return "\n".join(lines)


def _render_value(value: JSONData) -> str:
    if isinstance(value, list) and all(not isinstance(v, (list, dict)) for v in value):
        return ", ".join(str(v) for v in value)
    if isinstance(value, (list, dict)):
        return canonical_json(value)
    return str(value)


@singledispatch
def to_json(obj: Any) -> JSONData:
    raise NotImplementedError(type(obj))


@to_json.register
def _(verdict: HoldsClass) -> JSONData:
    return {"status": PASS}


@to_json.register
def _(verdict: Fails) -> JSONData:
    return {"status": FAIL, "message": verdict.message, "witness": verdict.witness}


@to_json.register
def _(verdict: Undecided) -> JSONData:
    return {"status": UNDECIDED, "message": verdict.reason}


@to_json.register
def _(verdict: All) -> JSONData:
    return {"status": verdict.status, "message": str(verdict)}


@to_json.register
def _(report: Report) -> JSONData:
    return {
        "title": report.title,
        "engine": report.engine,
        "status": report.status,
        "notes": list(report.notes),
        "data": report.data,
        "checks": [
            {"check": ".".join(path)} | to_json(verdict)
            for path, verdict in report.checks.items()
        ],
    }
