from __future__ import annotations

from dataclasses import dataclass
from dataclasses import fields
from typing import Any
from typing import Literal

DEFAULT_BUDGET: int = 10**6
DEFAULT_MAX_GENERATORS: int = 16
DEFAULT_MAX_GROUP_ORDER: int = 24

EngineChoice = Literal["full", "lazy", "auto"]


@dataclass(frozen=True)
class EngineSettings:
    """
    Knobs shared by every verifier.

    `engine` picks the frame engine: "full" enumerates the free inf-lattice (bounded by
    `max_generators`), "lazy" answers entailment queries by search (bounded by `budget`
    node expansions) and "auto" takes the full engine whenever it fits.

    >>> EngineSettings().engine_label(20)
    'lazy(budget=1000000)'
    >>> EngineSettings(engine="full").engine_label(3)
    'full'
    """

    engine: EngineChoice = "auto"
    budget: int = DEFAULT_BUDGET
    max_generators: int = DEFAULT_MAX_GENERATORS
    max_group_order: int = DEFAULT_MAX_GROUP_ORDER
    seed: int = 0
    samples: int = 20

    def __post_init__(self):
        if self.engine not in ("full", "lazy", "auto"):
            raise ValueError(f"Unknown engine {self.engine!r}.")
        if (
            self.budget < 1
            or self.max_generators < 0
            or self.max_group_order < 1
            or self.samples < 1
        ):
            raise ValueError("Bounds must be positive.")

    def uses_full_engine(self, generator_count: int) -> bool:
        if self.engine == "full":
            return True
        if self.engine == "lazy":
            return False
        return generator_count <= self.max_generators

    def engine_label(self, generator_count: int) -> str:
        if self.uses_full_engine(generator_count):
            return "full"
        return f"lazy(budget={self.budget})"

    @classmethod
    def from_namespace(cls, namespace: Any) -> EngineSettings:
        """
        Flags left unset keep their defaults; explicit values, zero included, are
        validated as given.

        >>> from argparse import Namespace
        >>> EngineSettings.from_namespace(Namespace(seed=0, samples=None)).samples
        20
        """
        given = {
            f.name: getattr(namespace, f.name)
            for f in fields(cls)
            if getattr(namespace, f.name, None) is not None
        }
        return cls(**given)


DEFAULT_SETTINGS: EngineSettings = EngineSettings()
