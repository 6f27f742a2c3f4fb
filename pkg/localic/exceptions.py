from typing import Any
from typing import Mapping
from typing import Optional
from typing import Sequence


class InputErrors(Exception):
    """
    Raised when an input document can't be loaded.

    :param issues_map: A mapping from a path of keys to something that can have str called on it.

    >>> e = InputErrors({("covers", "0", "family"): "Must be a list."})
    >>> e.as_dict()
    {'covers.0.family': 'Must be a list.'}
    """

    def __init__(self, issues_map: Mapping[tuple[str, ...], Any]):
        super().__init__(issues_map)
        self.issues_map = issues_map

    def as_dict(self) -> dict[str, str]:
        return {".".join(k): str(v) for k, v in self.issues_map.items()}

    def __str__(self) -> str:
        return "\n".join(f"{k or '<root>'}: {v}" for k, v in self.as_dict().items())


class DeserializationError(Exception):
    def __init__(self, message: str = "", location: Sequence[str] = ()):
        super().__init__(message)
        self.location = tuple(location)


class LocalicError(ValueError):
    """
    Base class for domain errors. The location points into the input document when there is one.
    """

    def __init__(self, message: str, location: Sequence[str] = ()):
        super().__init__(message)
        self.location = tuple(location)


class CapacityError(LocalicError):
    pass


class SiteMismatchError(LocalicError):
    pass


class InvalidPreorder(LocalicError):
    pass


class InvalidSite(LocalicError):
    pass


class InvalidGroup(LocalicError):
    pass


class InvalidAction(LocalicError):
    pass


class InvalidCategory(LocalicError):
    pass


class InvalidFunctor(LocalicError):
    pass


class NotSurjective(LocalicError):
    pass


class NotGalois(LocalicError):
    pass


class InvalidMorphism(LocalicError):
    """
    A frame map that fails to respect the order or a cover of its source.
    """

    def __init__(self, message: str, report: Optional[Any] = None):
        super().__init__(message)
        self.report = report
