import hashlib
import logging
import re
from datetime import datetime, timezone
from enum import IntEnum
from pathlib import Path

from rich.logging import RichHandler

_RE_NAME = re.compile(r"^[\w\- ]+$")


class SbsError(Exception):
    pass


class ConfigError(SbsError, ValueError):
    pass


class CorpusError(SbsError, ValueError):
    def __init__(self, message: str, row: int | None = None):
        self.row = row
        if row is not None:
            message = f"row {row}: {message}"
        super().__init__(message)


class PajekError(SbsError, ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class NetworkError(SbsError):
    pass


class ExitStatus(IntEnum):
    OK = 0
    FAILURE = 1
    CONFIG_ERROR = 2


class OperationError(SbsError):
    pass


class Operation:
    """
    A single request against a manager.

    The target must implement op_<operation>(operation). It reads its
    arguments from operation.kwargs, fills operation.results, and on failure
    sets operation.status before raising operation.ex.
    """

    st = ExitStatus
    ex = OperationError

    def __init__(self, target, operation: str, kwargs: dict | None = None):
        self.target = target
        self.operation = operation
        self.kwargs = kwargs or dict()
        self.status = ExitStatus.OK
        self.results = dict()

    def execute(self):
        if not (method := getattr(self.target, f"op_{self.operation}", None)):
            self.status = self.st.FAILURE
            self.results = {
                "success": False,
                "message": f"Unknown operation '{self.operation}'.",
            }
            return
        try:
            method(self)
        except self.ex as err:
            if self.status == self.st.OK:
                self.status = self.st.FAILURE
            self.results = {"success": False, "message": str(err)}


def validate_name(name: str | None, thing_type: str = "Name", matcher=_RE_NAME) -> str:
    if not isinstance(name, str) or not (name := name.strip()):
        raise ConfigError(f"{thing_type} must not be empty.")
    if not matcher.match(name):
        raise ConfigError(f"{thing_type} '{name}' contains invalid characters.")
    return name


def utcnow() -> datetime:
    return datetime.now(timezone.utc)


def file_digest(path: Path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(65536), b""):
            digest.update(chunk)
    return digest.hexdigest()


def setup_logging(verbose: bool = False):
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.INFO,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(show_path=False)],
        force=True,
    )
