import argparse
import logging
from abc import ABC, abstractmethod
from typing import List

from pydantic import ValidationError

from app.Helper.helper_constant import ExitCode
from app.Helper.helper_exceptions import UsageError
from app.Helper.helper_pydantic import CommandOutcome, EngineSettings

logger = logging.getLogger(__name__)

# Flags that map one-to-one onto EngineSettings fields
SETTING_FLAGS = {
    "seed": "seed",
    "jobs": "jobs",
    "cap": "closure_cap",
    "trials": "shadow_trials",
}


def settings_from_args(args: argparse.Namespace) -> EngineSettings:
    """Build validated engine settings from parsed command-line flags."""
    values = {
        "progress": bool(getattr(args, "verbose", False) or getattr(args, "debug", False)),
        "experimental_n3": bool(getattr(args, "experimental_n3", False)),
    }
    for flag, field in SETTING_FLAGS.items():
        value = getattr(args, flag, None)
        if value is not None:
            values[field] = value
    try:
        return EngineSettings(**values)
    except ValidationError as exc:
        problems = "; ".join(f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}" for err in exc.errors())
        raise UsageError(f"invalid option value ({problems})") from None


class BaseCommand(ABC):
    """Base class for all commands."""

    name: str = ""
    description: str = ""

    def __init__(self, settings: EngineSettings):
        self.name = self.__class__.name
        self.description = self.__class__.description
        self.settings = settings

    @classmethod
    @abstractmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        """Register the command's flags on its sub-parser."""

    @abstractmethod
    def _run(self, args: argparse.Namespace) -> CommandOutcome:
        """Execute the command's main functionality."""

    def run(self, args: argparse.Namespace) -> CommandOutcome:
        """Run the command with the given arguments."""
        logger.info(f"Running {self.name}")
        outcome = self._run(args)
        logger.info(f"{self.name} finished with exit status {outcome.exit_code}")
        return outcome

    @staticmethod
    def outcome(lines: List[str], passed: bool = True) -> CommandOutcome:
        return CommandOutcome(lines=lines, exit_code=ExitCode.PASSED if passed else ExitCode.FAILED)
