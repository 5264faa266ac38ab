import argparse
import sys
from pathlib import Path

from rich.console import Console
from rich.table import Table
from rich.text import Text

from . import __version__
from .managers import AnalysisManager
from .utils import ExitStatus, Operation, setup_logging


class _CmdBase:
    key = None
    help = ""

    def __init__(self, args: argparse.Namespace, console: Console | None = None):
        self.args = args
        self.console = console or Console()
        self.buffer = list()
        self.status = ExitStatus.OK

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser):
        pass

    def msg(self, text: str):
        self.buffer.append(Text(text))

    def rich_table(self, *columns, title: str | None = None) -> Table:
        t = Table(title=title, show_lines=False, header_style="bold")
        for column in columns:
            t.add_column(column)
        return t

    def operation(self, target=None, operation: str = "", kwargs: dict | None = None) -> Operation:
        return Operation(target=target or AnalysisManager(), operation=operation, kwargs=kwargs)

    def op_message(self, op: Operation):
        self.status = op.status
        if message := op.results.get("message", None):
            self.msg(message if op.status == ExitStatus.OK else f"error: {message}")

    def func(self):
        raise NotImplementedError

    def run(self) -> int:
        self.func()
        for entry in self.buffer:
            self.console.print(entry)
        return int(self.status)


class CmdRun(_CmdBase):
    """
    Run the full analysis for one config file.

    Syntax:
        sbs run --config <file> [--out <dir>] [--seed <n>] [--workers <n>] [--verbose]

    --out, --seed and --workers override the matching config options.
    """

    key = "run"
    help = "run the analysis pipeline"

    @classmethod
    def add_arguments(cls, parser):
        parser.add_argument("--config", required=True, type=Path)
        parser.add_argument("--out", type=Path, default=None)
        parser.add_argument("--seed", type=int, default=None)
        parser.add_argument("--workers", type=int, default=None)

    def func(self):
        op = self.operation(
            operation="run",
            kwargs={
                "config_path": self.args.config,
                "out": self.args.out,
                "seed": self.args.seed,
                "workers": self.args.workers,
            },
        )
        op.execute()
        self.op_message(op)
        if not op.results.get("success", False):
            return

        manifest = op.results["manifest"]
        t = self.rich_table("Stage", "Seconds", title="Stage timings")
        for stage, seconds in manifest["stage_seconds"].items():
            t.add_row(stage, f"{seconds:.3f}")
        self.buffer.append(t)


class CmdExportPajek(_CmdBase):
    """
    Write one interval's co-occurrence network as a Pajek file.

    Syntax:
        sbs export-pajek --config <file> --interval <label> [--out <file>]

    The interval label is its start date, e.g. 2024-01-01.
    """

    key = "export-pajek"
    help = "export one interval network in Pajek format"

    @classmethod
    def add_arguments(cls, parser):
        parser.add_argument("--config", required=True, type=Path)
        parser.add_argument("--interval", required=True)
        parser.add_argument("--out", type=Path, default=None)

    def func(self):
        op = self.operation(
            operation="export_pajek",
            kwargs={
                "config_path": self.args.config,
                "interval": self.args.interval,
                "out": self.args.out,
            },
        )
        op.execute()
        self.op_message(op)


class CmdOptions(_CmdBase):
    """
    List the analysis options.

    Syntax:
        sbs options [--config <file>]

    With a config file, shows its validated values instead of the defaults.
    """

    key = "options"
    help = "list analysis options"

    @classmethod
    def add_arguments(cls, parser):
        parser.add_argument("--config", type=Path, default=None)

    def func(self):
        op = self.operation(operation="options", kwargs={"config_path": self.args.config})
        op.execute()
        if not op.results.get("success", False):
            self.op_message(op)
            return

        title = f"Options of {self.args.config}" if self.args.config else "Default options"
        t = self.rich_table("Name", "Description", "Type", "Value", title=title)
        for config in op.results.get("config", list()):
            t.add_row(config["name"], config["description"], config["type"], config["value"])
        self.buffer.append(t)


class CmdVersion(_CmdBase):
    """
    Print the package version.

    Syntax:
        sbs version
    """

    key = "version"
    help = "print the version"

    def func(self):
        self.msg(f"sbs_analytics {__version__}")


COMMANDS = (CmdRun, CmdExportPajek, CmdOptions, CmdVersion)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sbs", description="Semantic Brand Score analytics.")
    parser.add_argument("--verbose", action="store_true", help="log at debug level")
    sub = parser.add_subparsers(dest="command", required=True)
    for cmd in COMMANDS:
        child = sub.add_parser(cmd.key, help=cmd.help, description=cmd.__doc__,
                               formatter_class=argparse.RawDescriptionHelpFormatter)
        child.add_argument("--verbose", action="store_true", default=argparse.SUPPRESS,
                           help="log at debug level")
        cmd.add_arguments(child)
        child.set_defaults(cmd_class=cmd)
    return parser


def main(argv: list[str] | None = None, console: Console | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return int(ExitStatus.OK if err.code == 0 else ExitStatus.CONFIG_ERROR)
    setup_logging(args.verbose)
    return args.cmd_class(args, console).run()


if __name__ == "__main__":
    sys.exit(main())
