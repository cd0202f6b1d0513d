"""app utils"""
import csv
import inspect
import io
import json
import logging
import os
import sys
from dataclasses import dataclass
from datetime import datetime
from functools import wraps
from typing import Any, List, Optional

import click
import numpy as np

from bessel_zeros.exceptions import BesselZerosError, ConfigurationError
from bessel_zeros.utils import Table

LOG_DIRECTORY: Optional[str] = None
FORMATS = ("csv", "json")


class ParameterContainer(dict):
    """A dict class used to contain and display the parameters"""

    def __str__(self):
        """Better printing than the normal dict"""
        return ", ".join(str(key) + ":" + str(val) for key, val in self.items())


def log_args(logger):
    """
    A decorator used to log the arguments of a command.

    The level given by a `verbose` keyword is applied to `logger` first. When a log directory was
    set with `--log-output-path`, the arguments and the records of `logger` during the call are
    also appended to `<directory>/<command>.log`.
    """

    def set_logger(function):
        @wraps(function)
        def wrapper(*args, **kw):
            if "verbose" in kw:
                set_verbose(logger, kw["verbose"])
            handler = None
            if LOG_DIRECTORY is not None:
                logger_path = os.path.join(LOG_DIRECTORY, function.__name__ + ".log")
                handler = logging.FileHandler(logger_path)
                logger.addHandler(handler)
            try:
                return _log_and_call(logger, function, args, kw)
            finally:
                if handler is not None:
                    logger.removeHandler(handler)
                    handler.close()

        return wrapper

    return set_logger


def _log_and_call(logger, function, args, kw):
    param = ParameterContainer(inspect.signature(function).parameters)
    for name, arg in zip(inspect.signature(function).parameters, args):
        param[name] = arg
    for key, value in kw.items():
        param[key] = value
    date_str = datetime.now().strftime("[%Y-%m-%d %H:%M:%S]")
    logger.info(f"{date_str}:{function.__name__} args:[{param}]")

    return function(*args, **kw)


def exit_on_error(function):
    """
    Translate library errors into messages on stderr and the exit code of the error class.

    Nothing is written to the declared output when an error occurs, since tables are only
    written once complete.
    """

    @wraps(function)
    def wrapper(*args, **kw):
        try:
            return function(*args, **kw)
        except BesselZerosError as error_:
            logging.getLogger(function.__module__).debug("Command failed", exc_info=True)
            click.echo(f"Error: {error_}", err=True)
            sys.exit(error_.exit_code)

    return wrapper


class IntList(click.ParamType):
    """Comma separated integers, e.g. `100,200,300`."""

    name = "int-list"

    def convert(self, value, param, ctx):
        if isinstance(value, (list, tuple)):
            return [int(item) for item in value]
        try:
            return [int(item) for item in str(value).split(",") if item.strip()]
        except ValueError:
            self.fail(f"{value!r} is not a comma separated list of integers", param, ctx)
            return None


INT_LIST = IntList()


@dataclass(frozen=True)
class OutputFormat:
    """
    How tables are serialized.

    Attributes:
        kind: csv or json.
        precision: significant digits of floating point values, in [6, 17].
    """

    kind: str = "csv"
    precision: int = 17

    def __post_init__(self):
        if self.kind not in FORMATS:
            raise ConfigurationError(f"Output format must be one of {FORMATS}. Got {self.kind}.")
        if not 6 <= self.precision <= 17:
            raise ConfigurationError(f"Precision must lie in [6, 17]. Got {self.precision}.")

    def format_value(self, value: Any) -> str:
        """Text of a single cell; None becomes the empty string."""
        if value is None:
            return ""
        if isinstance(value, (bool, np.bool_)):
            return str(bool(value)).lower()
        if isinstance(value, (int, np.integer)):
            return str(int(value))
        if isinstance(value, (float, np.floating)):
            return format(float(value), f".{self.precision}g")
        return str(value)

    def json_value(self, value: Any) -> Any:
        """JSON value carrying exactly the number written in the CSV cell."""
        if value is None or isinstance(value, str):
            return value
        if isinstance(value, (bool, np.bool_)):
            return bool(value)
        if isinstance(value, (int, np.integer)):
            return int(value)
        if isinstance(value, (float, np.floating)):
            number = float(self.format_value(value))
            return number if np.isfinite(number) else self.format_value(value)
        return str(value)


def _comment_line(comment: dict, output_format: OutputFormat) -> str:
    return "# " + " ".join(
        f"{key}={output_format.format_value(value)}" for key, value in comment.items()
    )


def format_table(table: Table, output_format: OutputFormat) -> str:
    """
    Serialize a table.

    CSV uses `,` separators, LF line endings and comment lines starting with `#` after the
    rows. JSON is an object with the keys columns, rows and comments.
    """
    if output_format.kind == "json":
        document = {
            "columns": list(table.columns),
            "rows": [[output_format.json_value(v) for v in row] for row in table.rows],
            "comments": [
                {key: output_format.json_value(value) for key, value in comment.items()}
                for comment in table.comments
            ],
        }
        return json.dumps(document, indent=2) + "\n"

    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(table.columns)
    for row in table.rows:
        writer.writerow([output_format.format_value(value) for value in row])
    lines: List[str] = [buffer.getvalue()]
    lines.extend(_comment_line(comment, output_format) + "\n" for comment in table.comments)

    return "".join(lines)


def write_table(table: Table, output_format: OutputFormat, out: Optional[str] = None) -> None:
    """Write a table to the file `out` (LF line endings) or to stdout if `out` is None."""
    text = format_table(table, output_format)
    if out is None:
        click.echo(text, nl=False)
        return
    with open(out, "w", encoding="utf-8", newline="\n") as file_:
        file_.write(text)


def output_options(function):
    """
    Common output options: --format, --precision and --out.

    Example usage in app:
        @app.command()
        @output_options
        def solve(n, output_format, out):
            ...
    """
    function = click.option(
        "--out",
        type=click.Path(dir_okay=False, writable=True),
        default=None,
        help="Output file. Defaults to stdout.",
    )(function)
    function = click.option(
        "--precision",
        type=click.IntRange(6, 17),
        default=17,
        show_default=True,
        help="Significant digits of floating point values.",
    )(function)
    function = click.option(
        "--format",
        "kind",
        type=click.Choice(FORMATS),
        default="csv",
        show_default=True,
        help="Output format.",
    )(function)

    @wraps(function)
    def wrapper(*args, kind, precision, **kw):
        return function(*args, output_format=OutputFormat(kind, precision), **kw)

    return wrapper


def set_verbose(logger, verbose):
    """Set the verbose level for the cli"""
    logger.setLevel((logging.WARNING, logging.INFO, logging.DEBUG)[min(verbose, 2)])


def verbose_option(function):
    """
    Common verbose option for bessel-zeros CLIs.

    Args:
        function: the command function to be wrapped with the verbose option.

    Returns:
        the `function` decorated with the common options.
        Example usage in app:
            L = logging.getLogger(__name__)
            ...
            @app.command()
            @verbose_option
            @click.option(...)
            ...
            def solve(verbose, ...):
                set_verbose(L, verbose)
    """
    function = click.option(
        "-v",
        "--verbose",
        count=True,
        required=False,
        help="Use -v for info and -vv for debug. Defaults to warning level.",
    )(function)

    def set_log_file(_, __, log_output_path):
        global LOG_DIRECTORY  # pylint: disable=global-statement
        LOG_DIRECTORY = log_output_path

    function = click.option(
        "--log-output-path",
        type=click.Path(writable=True, file_okay=False, dir_okay=True, resolve_path=True),
        default=None,
        required=False,
        help="Append the command arguments to <directory>/<command>.log",
        callback=set_log_file,
        is_eager=True,
        expose_value=False,
    )(function)

    return function
