"""test app_utils"""
import json
import logging
import math
from pathlib import Path

import click
import numpy as np
import pytest as pt
from click.testing import CliRunner

import bessel_zeros.app_utils as tested
from bessel_zeros.exceptions import ConfigurationError, NoConvergenceError, SingularDegreeError
from bessel_zeros.utils import Table


def get_table():
    table = Table(columns=("k", "re", "im", "note"))
    table.rows = [(1, -0.75, -0.5, None), (2, np.float64(-0.75), 0.5, "x")]
    table.comments = [{"residual_norm": 1.0 / 3.0, "iterations": 4}]

    return table


def test_output_format():
    output_format = tested.OutputFormat()
    assert (output_format.kind, output_format.precision) == ("csv", 17)
    assert output_format.format_value(None) == ""
    assert output_format.format_value(True) == "true"
    assert output_format.format_value(np.int64(3)) == "3"
    assert output_format.format_value(0.1) == "0.10000000000000001"
    assert tested.OutputFormat(precision=6).format_value(1.0 / 3.0) == "0.333333"
    assert output_format.json_value(np.float64(0.5)) == 0.5
    assert output_format.json_value(math.nan) == "nan"

    with pt.raises(ConfigurationError):
        tested.OutputFormat(kind="xml")
    with pt.raises(ConfigurationError):
        tested.OutputFormat(precision=5)


def test_format_table_csv():
    text = tested.format_table(get_table(), tested.OutputFormat(precision=6))
    assert text == (
        "k,re,im,note\n"
        "1,-0.75,-0.5,\n"
        "2,-0.75,0.5,x\n"
        "# residual_norm=0.333333 iterations=4\n"
    )
    assert "\r" not in text


def test_format_table_json():
    output_format = tested.OutputFormat(kind="json", precision=6)
    document = json.loads(tested.format_table(get_table(), output_format))
    assert document["columns"] == ["k", "re", "im", "note"]
    assert document["rows"] == [[1, -0.75, -0.5, None], [2, -0.75, 0.5, "x"]]
    assert document["comments"] == [{"residual_norm": 0.333333, "iterations": 4}]


def test_write_table(tmp_path):
    path = Path(tmp_path, "table.csv")
    tested.write_table(get_table(), tested.OutputFormat(), str(path))
    with open(path, "rb") as file_:
        content = file_.read()
    assert content.startswith(b"k,re,im,note\n1,-0.75,-0.5,\n")
    assert b"\r\n" not in content


def test_int_list():
    @click.command()
    @click.option("--n", type=tested.INT_LIST)
    def fun(n):
        click.echo(repr(n))

    runner = CliRunner()
    result = runner.invoke(fun, ["--n", "100,200, 300"])
    assert result.exit_code == 0, str(result.output)
    assert result.output == "[100, 200, 300]\n"

    result = runner.invoke(fun, ["--n", "1,two"])
    assert result.exit_code == 2


def test_output_options():
    @click.command()
    @tested.output_options
    def fun(output_format, out):
        assert output_format == tested.OutputFormat("json", 8)
        assert out is None

    runner = CliRunner()
    result = runner.invoke(fun, ["--format", "json", "--precision", "8"])
    assert result.exit_code == 0, str(result.output)

    result = runner.invoke(fun, ["--precision", "20"])
    assert result.exit_code == 2


def test_exit_on_error():
    @click.command()
    @click.option("--kind")
    @tested.exit_on_error
    def fun(kind):
        if kind == "singular":
            raise SingularDegreeError("singular degree")
        raise NoConvergenceError("no convergence")

    runner = CliRunner()
    result = runner.invoke(fun, ["--kind", "singular"])
    assert result.exit_code == 3
    assert "singular degree" in result.output
    assert runner.invoke(fun, ["--kind", "other"]).exit_code == 4


def test_log_args(caplog):
    L = logging.getLogger(__name__)

    @tested.log_args(L)
    def fun(n, output_format=None):
        return n + 1

    with caplog.at_level(logging.INFO):
        assert fun(41, output_format="csv") == 42
    assert "fun args:[n:41, output_format:csv]" in caplog.text


def test_set_verbose():
    L = logging.getLogger(__name__)
    tested.set_verbose(L, 0)
    assert L.level == logging.WARNING
    tested.set_verbose(L, 1)
    assert L.level == logging.INFO
    tested.set_verbose(L, 2)
    assert L.level == logging.DEBUG
    tested.set_verbose(L, 3)
    assert L.level == logging.DEBUG


def test_verbose_option(tmp_path):
    @click.command()
    @tested.verbose_option
    def fun(verbose):
        assert verbose == 2, verbose
        assert tested.LOG_DIRECTORY == str(tmp_path.resolve())

    runner = CliRunner()
    result = runner.invoke(fun, ["-vv", "--log-output-path", str(tmp_path)])
    assert result.exit_code == 0, str(result.output)
    tested.LOG_DIRECTORY = None


def test_log_args_writes_log_file(tmp_path):
    L = logging.getLogger("bessel_zeros.tests.log_file")

    @click.command()
    @tested.verbose_option
    @tested.log_args(L)
    def fun(verbose):
        L.info("inside")

    runner = CliRunner()
    result = runner.invoke(fun, ["-v", "--log-output-path", str(tmp_path)])
    assert result.exit_code == 0, str(result.output)
    tested.LOG_DIRECTORY = None
    assert L.handlers == []
    content = Path(tmp_path, "fun.log").read_text()
    assert "fun args:[verbose:1]" in content
    assert "inside" in content
