"""
Command line interface of bessel-zeros.

Exit codes: 0 success, 2 usage, 3 singular degree, 4 non-convergence, 5 other numerical errors.
"""
import logging

import click

from bessel_zeros.app_utils import (
    INT_LIST,
    exit_on_error,
    log_args,
    output_options,
    set_verbose,
    verbose_option,
    write_table,
)
from bessel_zeros.approx_formulas import approx_zero, fit_coefficients
from bessel_zeros.bessel_poly import reverse_zeros
from bessel_zeros.electrostatics import NewtonConfig, newton_solve
from bessel_zeros.experiments import (
    convergence_study,
    cross_method_table,
    findings_table,
    gamma_table,
    power_sum_table,
    real_zero_table,
    solve_all,
    study_table,
    zero_locus_data,
)
from bessel_zeros.oracle import aberth_solve
from bessel_zeros.utils import Table

L = logging.getLogger(__name__)
PACKAGE_LOGGER = logging.getLogger("bessel_zeros")


def newton_options(function):
    """Options --tol and --max-iter of the electrostatic Newton solve."""
    function = click.option(
        "--max-iter",
        type=click.IntRange(min=1),
        default=NewtonConfig.max_iter,
        show_default=True,
        help="Maximal number of Newton iterations.",
    )(function)
    function = click.option(
        "--tol",
        type=float,
        default=NewtonConfig.tol_residual,
        show_default=True,
        help="Stopping threshold on the scaled electrostatic residual.",
    )(function)

    return function


@click.group()
def app():
    """Zeros of the Bessel polynomials y_n: closed forms, electrostatic solver and studies."""
    logging.basicConfig(format="%(levelname)s:%(name)s:%(message)s")


@app.command()
@verbose_option
@output_options
@click.option("--n", type=click.IntRange(min=0), required=True, help="Degree, n >= 2.")
@click.option("--k", type=int, default=None, help="Index of a single zero, 1 <= k <= n.")
@log_args(L)
@exit_on_error
def approx(verbose, n, k, output_format, out):
    """Closed-form approximate zeros of y_n (columns k, re, im)."""
    set_verbose(PACKAGE_LOGGER, verbose)
    fit_coefficients(n)
    indices = range(1, n + 1) if k is None else [k]
    table = Table(columns=("k", "re", "im"))
    for index in indices:
        zero = approx_zero(index, n)
        table.rows.append((index, zero.real, zero.imag))
    write_table(table, output_format, out)


@app.command()
@verbose_option
@output_options
@newton_options
@click.option("--n", type=click.IntRange(min=1), required=True, help="Degree, n >= 1.")
@click.option(
    "--seed-source",
    type=click.Choice(["approx", "oracle"]),
    default="approx",
    show_default=True,
    help="Starting points: closed-form zeros or Aberth-Ehrlich zeros.",
)
@click.option(
    "--reverse",
    is_flag=True,
    default=False,
    help="Print the zeros of the reverse polynomial theta_n(x) = x^n y_n(1/x) instead.",
)
@log_args(L)
@exit_on_error
def solve(verbose, n, tol, max_iter, seed_source, reverse, output_format, out):
    """
    Zeros of y_n by Newton iteration on the electrostatic equations (columns k, re, im).

    A trailing comment line gives the scaled and the absolute residual and the number of
    iterations.
    """
    set_verbose(PACKAGE_LOGGER, verbose)
    config = NewtonConfig(tol_residual=tol, max_iter=max_iter)
    seed = aberth_solve(n) if seed_source == "oracle" else None
    solved = newton_solve(n, config, seed)
    if reverse:
        solved = reverse_zeros(solved)
    table = Table(columns=("k", "re", "im"))
    table.rows = [(k, z.real, z.imag) for k, z in enumerate(solved.zeros, start=1)]
    table.comments.append(
        {
            "residual_norm": solved.residual_norm,
            "abs_residual_norm": solved.abs_residual_norm,
            "iterations": solved.iterations,
        }
    )
    write_table(table, output_format, out)


@app.command()
@verbose_option
@output_options
@newton_options
@click.option("--n-min", type=int, default=10, show_default=True, help="First degree.")
@click.option("--n-max", type=int, default=500, show_default=True, help="Last degree.")
@click.option("--step", type=int, default=10, show_default=True, help="Grid step.")
@click.option("--k", type=click.IntRange(min=1), default=None, help="Also fit |z_k - z~_k|.")
@log_args(L)
@exit_on_error
def study(verbose, n_min, n_max, step, k, tol, max_iter, output_format, out):
    """
    max_k |z_k - z~_k| against n, with a power-law fit in the last comment line.
    """
    set_verbose(PACKAGE_LOGGER, verbose)
    config = NewtonConfig(tol_residual=tol, max_iter=max_iter)
    records, fit = convergence_study(n_min, n_max, step, config)
    write_table(study_table(records, fit, k), output_format, out)


@app.command()
@verbose_option
@output_options
@newton_options
@click.option("--n", "n_list", type=INT_LIST, required=True, help="Degrees, e.g. 100,200,300.")
@log_args(L)
@exit_on_error
def locus(verbose, n_list, tol, max_iter, output_format, out):
    """Normalized solved and closed-form zeros n z_k, n z~_k."""
    set_verbose(PACKAGE_LOGGER, verbose)
    config = NewtonConfig(tol_residual=tol, max_iter=max_iter)
    write_table(zero_locus_data(n_list, config), output_format, out)


@app.command("power-sums")
@verbose_option
@output_options
@click.option("--n", "n_list", type=INT_LIST, required=True, help="Degrees, e.g. 10,100.")
@log_args(L)
@exit_on_error
def power_sums(verbose, n_list, output_format, out):
    """Power sums of orders 1 to 3 of the closed-form zeros against the exact values."""
    set_verbose(PACKAGE_LOGGER, verbose)
    write_table(power_sum_table(n_list), output_format, out)


@app.command("real-zero")
@verbose_option
@output_options
@newton_options
@click.option("--n", "n_list", type=INT_LIST, required=True, help="Odd degrees, e.g. 3,5,7.")
@log_args(L)
@exit_on_error
def real_zero(verbose, n_list, tol, max_iter, output_format, out):
    """Real zero of y_n for odd n against its closed-form and reference estimates."""
    set_verbose(PACKAGE_LOGGER, verbose)
    config = NewtonConfig(tol_residual=tol, max_iter=max_iter)
    write_table(real_zero_table(n_list, config), output_format, out)


@app.command()
@verbose_option
@output_options
@newton_options
@click.option("--k", "k_list", type=INT_LIST, default="1", show_default=True, help="Indices.")
@click.option("--n", "n_list", type=INT_LIST, required=True, help="Degrees, e.g. 50,100.")
@click.option(
    "--provenance",
    type=click.Choice(["approx", "newton"]),
    default="approx",
    show_default=True,
    help="Evaluate the defect at the closed-form or at the solved zeros.",
)
@log_args(L)
@exit_on_error
def gamma(verbose, k_list, n_list, provenance, tol, max_iter, output_format, out):
    """Defect | |W(n z_k)| - 1 | of the normalized zeros from the limit curve."""
    set_verbose(PACKAGE_LOGGER, verbose)
    zero_sets = None
    if provenance == "newton":
        zero_sets = solve_all(n_list, NewtonConfig(tol_residual=tol, max_iter=max_iter))
    write_table(gamma_table(k_list, n_list, zero_sets), output_format, out)


@app.command()
@verbose_option
@output_options
@click.option("--n-min", type=click.IntRange(min=2), default=3, show_default=True)
@click.option("--n-max", type=click.IntRange(min=2), default=500, show_default=True)
@click.option("--step", type=click.IntRange(min=1), default=1, show_default=True)
@log_args(L)
@exit_on_error
def audit(verbose, n_min, n_max, step, output_format, out):
    """Fit conditions of the closed-form coefficients and closed power sums, as findings."""
    set_verbose(PACKAGE_LOGGER, verbose)
    write_table(findings_table(range(n_min, n_max + 1, step)), output_format, out)


@app.command()
@verbose_option
@output_options
@newton_options
@click.option("--n", "n_list", type=INT_LIST, required=True, help="Degrees, e.g. 2,50,200.")
@log_args(L)
@exit_on_error
def compare(verbose, n_list, tol, max_iter, output_format, out):
    """Agreement between the electrostatic solver and the Aberth-Ehrlich oracle."""
    set_verbose(PACKAGE_LOGGER, verbose)
    config = NewtonConfig(tol_residual=tol, max_iter=max_iter)
    write_table(cross_method_table(n_list, config), output_format, out)
