#!/usr/bin/env python3
"""
Command Line - click front end for the Hom-Lie conformal superalgebra engine

Reports go to stdout (text or JSON), logs and progress bars to stderr.
Exit codes: 0 pass or inconclusive, 1 check failure, 2 usage or input error,
3 structural precondition failure (for example a non-invertible α).
"""

import sys
from dataclasses import dataclass
from typing import Callable, Optional

import click

from src.core import __version__
from src.core.config import load_config
from src.core.constants import ClassTag, ExitCode
from src.core.exceptions import (
    AlgebraException,
    ConfigurationException,
    InputException,
    SolverException,
)
from src.core.logger import log_error_with_context, setup_logger
from src.core.models import CheckStatus, RunReport
from .runner import CENTER, EngineRunner


LOG_LEVELS = ["TRACE", "DEBUG", "INFO", "SUCCESS", "WARNING", "ERROR", "CRITICAL"]
CLASS_CHOICES = [tag.value for tag in ClassTag] + [CENTER]

FILES = click.argument("files", nargs=-1, required=True, type=click.Path(exists=True, dir_okay=False))


@dataclass
class CliState:
    runner: EngineRunner
    fmt: str


def run_command(state: CliState, action: Callable[[], RunReport]) -> None:
    """Render the report and exit with the code its status maps to"""
    try:
        report = action()
    except InputException as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(ExitCode.USAGE_ERROR)
    except (AlgebraException, SolverException) as e:
        log_error_with_context("Precondition failure", e, {"exit": ExitCode.PRECONDITION_FAILURE})
        click.echo(f"error: {type(e).__name__}: {e}", err=True)
        sys.exit(ExitCode.PRECONDITION_FAILURE)

    click.echo(report.render(state.fmt), nl=False)
    if report.status == CheckStatus.FAIL:
        sys.exit(ExitCode.CHECK_FAILURE)
    sys.exit(ExitCode.PASS)


def bounds_options(func):
    """--k, --deg-l and --deg-d shared by the solver commands"""
    func = click.option("--deg-d", type=click.IntRange(min=0), default=None,
                        help="Maximum ∂-degree of unknown entries")(func)
    func = click.option("--deg-l", type=click.IntRange(min=0), default=None,
                        help="Maximum λ-degree of unknown entries")(func)
    func = click.option("--k", "k", type=click.IntRange(min=0), default=None, help="Power of α")(func)
    return func


# ============================================================================
# GROUP
# ============================================================================

@click.group()
@click.option("--log-level", type=click.Choice(LOG_LEVELS, case_sensitive=False), default=None,
              help="Logging level (default from configuration)")
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False), default=None,
              help="YAML configuration file (default: $HLCSA_CONFIG or config/engine_config.yaml)")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default=None, help="Report format")
@click.option("--timing/--no-timing", default=None, help="Append wall-clock timing to the report")
@click.version_option(__version__, prog_name="hlcsa")
@click.pass_context
def cli(ctx: click.Context, log_level: Optional[str], config_path: Optional[str], fmt: Optional[str],
        timing: Optional[bool]) -> None:
    """Symbolic verification engine for finite free Hom-Lie conformal superalgebras"""
    try:
        config = load_config(config_path)
    except ConfigurationException as e:
        click.echo(f"error: {e}", err=True)
        ctx.exit(ExitCode.USAGE_ERROR)
    setup_logger(log_level or config.logging.level, config.logging.log_to_file, config.logging.log_dir)
    ctx.obj = CliState(EngineRunner(config, timing), fmt or config.report.format)


# ============================================================================
# COMMANDS
# ============================================================================

@cli.command()
@FILES
@click.pass_obj
def check(state: CliState, files) -> None:
    """Axiom suite: grading, skew-symmetry, Hom-Jacobi, multiplicativity"""
    run_command(state, lambda: state.runner.check(files))


@cli.command()
@FILES
@click.option("--rep", "rep_name", default=None, help="Representation section (default: adjoint)")
@click.pass_obj
def rep(state: CliState, files, rep_name: Optional[str]) -> None:
    """Representation identities and the semidirect sum suite"""
    run_command(state, lambda: state.runner.rep(files, rep_name))


@cli.command()
@FILES
@click.option("--cochain", default=None, help="Cochain section to differentiate")
@click.option("--target", default=None, help="adjoint | shift:s | rep:NAME")
@click.option("--trials", type=click.IntRange(min=0), default=None, help="Number of random cochains")
@click.option("--seed", type=int, default=None, help="Seed for random cochains (required when trials > 0)")
@click.pass_obj
def d2(state: CliState, files, cochain, target, trials, seed) -> None:
    """d(dγ) = 0 for a declared cochain and seeded random cochains"""
    run_command(state, lambda: state.runner.d2(files, cochain, target, trials, seed))


@cli.command()
@FILES
@click.option("--cochain", default=None, help="2-cochain section")
@click.pass_obj
def cocycle(state: CliState, files, cochain) -> None:
    """Reduced 2-cocycle condition with values in R_-1"""
    run_command(state, lambda: state.runner.cocycle(files, cochain))


@cli.command()
@FILES
@click.option("--cochain", default=None, help="2-cochain section generating the deformation")
@click.pass_obj
def deform(state: CliState, files, cochain) -> None:
    """Linear and quadratic conditions of the one-parameter deformation"""
    run_command(state, lambda: state.runner.deform(files, cochain))


@cli.command()
@FILES
@click.option("--map", "map_name", default=None, help="Map section holding the operator")
@click.pass_obj
def nijenhuis(state: CliState, files, map_name) -> None:
    """Nijenhuis identity, generated deformation and its triviality certificate"""
    run_command(state, lambda: state.runner.nijenhuis(files, map_name))


@cli.command()
@FILES
@click.option("--class", "target", type=click.Choice(CLASS_CHOICES), required=True, help="Class to solve")
@bounds_options
@click.option("--out", type=click.Path(dir_okay=False, writable=True), default=None,
              help="Write the basis as [map] sections")
@click.pass_obj
def solve(state: CliState, files, target, k, deg_l, deg_d, out) -> None:
    """Basis of a class (or of the center) within degree bounds"""
    run_command(state, lambda: state.runner.solve(files, target, k, state.runner.bounds(deg_l, deg_d), out))


@cli.command()
@FILES
@click.option("--class", "tag", type=click.Choice([t.value for t in ClassTag]), default=None,
              help="Check every map against this class instead of its declared class")
@click.option("--k", "k", type=click.IntRange(min=0), default=None, help="Override the declared power")
@click.pass_obj
def verify(state: CliState, files, tag, k) -> None:
    """Class check of declared maps, e.g. a basis written by solve --out"""
    run_command(state, lambda: state.runner.verify(files, tag, k))


@cli.command()
@FILES
@click.option("--map", "map_name", default=None, help="Map section holding the derivation")
@click.option("--generator", default="D", show_default=True, help="Name of the new generator")
@click.option("--out", type=click.Path(dir_okay=False, writable=True), default=None,
              help="Write the extended algebra")
@click.pass_obj
def extend(state: CliState, files, map_name, generator, out) -> None:
    """Extension by a derivation and the axiom suite on the result"""
    run_command(state, lambda: state.runner.extend(files, map_name, generator, out))


@cli.command()
@FILES
@bounds_options
@click.pass_obj
def audit(state: CliState, files, k, deg_l, deg_d) -> None:
    """Inclusions, closure, decomposition and center interaction of all classes"""
    run_command(state, lambda: state.runner.audit(files, k, state.runner.bounds(deg_l, deg_d)))


@cli.command("der-algebra")
@FILES
@bounds_options
@click.pass_obj
def der_algebra(state: CliState, files, k, deg_l, deg_d) -> None:
    """Commutators and Hom-Jacobi of a computed Der basis"""
    run_command(state, lambda: state.runner.der_algebra(files, k, state.runner.bounds(deg_l, deg_d)))
