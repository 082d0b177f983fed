"""
RAAG Toolkit CLI

Commands:
- graph-info:  links, domination classes, principal and maximal vertices
- partitions:  Γ-Whitehead partitions based at a vertex
- ranks / vcd: exact compatible-set ranks and vcd(ΣOut)
- minimize:    greedy Whitehead descent of a marking for a class set
- explore:     local Whitehead move graph, optionally as DOT
- selftest:    invariant suites

Exit codes: 0 success, 1 usage/parse, 2 domain precondition, 3 budget/undecided.
"""

import logging
import sys
from pathlib import Path
from typing import List, Optional

import click
from pydantic import BaseModel, Field

from config import configure_logging, get_settings
from defining_graph import DefiningGraph, load_graph
from invariant_checks import run_selftest
from raag_automorphisms import load_automorphism
from raag_errors import RaagError
from reports import graph_info_text, minimize_text, partitions_text
from symmetric_spine import local_explore, rank_report, vcd_symout
from whitehead_norms import identity_salvetti, load_class_set, marked_salvetti, minimize
from whitehead_partitions import enumerate_partitions

logger = logging.getLogger(__name__)


# ============================================================================
# CONFIG
# ============================================================================

class CliConfig(BaseModel):
    graph_path: str
    command: str = ""
    tail_bound: int = Field(3, ge=0)
    search_budget: int = Field(10_000_000, gt=0)
    seed: int = 0
    output_path: Optional[str] = None


class SelftestFailed(RaagError):
    """At least one invariant suite failed"""

    exit_code = 2


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def load_cfg_graph(cfg: CliConfig) -> DefiningGraph:
    return load_graph(_read(cfg.graph_path))


# ============================================================================
# REPORT BUILDERS
# ============================================================================

def cmd_graph_info(cfg: CliConfig) -> str:
    return graph_info_text(load_cfg_graph(cfg))


def cmd_partitions(cfg: CliConfig, base: str, symmetric: bool = False) -> str:
    g = load_cfg_graph(cfg)
    return partitions_text(enumerate_partitions(g, base, symmetric_only=symmetric))


def cmd_ranks(cfg: CliConfig) -> str:
    return rank_report(load_cfg_graph(cfg), cfg.search_budget).text()


def cmd_vcd(cfg: CliConfig) -> str:
    return f"vcd={vcd_symout(load_cfg_graph(cfg), cfg.search_budget)}\n"


def cmd_minimize(cfg: CliConfig, auto_path: str, classes_path: str) -> str:
    g = load_cfg_graph(cfg)
    sigma = marked_salvetti(load_automorphism(g, _read(auto_path)))
    classes = load_class_set(g, _read(classes_path))
    return minimize_text(minimize(sigma, classes, cfg.tail_bound))


def cmd_explore(cfg: CliConfig, depth: int, symmetric: bool = False,
                dot_path: Optional[str] = None) -> str:
    g = load_cfg_graph(cfg)
    graph = local_explore(identity_salvetti(g), depth, symmetric_only=symmetric)
    if dot_path:
        Path(dot_path).write_text(graph.to_dot(), encoding="utf-8")
        logger.info(f"💾 DOT written to {dot_path}")
    return graph.summary() + "\n"


def cmd_selftest(cfg: CliConfig) -> str:
    results = run_selftest(cfg.seed)
    text = "".join(r.line() + "\n" for r in results)
    if not all(r.passed for r in results):
        raise SelftestFailed(text)
    return text


# ============================================================================
# CLICK SURFACE
# ============================================================================

def _emit(cfg: CliConfig, text: str) -> None:
    if cfg.output_path:
        Path(cfg.output_path).write_text(text, encoding="utf-8")
    else:
        click.echo(text, nl=False)


@click.group()
@click.option("--graph", "graph_path", required=True, help="Graph file")
@click.option("--tail-bound", type=int, default=None, help="Longest class length in the norm tail")
@click.option("--budget", type=int, default=None, help="Clique search node limit")
@click.option("--seed", type=int, default=None, help="Seed for randomized checks")
@click.option("--out", "output_path", default=None, help="Write the report here instead of stdout")
@click.option("--log-json", is_flag=True, help="Structured JSON logs on stderr")
@click.pass_context
def cli(ctx, graph_path, tail_bound, budget, seed, output_path, log_json):
    """Symmetric automorphisms of right-angled Artin groups"""
    settings = get_settings()
    if log_json:
        settings = settings.model_copy(update={"log_json": True})
    configure_logging(settings)

    try:
        ctx.obj = CliConfig(
            graph_path=graph_path,
            command=ctx.invoked_subcommand or "",
            tail_bound=settings.tail_bound if tail_bound is None else tail_bound,
            search_budget=settings.search_budget if budget is None else budget,
            seed=settings.seed if seed is None else seed,
            output_path=output_path,
        )
    except ValueError as e:
        raise click.UsageError(str(e))


@cli.command("graph-info")
@click.pass_obj
def graph_info(cfg: CliConfig):
    _emit(cfg, cmd_graph_info(cfg))


@cli.command("partitions")
@click.argument("base")
@click.option("--symmetric", is_flag=True)
@click.pass_obj
def partitions(cfg: CliConfig, base: str, symmetric: bool):
    _emit(cfg, cmd_partitions(cfg, base, symmetric))


@cli.command("ranks")
@click.pass_obj
def ranks(cfg: CliConfig):
    _emit(cfg, cmd_ranks(cfg))


@cli.command("vcd")
@click.pass_obj
def vcd(cfg: CliConfig):
    _emit(cfg, cmd_vcd(cfg))


@cli.command("minimize")
@click.option("--auto", "auto_path", required=True, help="Automorphism file")
@click.option("--classes", "classes_path", required=True, help="Class-set file")
@click.pass_obj
def minimize_command(cfg: CliConfig, auto_path: str, classes_path: str):
    _emit(cfg, cmd_minimize(cfg, auto_path, classes_path))


@cli.command("explore")
@click.option("--depth", type=int, default=1, show_default=True)
@click.option("--symmetric", is_flag=True)
@click.option("--dot", "dot_path", default=None, help="Write the move graph as DOT")
@click.pass_obj
def explore(cfg: CliConfig, depth: int, symmetric: bool, dot_path: Optional[str]):
    _emit(cfg, cmd_explore(cfg, depth, symmetric, dot_path))


@cli.command("selftest")
@click.pass_obj
def selftest(cfg: CliConfig):
    _emit(cfg, cmd_selftest(cfg))


def main(argv: Optional[List[str]] = None) -> int:
    """Run the CLI and translate errors into exit codes"""
    try:
        cli.main(args=argv, prog_name="raag", standalone_mode=False)
        return 0
    except click.exceptions.Exit as e:
        return e.exit_code
    except click.Abort:
        return 1
    except click.ClickException as e:
        e.show()
        return 1
    except SelftestFailed as e:
        click.echo(str(e), nl=False)
        return e.exit_code
    except RaagError as e:
        click.echo(f"❌ {type(e).__name__}: {e}", err=True)
        return e.exit_code
    except OSError as e:
        click.echo(f"❌ {e}", err=True)
        return 1


if __name__ == "__main__":
    sys.exit(main())
