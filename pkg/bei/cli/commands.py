"""
Command-line surface

Every command writes JSON (or a table for ``verify``) to stdout. Errors are
reported as {"success": false, "error": ...} on stderr with the exit code
carried by the exception: 1 verification failure, 2 bad input, 3 cap.
"""

import functools
import json
import logging
import sys

import click

from ..calculations.cm_block import MODES, best_witness, is_block_graph, is_chordal, is_cm_block_graph, block_count
from ..calculations.groebner import MonomialIdeal, enumerate_admissible_paths, initial_ideal, max_induced_matching
from ..config import Config
from ..errors import BeiError, FamilyError, IdealError, VerificationFailed
from ..graphs.families import ChainSpec, StarParams, star_product, validate_setup, whiskered_chain, whiskered_star
from ..graphs.graph_core import Graph
from ..integrations.buchberger import DEFAULT_ORACLE_CHAR, buchberger_oracle
from ..services.regularity import METHODS, RegularityService
from ..services.verification import SUITES, VerificationService, safe_run, summarize

logger = logging.getLogger(__name__)


def _emit(payload) -> None:
    click.echo(json.dumps(payload))


def handle_errors(fn):
    """Turn toolkit errors into the JSON error envelope and an exit code."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except BeiError as e:
            click.echo(json.dumps({"success": False, "error": str(e)}), err=True)
            sys.exit(e.exit_code)

    return wrapper


def _read_graph(stream) -> Graph:
    return Graph.parse(stream.read())


# ============================================================================
# GROUP
# ============================================================================


@click.group()
@click.option("--threads", type=int, default=None, help="Worker processes (default: BEI_THREADS or CPU count).")
@click.option("--log-level", default=None, help="Logging level (default: BEI_LOG_LEVEL or WARNING).")
@click.pass_context
@handle_errors
def cli(ctx, threads, log_level):
    """Regularity of binomial edge ideals."""
    config = Config.from_env(threads)
    level = (log_level or config.log_level).upper()
    logging.basicConfig(format="%(name)s:%(levelname)s:%(message)s", level=level)
    logging.getLogger("bei").setLevel(level)
    ctx.obj = config


# ============================================================================
# GRAPH CONSTRUCTION
# ============================================================================


@cli.group()
def gen():
    """Build a member of one of the graph families."""


@gen.command("star")
@click.option("--m", "m", type=int, required=True)
@click.option("--n", "n", type=int, required=True)
@click.option("--r", "r", type=int, required=True)
@click.option("--labeling", type=click.Choice(["original", "groebner"]), default="original")
@click.option("--bare", is_flag=True, help="Omit the whiskers.")
@handle_errors
def gen_star(m, n, r, labeling, bare):
    """Whiskered K_m ⋆_r K_n."""
    p = StarParams(m, n, r, labeling)
    G = star_product(p) if bare else whiskered_star(p)
    _emit(G.to_dict())


@gen.command("chain")
@click.option("--spec", "spec_file", type=click.File("r"), required=True, help="ChainSpec JSON file ('-' for stdin).")
@click.option("--validate", is_flag=True, help="Also report violated setup conditions on stderr.")
@handle_errors
def gen_chain(spec_file, validate):
    """Whiskered chain of cycles from a ChainSpec."""
    try:
        spec = ChainSpec.from_dict(json.load(spec_file))
    except json.JSONDecodeError as e:
        raise FamilyError(f"invalid chain spec JSON: {e}") from None
    if validate:
        click.echo(json.dumps({"violations": validate_setup(spec)}), err=True)
    _emit(whiskered_chain(spec).to_dict())


# ============================================================================
# COMPUTATION
# ============================================================================


@cli.command()
@click.argument("graph_file", type=click.File("r"), default="-")
@click.option("--char", "field_char", type=int, default=None, help="Field characteristic (default: BEI_FIELD_CHAR).")
@click.option("--method", type=click.Choice(METHODS), default="auto")
@click.option("--heuristic", is_flag=True, help="Non-certifying Hochster scan over generator unions.")
@click.pass_obj
@handle_errors
def reg(config, graph_file, field_char, method, heuristic):
    """reg(S/J_G) of a graph given as JSON or an edge list."""
    G = _read_graph(graph_file)
    report = RegularityService(config).compute(G, method, field_char, certified=not heuristic)
    _emit(report.to_dict())


@cli.command()
@click.argument("graph_file", type=click.File("r"), default="-")
@click.option("--mode", type=click.Choice(list(MODES) + ["both"]), default="cut_vertex")
@click.pass_obj
@handle_errors
def breg(config, graph_file, mode):
    """The invariant b(G) with its best witness."""
    G = _read_graph(graph_file)
    modes = MODES if mode == "both" else (mode,)
    result = {}
    for name in modes:
        witness = best_witness(G, name, config.threads)
        result[name] = {"b": witness.block_count if witness else 0, "witness": witness.to_dict() if witness else None}
    _emit(result if mode == "both" else result[mode])


@cli.command()
@click.argument("graph_file", type=click.File("r"), default="-")
@click.option("--oracle", is_flag=True, help="Cross-check with Buchberger's algorithm (at most 6 vertices).")
@click.option("--paths", is_flag=True, help="Include the admissible paths.")
@handle_errors
def groebner(graph_file, oracle, paths):
    """Generators of in(J_G) from admissible paths."""
    G = _read_graph(graph_file)
    ideal = initial_ideal(G)
    result = ideal.to_dict()
    if paths:
        result["paths"] = [list(p.vertices) for p in enumerate_admissible_paths(G)]
    if oracle:
        result["oracle_agrees"] = buchberger_oracle(G, DEFAULT_ORACLE_CHAR) == ideal
    _emit(result)


@cli.command()
@click.argument("ideal_file", type=click.File("r"), default="-")
@handle_errors
def matching(ideal_file):
    """Maximum induced matching of an ideal (or of in(J_G) for a graph)."""
    try:
        data = json.load(ideal_file)
    except json.JSONDecodeError as e:
        raise IdealError(f"invalid JSON input: {e}") from None
    ideal = MonomialIdeal.from_dict(data) if "generators" in data else initial_ideal(Graph.from_dict(data))
    chosen, bound = max_induced_matching(ideal)
    _emit({"matching": [ideal.names(m) for m in chosen], "bound": bound})


@cli.command("cm-check")
@click.argument("graph_file", type=click.File("r"), default="-")
@handle_errors
def cm_check(graph_file):
    """Chordality, block graph and Cohen-Macaulay block graph tests."""
    G = _read_graph(graph_file)
    block = is_block_graph(G)
    _emit({
        "chordal": is_chordal(G),
        "block_graph": block,
        "cm_block_graph": is_cm_block_graph(G),
        "blocks": block_count(G) if block else None,
    })


# ============================================================================
# VERIFICATION
# ============================================================================


@cli.command()
@click.argument("suite", type=click.Choice(list(SUITES) + ["all"]))
@click.option("--full", is_flag=True, help="Release-scale instances (slow).")
@click.option("--json", "as_json", is_flag=True, help="Print rows as JSON instead of a table.")
@click.pass_obj
@handle_errors
def verify(config, suite, full, as_json):
    """Reproduce the regularity results on desk-scale instances."""
    rows = safe_run(VerificationService(config), suite, full)
    summary = summarize(rows)
    if as_json:
        _emit({**summary, "data": [row.to_dict() for row in rows]})
    else:
        click.echo(f"{'':2} {'check':<28} {'instance':<34} {'expected':>8} {'':>2} {'computed':>8} {'ms':>10}")
        for row in rows:
            if not row.ran:
                click.echo(
                    f"⏭️ {row.theorem:<28} {row.params:<34} {row.expected:>8} {'':>2} {'-':>8} not run: {row.formula}"
                )
                continue
            mark = "✅" if row.passed else "❌"
            click.echo(
                f"{mark} {row.theorem:<28} {row.params:<34} {row.expected:>8} {row.relation:>2} "
                f"{row.computed:>8} {row.elapsed_ms:>10.1f}"
            )
        ran = summary["total"] - summary["not_run"]
        click.echo(f"\n{ran - summary['failed']}/{ran} passed, {summary['not_run']} not run")
    if not summary["success"]:
        raise VerificationFailed(f"{summary['failed']} of {summary['total']} checks failed")
