"""
radoforge CLI - extension axioms, finite Rado constructions and entropy orders.

Commands:
    generate     - Build a Rado construction or sample a random graph/structure/hypergraph
    check        - Check extension axioms on a file, or rebuild and check a certificate
    estimate     - Monte Carlo extension-axiom failure rates
    transduce    - Apply the parity transduction or a quantifier-free transduction
    classify     - Existence verdict for pseudorandom transductions
    synthesize   - Build an exactly uniform quantifier-free transduction
    distinguish  - Parameters and rates of the type-counting distinguisher
    runs         - List logged runs

Exit codes:
    0  success / property holds
    1  property violated (witness in the report)
    2  usage, precondition or parse error
    3  infeasible parameters, budget exceeded or tries exhausted
"""

import argparse
import sys
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Optional

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from core.config_manager import ConfigManager
from core.errors import (
    BudgetExceededError,
    ConstructionError,
    ExhaustedTriesError,
    InfeasibleParametersError,
    OrderViolationError,
    RadoforgeError,
)
from core.logger import ExecutionLogger, RunAnalyzer
from core.models import EAReport, RadoforgeConfig, RunReport, Signature
from core.prng import Prng
from entropy import (
    apply_qf_transduction,
    build_statistical_transduction,
    check_uniformity,
    classify,
    estimate_distinguishing_advantage,
    eval_type_realization,
    find_distinguisher_c,
    geq_lex,
    geq_surj,
    type_count_bound,
)
from extension_axioms import check_ea_graph, check_ea_hypergraph, check_ea_structure, estimate_ea_failure
from parity import apply_parity_transduction
from parsers import load_certificate, load_transduction, save_certificate, save_transduction
from parsers import load as load_object
from parsers import save as save_object
from rado import rado_graph, rado_structure, rebuild_from_certificate
from structures import (
    Graph,
    Hypergraph,
    RelStructure,
    graph_from_structure,
    sample_random_graph,
    sample_random_hypergraph,
    sample_random_structure,
    structure_from_graph,
)

EXIT_OK = 0
EXIT_VIOLATED = 1
EXIT_USAGE = 2
EXIT_INFEASIBLE = 3

REPORT_SKIP = {"command", "what", "format", "log_dir", "config", "seed", "threads"}


@dataclass
class CommandContext:
    config: RadoforgeConfig
    budget: int
    seed: int
    threads: int


def _fmt_set(items) -> str:
    return "{" + ",".join(str(x) for x in items) + "}"


def _signature(text: str) -> Signature:
    return Signature.parse_inline(text)


def _write_object(value, path: Optional[str]):
    if path:
        save_object(value, Path(path))


def _check_ea(value, k: int, budget: int) -> EAReport:
    if isinstance(value, Graph):
        return check_ea_graph(value, k, budget)
    if isinstance(value, Hypergraph):
        return check_ea_hypergraph(value, k, budget)
    return check_ea_structure(value, k, budget)


def _ea_metrics(report: EAReport) -> Dict[str, Any]:
    metrics: Dict[str, Any] = {"ea_k": report.k, "ea_holds": report.holds, "ea_work": report.work}
    violation = report.violation
    if violation is None:
        return metrics
    if hasattr(violation, "S"):
        metrics["witness_S"] = _fmt_set(violation.S)
        if violation.T and isinstance(violation.T[0], tuple):
            metrics["witness_T"] = _fmt_set(_fmt_set(e) for e in violation.T)
        else:
            metrics["witness_T"] = _fmt_set(violation.T)
    else:
        metrics["witness_elements"] = "(" + ",".join(str(x) for x in violation.elements) + ")"
        metrics["witness_type"] = ";".join(
            f"{rel}:{','.join(str(i) for i in idx)}" for rel, idx in violation.atomic_type.sorted_entries()
        )
    return metrics


def _object_metrics(value) -> Dict[str, Any]:
    if isinstance(value, Graph):
        return {"n": value.n, "edges": value.edge_count()}
    if isinstance(value, Hypergraph):
        return {"n": value.n, "t": value.t, "edges": value.edge_count()}
    metrics: Dict[str, Any] = {"n": value.n}
    for name, count in value.tuple_counts().items():
        metrics[f"tuples.{name}"] = count
    return metrics


def cmd_generate(args, ctx: CommandContext) -> RunReport:
    """Build or sample an object and optionally check EA_k on it."""
    rng = Prng(ctx.seed)
    metrics: Dict[str, Any] = {}
    if args.what in ("rado-graph", "rado-structure"):
        if args.k is None:
            raise argparse.ArgumentTypeError("--k is required for Rado constructions")
        common = dict(
            rng=rng,
            batch_size=ctx.config.batch_size,
            max_tries=ctx.config.max_tries,
            verify=args.verify_k is None,
            budget=ctx.budget,
        )
        if args.what == "rado-graph":
            value, cert = rado_graph(
                args.n, args.k, backend=args.backend or ctx.config.universal_backend, **common
            )
            metrics["universal_size"] = cert.universal.size
        else:
            if not args.sig:
                raise argparse.ArgumentTypeError("--sig is required for rado-structure")
            value, cert = rado_structure(
                _signature(args.sig), args.n, args.k,
                backend=args.backend or ctx.config.phf_backend, **common,
            )
            metrics["hash_family_size"] = cert.hash_family.size
            metrics["closure_size"] = len(cert.closure_index)
        metrics["parts"] = cert.tournament.m
        metrics["range_size"] = cert.range_size
        if args.certificate:
            save_certificate(cert, Path(args.certificate))
    elif args.what == "random-graph":
        value = sample_random_graph(args.n, rng)
    elif args.what == "random-hypergraph":
        if args.t is None:
            raise argparse.ArgumentTypeError("--t is required for random-hypergraph")
        value = sample_random_hypergraph(args.n, args.t, rng)
    else:
        if not args.sig:
            raise argparse.ArgumentTypeError("--sig is required for random-structure")
        value = sample_random_structure(_signature(args.sig), args.n, rng)

    _write_object(value, args.output)
    metrics.update(_object_metrics(value))
    exit_code = EXIT_OK
    if args.verify_k is not None:
        report = _check_ea(value, args.verify_k, ctx.budget)
        metrics.update(_ea_metrics(report))
        exit_code = EXIT_OK if report.holds else EXIT_VIOLATED
    return RunReport(
        command=f"generate {args.what}",
        seed=ctx.seed,
        outcome="generated" if exit_code == EXIT_OK else "generated; ea violated",
        metrics=metrics,
        exit_code=exit_code,
    )


def cmd_check(args, ctx: CommandContext) -> RunReport:
    """Exhaustive EA_k check of a file, or rebuild-and-check of a certificate."""
    metrics: Dict[str, Any] = {}
    if args.what == "cert":
        cert = load_certificate(Path(args.input))
        value = rebuild_from_certificate(cert)
        _write_object(value, args.output)
        k = args.k if args.k is not None else cert.k
        metrics["certificate_kind"] = cert.kind
    else:
        if args.k is None:
            raise argparse.ArgumentTypeError("--k is required for check ea")
        value = load_object(Path(args.input))
        k = args.k
    metrics.update(_object_metrics(value))
    report = _check_ea(value, k, ctx.budget)
    metrics.update(_ea_metrics(report))
    return RunReport(
        command=f"check {args.what}",
        outcome="holds" if report.holds else "violated",
        metrics=metrics,
        exit_code=EXIT_OK if report.holds else EXIT_VIOLATED,
    )


def cmd_estimate(args, ctx: CommandContext) -> RunReport:
    """Monte Carlo failure rate of EA_k on uniform samples."""
    params: Dict[str, Any] = {"n": args.n}
    if args.kind == "hypergraph":
        if args.t is None:
            raise argparse.ArgumentTypeError("--t is required for --kind hypergraph")
        params["t"] = args.t
    elif args.kind == "structure":
        params["sig"] = _signature(args.sig) if args.sig else None
    estimate = estimate_ea_failure(
        args.kind, params, args.k, args.trials, Prng(ctx.seed),
        threads=ctx.threads, confidence=args.confidence or ctx.config.confidence, budget=ctx.budget,
    )
    return RunReport(
        command="estimate ea-failure",
        seed=ctx.seed,
        outcome=f"{estimate.failures}/{estimate.trials} failed",
        metrics=estimate.as_metrics(),
    )


def cmd_transduce(args, ctx: CommandContext) -> RunReport:
    """Apply the parity transduction to a graph or a QF transduction to a structure."""
    source = load_object(Path(args.input))
    if args.what == "parity":
        if args.t is None:
            raise argparse.ArgumentTypeError("--t is required for transduce parity")
        graph = source if isinstance(source, Graph) else graph_from_structure(source)
        value = apply_parity_transduction(graph, args.t, ctx.budget, ctx.threads)
    else:
        if not args.transduction_file:
            raise argparse.ArgumentTypeError("--transduction-file is required for transduce qf")
        theta = load_transduction(Path(args.transduction_file))
        structure = structure_from_graph(source) if isinstance(source, Graph) else source
        if not isinstance(structure, RelStructure):
            raise argparse.ArgumentTypeError("transduce qf needs a graph or structure input")
        value = apply_qf_transduction(theta, structure)
    _write_object(value, args.output)
    metrics = _object_metrics(value)
    exit_code = EXIT_OK
    if args.verify_k is not None:
        report = _check_ea(value, args.verify_k, ctx.budget)
        metrics.update(_ea_metrics(report))
        exit_code = EXIT_OK if report.holds else EXIT_VIOLATED
    return RunReport(
        command=f"transduce {args.what}",
        outcome="transduced",
        metrics=metrics,
        exit_code=exit_code,
    )


def cmd_classify(args, ctx: CommandContext) -> RunReport:
    """Table lookup of the existence verdict."""
    sigma, tau = _signature(args.sig_from), _signature(args.sig_to)
    result = classify(args.gen, args.adv, sigma, tau)
    holds, violating = geq_surj(sigma, tau)
    return RunReport(
        command="classify",
        outcome=result.verdict.value,
        metrics={
            "verdict": result.verdict.value,
            "reason": result.reason,
            "geq_lex": geq_lex(sigma, tau),
            "geq_surj": holds,
            "violating_k": violating if violating is not None else "-",
        },
    )


def cmd_synthesize(args, ctx: CommandContext) -> RunReport:
    """Synthesize the first-fit routing transduction and optionally check exact uniformity."""
    sigma, tau = _signature(args.sig_from), _signature(args.sig_to)
    try:
        theta = build_statistical_transduction(sigma, tau)
    except OrderViolationError as e:
        return RunReport(
            command="synthesize stat-transduction",
            outcome="order violated",
            metrics={"violating_k": e.violating_k, "error": str(e)},
            exit_code=EXIT_VIOLATED,
        )
    if args.output:
        save_transduction(theta, Path(args.output))
    metrics: Dict[str, Any] = {"formulas": len(theta.formulas)}
    for name, formula in zip(tau.names, theta.formulas):
        metrics[f"formula.{name}"] = str(formula)
    exit_code = EXIT_OK
    if args.check_uniform is not None:
        uniformity = check_uniformity(theta, args.check_uniform)
        metrics.update({f"uniform.{k}": v for k, v in uniformity.as_metrics().items()})
        exit_code = EXIT_OK if uniformity.exactly_uniform else EXIT_VIOLATED
    return RunReport(
        command="synthesize stat-transduction",
        outcome="synthesized",
        metrics=metrics,
        exit_code=exit_code,
    )


def cmd_distinguish(args, ctx: CommandContext) -> RunReport:
    """Pick (k, c) for the type-counting sentence and optionally measure it."""
    sigma, tau = _signature(args.sig_from), _signature(args.sig_to)
    holds, violating = geq_surj(sigma, tau)
    k = args.k if args.k is not None else violating
    if k is None:
        return RunReport(
            command="distinguish typecount",
            outcome="no violating k: sigma dominates tau in the surjective order",
            metrics={"geq_surj": holds},
        )
    c = args.c if args.c is not None else find_distinguisher_c(sigma, tau, k)
    metrics: Dict[str, Any] = {
        "k": k,
        "c": c,
        "sigma_type_exponent": type_count_bound(sigma, c, k),
        "tau_type_exponent": type_count_bound(tau, c, k),
    }
    seed = None
    if args.n is not None:
        seed = ctx.seed
        rng = Prng(ctx.seed)
        if args.transduction_file:
            theta = load_transduction(Path(args.transduction_file))
            estimate = estimate_distinguishing_advantage(
                theta, c, k, args.n, args.trials, rng, ctx.threads, ctx.budget
            )
            metrics.update(estimate.as_metrics())
        else:
            hits = sum(
                1 for i in range(args.trials)
                if eval_type_realization(sample_random_structure(tau, args.n, rng.child(i)), c, k, ctx.budget)[0]
            )
            metrics.update({"n": args.n, "trials": args.trials, "random_realized": hits})
    return RunReport(
        command="distinguish typecount",
        seed=seed,
        outcome=f"distinguisher at k={k}, c={c}",
        metrics=metrics,
    )


def cmd_runs(args, ctx: CommandContext) -> RunReport:
    """List logged runs, newest first."""
    log_dir = args.log_dir or ctx.config.log_dir
    if not log_dir:
        raise argparse.ArgumentTypeError("--log-dir is required (or set log_dir in radoforge.yaml)")
    runs = RunAnalyzer(Path(log_dir)).list_runs()
    metrics: Dict[str, Any] = {}
    for run in runs:
        metrics[f"run.{run['run_id']}"] = f"{run['timestamp']} {' '.join(run['commands'])} errors={run['errors']}"
    return RunReport(command="runs", outcome=f"{len(runs)} runs", metrics=metrics)


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--seed', type=int, help='Seed for randomized steps (default: config default_seed)')
    common.add_argument('--threads', type=int, help='Worker threads for parallel-safe loops')
    common.add_argument('--format', choices=['text', 'json'], default='text', help='Report format')
    common.add_argument('--log-dir', help='Append a JSONL log entry to this directory')
    common.add_argument('--config', default='.', help='Directory holding radoforge.yaml')
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='radoforge',
        description='Extension axioms, finite Rado constructions and entropy orders'
    )
    common = _common_flags()
    subparsers = parser.add_subparsers(dest='command', help='Command')

    # generate
    generate_parser = subparsers.add_parser('generate', help='Build or sample an object')
    generate_sub = generate_parser.add_subparsers(dest='what', required=True)
    for what in ('rado-graph', 'rado-structure', 'random-graph', 'random-structure', 'random-hypergraph'):
        p = generate_sub.add_parser(what, parents=[common])
        p.add_argument('--n', type=int, required=True, help='Universe size')
        p.add_argument('--k', type=int, help='Extension size (Rado constructions)')
        p.add_argument('--t', type=int, help='Edge arity (random-hypergraph)')
        p.add_argument('--sig', help="Signature as 'name arity; name arity'")
        p.add_argument('--backend', choices=['greedy', 'randomized'], help='Universal set / hash family backend')
        p.add_argument('--certificate', help='Write the construction certificate here')
        p.add_argument('--verify-k', type=int, help='Check EA_k on the result')
        p.add_argument('-o', '--output', help='Output file')

    # check
    check_parser = subparsers.add_parser('check', help='Check extension axioms')
    check_sub = check_parser.add_subparsers(dest='what', required=True)
    for what in ('ea', 'cert'):
        p = check_sub.add_parser(what, parents=[common])
        p.add_argument('--input', '-i', required=True, help='Object or certificate file')
        p.add_argument('--k', type=int, help='Extension size (cert: defaults to the certificate k)')
        p.add_argument('-o', '--output', help='Write the rebuilt object (cert)')

    # estimate
    estimate_parser = subparsers.add_parser('estimate', help='Monte Carlo estimates')
    estimate_sub = estimate_parser.add_subparsers(dest='what', required=True)
    p = estimate_sub.add_parser('ea-failure', parents=[common])
    p.add_argument('--kind', choices=['graph', 'hypergraph', 'structure'], required=True)
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--k', type=int, required=True)
    p.add_argument('--t', type=int, help='Edge arity (hypergraph)')
    p.add_argument('--sig', help='Signature (structure)')
    p.add_argument('--trials', type=int, default=100)
    p.add_argument('--confidence', type=float, help='Wilson interval confidence')

    # transduce
    transduce_parser = subparsers.add_parser('transduce', help='Apply a transduction')
    transduce_sub = transduce_parser.add_subparsers(dest='what', required=True)
    for what in ('parity', 'qf'):
        p = transduce_sub.add_parser(what, parents=[common])
        p.add_argument('--input', '-i', required=True)
        p.add_argument('--t', type=int, help='Hyperedge arity (parity)')
        p.add_argument('--transduction-file', help='TRANSDUCTION file (qf)')
        p.add_argument('--verify-k', type=int, help='Check EA_k on the result')
        p.add_argument('-o', '--output', help='Output file')

    # classify
    p = subparsers.add_parser('classify', parents=[common], help='Existence verdict')
    p.add_argument('--gen', choices=['FO', 'LFP', 'LFPparity'], required=True, help='Generator logic')
    p.add_argument('--adv', choices=['FO', 'LFP', 'LFPparity'], required=True, help='Adversary logic')
    p.add_argument('--sig-from', required=True)
    p.add_argument('--sig-to', required=True)

    # synthesize
    synthesize_parser = subparsers.add_parser('synthesize', help='Synthesize a transduction')
    synthesize_sub = synthesize_parser.add_subparsers(dest='what', required=True)
    p = synthesize_sub.add_parser('stat-transduction', parents=[common])
    p.add_argument('--from', dest='sig_from', required=True)
    p.add_argument('--to', dest='sig_to', required=True)
    p.add_argument('--check-uniform', type=int, metavar='N', help='Exhaustively check uniformity at n=N')
    p.add_argument('-o', '--output', help='Write the TRANSDUCTION file')

    # distinguish
    distinguish_parser = subparsers.add_parser('distinguish', help='Type-counting distinguisher')
    distinguish_sub = distinguish_parser.add_subparsers(dest='what', required=True)
    p = distinguish_sub.add_parser('typecount', parents=[common])
    p.add_argument('--sig-from', required=True)
    p.add_argument('--sig-to', required=True)
    p.add_argument('--k', type=int, help='Violating k (default: least)')
    p.add_argument('--c', type=int, help='Tuple length (default: least distinguishing)')
    p.add_argument('--n', type=int, help='Universe size for empirical rates')
    p.add_argument('--trials', type=int, default=100)
    p.add_argument('--transduction-file', help='Measure advantage against this transduction')

    # runs
    subparsers.add_parser('runs', parents=[common], help='List logged runs')
    return parser


def _context(args) -> CommandContext:
    config = ConfigManager.load(Path(args.config))
    return CommandContext(
        config=config,
        budget=ConfigManager.effective_budget(config),
        seed=args.seed if args.seed is not None else config.default_seed,
        threads=args.threads or config.threads,
    )


def _dispatch(args, ctx: CommandContext) -> RunReport:
    if args.command == 'generate':
        return cmd_generate(args, ctx)
    elif args.command == 'check':
        return cmd_check(args, ctx)
    elif args.command == 'estimate':
        return cmd_estimate(args, ctx)
    elif args.command == 'transduce':
        return cmd_transduce(args, ctx)
    elif args.command == 'classify':
        return cmd_classify(args, ctx)
    elif args.command == 'synthesize':
        return cmd_synthesize(args, ctx)
    elif args.command == 'distinguish':
        return cmd_distinguish(args, ctx)
    return cmd_runs(args, ctx)


def _failure(command: str, exit_code: int, error: Exception) -> RunReport:
    metrics: Dict[str, Any] = {"error": str(error)}
    if isinstance(error, InfeasibleParametersError) and error.minimal_n is not None:
        metrics["minimal_feasible_n"] = error.minimal_n
    if isinstance(error, BudgetExceededError):
        metrics["required_work"] = error.required
        metrics["budget"] = error.budget
    outcome = {EXIT_VIOLATED: "failed", EXIT_USAGE: "usage error", EXIT_INFEASIBLE: "infeasible"}[exit_code]
    return RunReport(command=command, outcome=outcome, metrics=metrics, exit_code=exit_code)


def run(argv=None) -> int:
    """Parse argv, run one command, print its report and return the exit code."""
    parser = build_parser()
    args = parser.parse_args(argv)
    if not args.command:
        parser.print_help()
        return EXIT_USAGE

    command = f"{args.command} {getattr(args, 'what', '')}".strip()
    started = time.perf_counter()
    ctx = None
    try:
        ctx = _context(args)
        report = _dispatch(args, ctx)
    except (InfeasibleParametersError, BudgetExceededError, ExhaustedTriesError) as e:
        report = _failure(command, EXIT_INFEASIBLE, e)
    except ConstructionError as e:
        report = _failure(command, EXIT_VIOLATED, e)
    except (RadoforgeError, ValueError, argparse.ArgumentTypeError, FileNotFoundError) as e:
        report = _failure(command, EXIT_USAGE, e)
    if report.exit_code != EXIT_OK and "error" in report.metrics:
        print(f"✗ {report.metrics['error']}", file=sys.stderr)

    report.parameters = {
        k: v for k, v in sorted(vars(args).items()) if k not in REPORT_SKIP and v is not None
    }
    report.wall_time_s = time.perf_counter() - started
    print(report.to_json() if args.format == 'json' else report.to_text(), end="")

    log_dir = args.log_dir or (ctx.config.log_dir if ctx else None)
    if log_dir:
        with ExecutionLogger(Path(log_dir)) as logger:
            logger.log(
                command=report.command,
                operation=args.command,
                parameters=report.parameters,
                metrics={**report.metrics, "duration_ms": round(report.wall_time_s * 1000, 3)},
                error=report.metrics.get("error") if report.exit_code != EXIT_OK else None,
                seed=report.seed,
            )
    return report.exit_code


def main():
    sys.exit(run())


if __name__ == '__main__':
    main()
