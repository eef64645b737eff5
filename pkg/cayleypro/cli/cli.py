"""Implements the cayleypro command: batch classification, synthesis, generation, completion and export of graphs"""

import os
import sys
import logging
import argparse
from dataclasses import dataclass, field

import numpy as np
from tqdm.auto import tqdm

from ..src import (Graph, MarkedSubgraph, MagmaTable, Labeling, RewritingSystem, Certificate, property_report,
                   classify, verify_certificate, cayley_graph, path_operation, chain_operation,
                   extended_chain_operation, edge_operation, left_quasigroup_completion, quasigroup_completion,
                   suffix_ball, ball_property_report, BudgetExceededError)
from ..src.const import DEFAULT_ISOMORPHISM_BUDGET, DEFAULT_SEARCH_BUDGET, DEFAULT_BALL_CAP
from ..src.utils import read_text, write_text, dump_json, parse_marks, sort_llex


logger = logging.getLogger(__name__)

COMMANDS = ("classify", "synthesize", "generate", "complete", "ball", "export-dot", "verify", "properties")
FORMATS = ("text", "json")
BUDGET_ENV = "CAYLEY_BUDGET"

EXIT_OK, EXIT_NEGATIVE, EXIT_UNDECIDED, EXIT_INPUT_ERROR = 0, 1, 2, 3


@dataclass
class RunConfig:
    """Parameters of a single cayleypro invocation.

    `options` holds command-specific arguments such as `kind`, `at`, `table`, `subset`, `labels`, `mode`, `rules`,
    `start`, `radius`, `cert`, `cert_dir` and `report`.

    Raises
    ------
    ValueError
        If the command or the format is unknown or a budget is not positive.
    """
    command: str
    inputs: list = field(default_factory=list)
    output: str = None
    format: str = "text"
    iso_budget: int = DEFAULT_ISOMORPHISM_BUDGET
    search_budget: int = DEFAULT_SEARCH_BUDGET
    ball_cap: int = DEFAULT_BALL_CAP
    seed: int = 0
    bar: bool = False
    options: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"Unknown command {self.command}, available options are {', '.join(COMMANDS)}")
        if self.format not in FORMATS:
            raise ValueError(f"Unknown format {self.format}, available options are {', '.join(FORMATS)}")
        for name in ("iso_budget", "search_budget", "ball_cap"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)}")

    @classmethod
    def from_args(cls, args, environ=None):
        """Build a config from parsed arguments. Budgets not given explicitly default to `CAYLEY_BUDGET` if it is
        set in `environ`."""
        environ = os.environ if environ is None else environ
        override = environ.get(BUDGET_ENV)
        if override is not None:
            try:
                override = int(override)
            except ValueError as error:
                raise ValueError(f"{BUDGET_ENV} must be an integer, got {override!r}") from error

        def budget(value, default):
            if value is not None:
                return value
            return override if override is not None else default

        common = {"command", "inputs", "output", "format", "iso_budget", "search_budget", "ball_cap", "seed", "bar",
                  "verbose"}
        options = {key: value for key, value in vars(args).items() if key not in common}
        return cls(command=args.command, inputs=list(args.inputs), output=args.output, format=args.format,
                   iso_budget=budget(args.iso_budget, DEFAULT_ISOMORPHISM_BUDGET),
                   search_budget=budget(args.search_budget, DEFAULT_SEARCH_BUDGET),
                   ball_cap=budget(args.ball_cap, DEFAULT_BALL_CAP), seed=args.seed, bar=args.bar, options=options)

    def single_input(self):
        """Return the only input path of the command."""
        if len(self.inputs) != 1:
            raise ValueError(f"{self.command} expects exactly one input file, got {len(self.inputs)}")
        return self.inputs[0]


def _emit(config, text):
    if config.output is not None:
        write_text(config.output, text)
    else:
        sys.stdout.write(text)


def _stem(path):
    return os.path.splitext(os.path.basename(path))[0]


#------------------------------------------------------------------------#
#                                Commands                                #
#------------------------------------------------------------------------#

def _classify(config):
    cert_dir = config.options.get("cert_dir")
    documents = {}
    statuses = []
    for path in tqdm(config.inputs, desc="Classify", disable=not config.bar):
        graph = Graph.from_file(path)
        report = classify(graph, iso_budget=config.iso_budget, search_budget=config.search_budget)
        certificate_paths = {}
        if cert_dir is not None:
            for name in report.positive_classes():
                certificate_path = os.path.join(cert_dir, f"{_stem(path)}.{name}.json")
                report.certificate(name).dump(certificate_path)
                certificate_paths[name] = certificate_path
        documents[path] = report.to_dict(certificate_paths) if config.format == "json" else str(report)
        statuses.append(report.exit_status())
        logger.info("Classified %s: %s", path, ", ".join(report.positive_classes()) or "no class")

    if config.format == "json":
        document = documents[config.inputs[0]] if len(config.inputs) == 1 else documents
        _emit(config, dump_json(document))
    else:
        texts = [text if len(config.inputs) == 1 else f"== {path} ==\n{text}" for path, text in documents.items()]
        _emit(config, "\n\n".join(texts) + "\n")

    if EXIT_OK in statuses:
        return EXIT_OK
    return EXIT_UNDECIDED if EXIT_UNDECIDED in statuses else EXIT_NEGATIVE


def _synthesize(config):
    graph = Graph.from_file(config.single_input())
    kind = config.options["kind"]
    at = config.options.get("at")
    if kind != "extended-chain" and at is None:
        raise ValueError(f"--at is required for the {kind} operation")
    if kind == "path":
        operation = path_operation(graph, at, budget=config.iso_budget)
    elif kind == "chain":
        operation = chain_operation(graph, at, budget=config.iso_budget)
    elif kind == "edge":
        operation = edge_operation(graph, at)
    else:
        operation = extended_chain_operation(graph, budget=config.iso_budget)

    if config.format == "json":
        _emit(config, dump_json(operation.to_dict()))
    else:
        _emit(config, str(operation) + "\n")
    return EXIT_OK


def _generate(config):
    table = MagmaTable.from_file(config.options["table"])
    labels = config.options.get("labels")
    subset = config.options.get("subset")
    random_subset = config.options.get("random_subset")
    if labels is not None:
        labeling = Labeling.from_text(labels)
    elif subset is not None:
        labeling = Labeling.identity([element.strip() for element in subset.split(",")])
    elif random_subset is not None:
        if not 0 < random_subset <= len(table):
            raise ValueError(f"Random subset size must be in [1, {len(table)}], got {random_subset}")
        rng = np.random.default_rng(config.seed)
        chosen = rng.choice(len(table), size=random_subset, replace=False)
        labeling = Labeling.identity(sort_llex(table.carrier[i] for i in chosen))
    else:
        labeling = None
    _emit(config, cayley_graph(table, labeling).to_text())
    return EXIT_OK


def _complete(config):
    graph = Graph.from_file(config.single_input())
    if config.options["mode"] == "left-quasigroup":
        root = config.options.get("at") or graph.vertices[0]
        completion = left_quasigroup_completion(graph, root)
    else:
        completion = quasigroup_completion(graph)
    _emit(config, completion.to_text())
    return EXIT_OK


def _ball(config):
    rws = RewritingSystem.from_file(config.options["rules"])
    ball = suffix_ball(rws, config.options["start"], config.options["radius"], cap=config.ball_cap)
    _emit(config, ball.to_text())
    if config.options.get("report") and not ball.is_empty:
        sys.stderr.write("Advisory property report of a truncated ball:\n" + str(ball_property_report(ball)) + "\n")
    return EXIT_OK


def _export_dot(config):
    path = config.single_input()
    text = read_text(path)
    if parse_marks(text):
        _emit(config, MarkedSubgraph.from_text(text).to_dot(name=_stem(path)))
    else:
        _emit(config, Graph.from_text(text).to_dot(name=_stem(path)))
    return EXIT_OK


def _verify(config):
    graph = Graph.from_file(config.single_input())
    certificate = Certificate.from_file(config.options["cert"])
    verified = verify_certificate(graph, certificate)
    if config.format == "json":
        _emit(config, dump_json({"targetClass": certificate.target_class, "verified": verified}))
    else:
        _emit(config, f"{certificate.target_class}: {'verified' if verified else 'rejected'}\n")
    return EXIT_OK if verified else EXIT_NEGATIVE


def _properties(config):
    report = property_report(Graph.from_file(config.single_input()))
    _emit(config, dump_json(report.to_dict()) if config.format == "json" else str(report) + "\n")
    return EXIT_OK


HANDLERS = {
    "classify": _classify,
    "synthesize": _synthesize,
    "generate": _generate,
    "complete": _complete,
    "ball": _ball,
    "export-dot": _export_dot,
    "verify": _verify,
    "properties": _properties,
}


def run(config):
    """Execute a command and return its exit code.

    Exit codes are 0 for success or a positive verdict, 1 for a negative verdict, 2 when a search exhausted its
    budget and 3 for an input error, reported by a single diagnostic line.
    """
    try:
        return HANDLERS[config.command](config)
    except BudgetExceededError as error:
        logger.error("%s", error)
        return EXIT_UNDECIDED
    except (ValueError, KeyError, OSError) as error:
        logger.error("%s", error)
        return EXIT_INPUT_ERROR


#------------------------------------------------------------------------#
#                             Argument parsing                           #
#------------------------------------------------------------------------#

def build_parser():
    """Create the argument parser of the cayleypro command."""
    parser = argparse.ArgumentParser(prog="cayleypro",
                                     description="Classify finite labeled graphs against Cayley graph classes.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", "-o", default=None, help="Write the result to this file instead of stdout")
    common.add_argument("--format", choices=FORMATS, default="text", help="Output format (default: text)")
    common.add_argument("--iso-budget", type=int, default=None,
                        help=f"Isomorphism search node budget (default: {DEFAULT_ISOMORPHISM_BUDGET})")
    common.add_argument("--search-budget", type=int, default=None,
                        help=f"Root completion search budget (default: {DEFAULT_SEARCH_BUDGET})")
    common.add_argument("--ball-cap", type=int, default=None,
                        help=f"Maximal number of words in a ball (default: {DEFAULT_BALL_CAP})")
    common.add_argument("--seed", type=int, default=0, help="Seed of randomized choices (default: 0)")
    common.add_argument("--bar", action="store_true", help="Show progress bars")
    common.add_argument("--verbose", "-v", action="store_true", help="Enable debug logging")
    subparsers = parser.add_subparsers(dest="command", required=True)

    classify_parser = subparsers.add_parser("classify", parents=[common], help="Classify graph files")
    classify_parser.add_argument("inputs", nargs="+", help="Graph files")
    classify_parser.add_argument("--cert-dir", default=None, help="Directory to save certificates of positive classes")

    synthesize_parser = subparsers.add_parser("synthesize", parents=[common], help="Synthesize an operation")
    synthesize_parser.add_argument("inputs", nargs=1, help="Graph file")
    synthesize_parser.add_argument("--kind", choices=("path", "chain", "extended-chain", "edge"), required=True)
    synthesize_parser.add_argument("--at", default=None, help="Root vertex, unused by extended-chain")

    generate_parser = subparsers.add_parser("generate", parents=[common], help="Generate a Cayley graph of a table")
    generate_parser.set_defaults(inputs=[])
    generate_parser.add_argument("--table", required=True, help="Magma table file")
    generate_parser.add_argument("--subset", default=None, help="Comma-separated generator subset")
    generate_parser.add_argument("--labels", default=None, help="Generator labeling q=a,...")
    generate_parser.add_argument("--random-subset", type=int, default=None,
                                 help="Size of a generator subset drawn with --seed")

    complete_parser = subparsers.add_parser("complete", parents=[common], help="Complete a graph")
    complete_parser.add_argument("inputs", nargs=1, help="Graph file")
    complete_parser.add_argument("--mode", choices=("left-quasigroup", "quasigroup"), required=True)
    complete_parser.add_argument("--at", default=None, help="Root of the left-quasigroup completion")

    ball_parser = subparsers.add_parser("ball", parents=[common], help="Cut a ball out of a suffix graph")
    ball_parser.set_defaults(inputs=[])
    ball_parser.add_argument("--rules", required=True, help="Rewriting system file")
    ball_parser.add_argument("--start", required=True, help="Center word, '_' for the empty word")
    ball_parser.add_argument("--radius", type=int, required=True)
    ball_parser.add_argument("--report", action="store_true", help="Print an advisory property report to stderr")

    dot_parser = subparsers.add_parser("export-dot", parents=[common], help="Export a graph or a ball to DOT")
    dot_parser.add_argument("inputs", nargs=1, help="Graph file")

    verify_parser = subparsers.add_parser("verify", parents=[common], help="Verify a certificate")
    verify_parser.add_argument("inputs", nargs=1, help="Graph file")
    verify_parser.add_argument("--cert", required=True, help="Certificate file")

    properties_parser = subparsers.add_parser("properties", parents=[common], help="Print structural predicates")
    properties_parser.add_argument("inputs", nargs=1, help="Graph file")
    return parser


def main(argv=None):
    """Entry point of the cayleypro command."""
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="cayleypro: %(levelname)s: %(message)s", stream=sys.stderr)
    try:
        config = RunConfig.from_args(args)
    except ValueError as error:
        logger.error("%s", error)
        return EXIT_INPUT_ERROR
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
