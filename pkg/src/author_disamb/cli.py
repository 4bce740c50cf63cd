"""Command-line interface.

Every subcommand reads signatures and publications as JSON lines. Settings
come from an optional ``key=value`` file (``--config``) and are overridden
by flags. On failure a single ``error: <category>: <message>`` line is
printed to stderr and the exit status is 1.
"""

import argparse
import json
import logging
import sys
import time

from .blocking import STRATEGY_ALIASES, assign_blocks, write_blocks
from .core import DisambiguationError, load_claims, load_dataset, write_clustering
from .evaluation import format_report, report_row
from .features import train_ethnicity_model
from .pipeline import PipelineConfig, crossval, evaluate, run
from .textnorm import DEFAULT_AFFIXES, load_affixes

logger = logging.getLogger("author_disamb")

BLOCKING_CHOICES = ("sfi", "soundex", "nysiis", "dmetaphone")
CLASSIFIER_CHOICES = {"rf": "random_forest", "gbrt": "gbrt", "logreg": "logistic_regression"}
SAMPLING_CHOICES = {"uniform": "uniform_nonblocked", "blocked": "uniform_blocked",
                    "balanced": "balanced_blocked"}
CUT_CHOICES = {"none": "no_cut", "global": "global_cut", "block": "block_cut"}

# config-file key -> PipelineConfig field
CONFIG_KEYS = {
    "blocking": "blocking", "normalize": "normalize", "classifier": "classifier",
    "sampling": "sampling", "pairs": "n_pairs", "linkage": "linkage", "cut": "cut",
    "objective": "objective", "seed": "seed", "threads": "threads", "blocks": "blocks",
    "affixes": "affixes", "ethnicity-model": "ethnicity_model",
}


def _value(text):
    try:
        return json.loads(text)
    except ValueError:
        return text


def _bool(text):
    if text.lower() in ("1", "true", "yes", "on"):
        return True
    if text.lower() in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def _config_value(key, raw):
    if key == "normalize":
        return _bool(raw)
    if key in ("n_pairs", "seed", "threads"):
        return int(raw)
    if key == "blocks":
        return tuple(k for k in raw.split(",") if k)
    if key == "blocking":
        return STRATEGY_ALIASES.get(raw, raw)
    if key == "classifier":
        return CLASSIFIER_CHOICES.get(raw, raw)
    if key == "sampling":
        return SAMPLING_CHOICES.get(raw, raw)
    if key == "cut":
        return CUT_CHOICES.get(raw, raw)
    return raw


def read_config_file(path):
    """Parse ``key=value`` lines; ``#`` starts a comment. Keys ``param.NAME``
    set classifier hyperparameters."""
    settings, hyper = {}, {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value")
            key, raw = (part.strip() for part in line.split("=", 1))
            if key.startswith("param."):
                hyper[key[len("param."):]] = _value(raw)
            elif key in CONFIG_KEYS:
                field = CONFIG_KEYS[key]
                settings[field] = _config_value(field, raw)
            else:
                raise ValueError(f"{path}:{lineno}: unknown setting {key!r}")
    return settings, hyper


def build_config(args):
    settings, hyper = ({}, {}) if args.config is None else read_config_file(args.config)
    flag_values = {
        "blocking": args.blocking, "classifier": args.classifier, "sampling": args.sampling,
        "n_pairs": args.pairs, "linkage": args.linkage, "cut": args.cut,
        "objective": args.objective, "seed": args.seed, "threads": args.threads,
        "blocks": args.blocks, "affixes": args.affixes,
        "ethnicity_model": args.ethnicity_model,
    }
    for field, raw in flag_values.items():
        if raw is not None:
            settings[field] = _config_value(field, raw) if isinstance(raw, str) else raw
    if args.no_normalize:
        settings["normalize"] = False
    for item in args.param or ():
        if "=" not in item:
            raise ValueError(f"--param expects NAME=VALUE, got {item!r}")
        name, raw = item.split("=", 1)
        hyper[name] = _value(raw)
    settings["hyperparameters"] = hyper
    return PipelineConfig(**settings)


def _add_data_args(p, claims_required):
    p.add_argument("--signatures", required=True, help="signatures, JSON lines")
    p.add_argument("--publications", required=True, help="publications, JSON lines")
    p.add_argument("--claims", required=claims_required,
                   help="claimed signatures, JSON lines of signature_id/author_id")


def _add_pipeline_args(p):
    p.add_argument("--config", help="key=value settings file")
    p.add_argument("--blocking", choices=BLOCKING_CHOICES)
    p.add_argument("--no-normalize", action="store_true", help="skip name normalization")
    p.add_argument("--classifier", choices=tuple(CLASSIFIER_CHOICES))
    p.add_argument("--sampling", choices=tuple(SAMPLING_CHOICES))
    p.add_argument("--pairs", type=int, metavar="N", help="number of training pairs")
    p.add_argument("--linkage", choices=("single", "complete", "average"))
    p.add_argument("--cut", choices=tuple(CUT_CHOICES))
    p.add_argument("--objective", choices=("b3f", "pairwisef"))
    p.add_argument("--seed", type=int, metavar="N")
    p.add_argument("--threads", type=int, metavar="N")
    p.add_argument("--blocks", metavar="KEY[,KEY...]", help="only disambiguate these blocks")
    p.add_argument("--affixes", metavar="FILE", help="name affixes to strip, one per line")
    p.add_argument("--ethnicity-model", metavar="FILE")
    p.add_argument("--param", action="append", metavar="NAME=VALUE",
                   help="classifier hyperparameter (repeatable)")


def make_parser():
    parser = argparse.ArgumentParser(prog="author-disamb",
                                     description="Semi-supervised author disambiguation.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="block, train, cluster and score")
    _add_data_args(p, claims_required=True)
    _add_pipeline_args(p)
    p.add_argument("--truth", help="reference clustering (claims format) to score against")
    p.add_argument("--model-out", metavar="FILE")
    p.add_argument("--clustering-out", metavar="FILE")
    p.add_argument("--report-out", metavar="FILE", help="score report (default: stdout)")
    p.add_argument("--curves-out", metavar="FILE",
                   help="objective value at every global threshold")

    p = sub.add_parser("crossval", help="cross-validated scores on claimed signatures")
    _add_data_args(p, claims_required=True)
    _add_pipeline_args(p)
    p.add_argument("--folds", type=int, default=3)
    p.add_argument("--train-fraction", type=float, default=0.13)
    p.add_argument("--report-out", metavar="FILE")

    p = sub.add_parser("block", help="write the block assignment only")
    _add_data_args(p, claims_required=False)
    p.add_argument("--blocking", choices=BLOCKING_CHOICES, default="sfi")
    p.add_argument("--no-normalize", action="store_true")
    p.add_argument("--affixes", metavar="FILE")
    p.add_argument("--output", metavar="FILE", help="signature_id<TAB>block (default: stdout)")

    p = sub.add_parser("train-ethnicity", help="fit the name ethnicity classifier")
    p.add_argument("--names", required=True, help="delimited file with name and group columns")
    p.add_argument("--output", required=True)
    p.add_argument("--alpha", type=float, default=1e-4)
    p.add_argument("--epochs", type=int, default=30)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("rfe", help="recursive feature elimination")
    _add_data_args(p, claims_required=True)
    _add_pipeline_args(p)
    p.add_argument("--output", metavar="FILE")
    return parser


def _write(text, path):
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def cmd_run(args):
    config = build_config(args)
    dataset = load_dataset(args.signatures, args.publications)
    claims = load_claims(args.claims)
    start = time.perf_counter()
    result = run(dataset, claims, config)
    logger.info("disambiguated %d signatures in %.1fs", len(result.clustering),
                time.perf_counter() - start)
    rows = [report_row("train", *evaluate(claims, result.clustering))]
    if args.truth:
        truth = load_claims(args.truth)
        test_ids = [s for s in truth if s in result.clustering and s not in claims]
        rows.append(report_row("test", *evaluate(truth, result.clustering, test_ids)))
    if args.model_out:
        result.model.save(args.model_out)
    if args.clustering_out:
        write_clustering(result.clustering, args.clustering_out)
    if args.curves_out:
        scoped = {s: a for s, a in claims.items() if s in result.clustering}
        curve = result.result.curve(scoped)
        lines = ["threshold\tb3_f\tpairwise_f"]
        lines += [f"{t:.10g}\t{b:.6f}\t{p:.6f}"
                  for t, b, p in zip(curve.thresholds, curve.b3[:, 2], curve.pairwise[:, 2])]
        _write("\n".join(lines) + "\n", args.curves_out)
    _write(format_report(rows), args.report_out)


def cmd_crossval(args):
    config = build_config(args)
    dataset = load_dataset(args.signatures, args.publications)
    claims = load_claims(args.claims)
    rows = crossval(dataset, claims, config, n_folds=args.folds,
                    train_fraction=args.train_fraction)
    _write(format_report(rows), args.report_out)


def cmd_block(args):
    dataset = load_dataset(args.signatures, args.publications)
    affixes = DEFAULT_AFFIXES if args.affixes is None else load_affixes(args.affixes)
    assignment = assign_blocks(dataset, args.blocking, not args.no_normalize, affixes)
    if args.output is None:
        for sid in sorted(assignment):
            sys.stdout.write(f"{sid}\t{assignment[sid]}\n")
    else:
        write_blocks(assignment, args.output)
    logger.info("%d signatures in %d blocks", len(assignment), len(set(assignment.values())))


def cmd_train_ethnicity(args):
    model = train_ethnicity_model(args.names, alpha=args.alpha, n_epochs=args.epochs,
                                  seed=args.seed)
    model.save(args.output)


def cmd_rfe(args):
    from .evaluation import rfe_ranking

    config = build_config(args)
    dataset = load_dataset(args.signatures, args.publications)
    claims = load_claims(args.claims)
    ranking = rfe_ranking(dataset, claims, config, config.load_ethnicity_model())
    lines = ["step\teliminated\tb3_f"]
    lines += [f"{k}\t{name}\t{f:.6f}" for k, (name, f) in enumerate(ranking, 1)]
    _write("\n".join(lines) + "\n", args.output)


COMMANDS = {"run": cmd_run, "crossval": cmd_crossval, "block": cmd_block,
            "train-ethnicity": cmd_train_ethnicity, "rfe": cmd_rfe}


def error_category(exc):
    if isinstance(exc, DisambiguationError):
        return exc.category
    if isinstance(exc, (FileNotFoundError, PermissionError, IsADirectoryError)):
        return "io-error"
    if isinstance(exc, KeyError):
        return "missing-id"
    if isinstance(exc, (ValueError, TypeError)):
        return "invalid-input"
    return "internal-error"


def main(argv=None):
    args = make_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        COMMANDS[args.command](args)
    except Exception as exc:  # one machine-readable line, whatever went wrong
        message = str(exc.args[0]) if isinstance(exc, KeyError) and exc.args else str(exc)
        print(f"error: {error_category(exc)}: {' '.join(message.split())}", file=sys.stderr)
        if args.verbose:
            raise
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
