"""Command-line driver binding the library into reproducible pipelines.

Every subcommand accepts `--config FILE` (`key = value` lines, `#`
comments) whose entries act as defaults overridden by explicit flags, and
echoes its fully-resolved configuration to stderr plus a sidecar file, so
any run can be replayed from the sidecar alone.

Exit codes: 0 success, 1 runtime/data error, 2 flag misuse.
"""

import argparse
import os
import statistics
import sys
import time

import numpy as np

from . import evaluation, sbm, trainer
from .classifiers import ClassifierSpec
from .graph import load_edge_list, partition_edges, save_edge_list, union
from .sampling import SamplerConfig, sample_negative_graph


def _load_config_file(path):
    values = {}
    with open(path) as f:
        for lineno, line in enumerate(f, start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected `key = value`")
            key, value = line.split("=", 1)
            values[key.strip().replace("-", "_")] = value.strip()
    return values


def _coerce(action, raw):
    if isinstance(action.const, bool) or action.nargs == 0:
        return raw.lower() in ("1", "true", "yes", "on")
    return action.type(raw) if action.type else raw


def _apply_config_defaults(subparser, config_path):
    values = _load_config_file(config_path)
    for action in subparser._actions:
        if action.dest in values:
            subparser.set_defaults(**{action.dest: _coerce(action, values[action.dest])})
            action.required = False


def _echo_config(args, default_dir="."):
    resolved = {k: v for k, v in sorted(vars(args).items())
                if k not in ("func", "config", "sidecar") and v is not None}
    lines = [f"{k} = {v}" for k, v in resolved.items()]
    sys.stderr.write("# resolved config\n" + "\n".join(lines) + "\n")
    sidecar = args.sidecar
    if sidecar is None:
        base = default_dir
        for attr in ("out", "report", "out_dir", "splits_dir", "embeddings", "edges"):
            value = getattr(args, attr, None)
            if value:
                base = value
                break
        directory = base if os.path.isdir(base) else (os.path.dirname(base) or ".")
        sidecar = os.path.join(directory, f"{args.command}.config")
    with open(sidecar, "w") as f:
        f.write("\n".join(lines) + "\n")


def _add_common(p):
    p.add_argument("--config", help="key=value config file; flags override it")
    p.add_argument("--sidecar", help="where to write the resolved config")
    p.add_argument("--seed", type=int, default=0)


def build_parser():
    parser = argparse.ArgumentParser(prog="vcne", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    parsers = {}

    p = parsers["train"] = sub.add_parser("train", help="learn embeddings from an edge list")
    p.add_argument("--edges", required=True)
    p.add_argument("--dim", type=int, default=100)
    p.add_argument("--lr", type=float, default=0.1)
    p.add_argument("--iters", type=int, default=10)
    p.add_argument("--neg-ratio", type=float, default=1.0)
    p.add_argument("--partitions", type=int, default=1)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--mode", choices=trainer.MODES, default="vcne")
    p.add_argument("--directed", action="store_true",
                   help="treat input edges as directed (default: undirected)")
    p.add_argument("--out", required=True)
    p.add_argument("--out-bin", help="also write the binary embedding format")
    p.add_argument("--report", help="write per-iteration objective/timing records")
    p.set_defaults(func=cmd_train)

    p = parsers["link-split"] = sub.add_parser("link-split", help="build a link-prediction holdout")
    p.add_argument("--edges", required=True)
    p.add_argument("--holdout", type=float, default=0.01)
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=cmd_link_split)

    p = parsers["eval-link"] = sub.add_parser("eval-link", help="classify held-out pairs from embeddings")
    p.add_argument("--embeddings", required=True)
    p.add_argument("--splits-dir", required=True)
    p.add_argument("--classifier", choices=("logreg", "mlp"), default="logreg")
    p.add_argument("--feature", choices=evaluation.FEATURE_MODES, default="hadamard")
    p.add_argument("--hidden-units", type=int, default=500)
    p.add_argument("--epochs", type=int, default=300)
    p.add_argument("--clf-lr", type=float, default=0.5)
    p.add_argument("--tune-threshold", action="store_true",
                   help="tune the decision threshold on validation instead of 0.5")
    p.set_defaults(func=cmd_eval_link)

    p = parsers["jaccard"] = sub.add_parser("jaccard", help="Jaccard-index link-prediction baseline")
    p.add_argument("--edges", required=True, help="core-graph edge list")
    p.add_argument("--splits-dir", required=True)
    p.set_defaults(func=cmd_jaccard)

    p = parsers["classify"] = sub.add_parser("classify", help="vertex classification with embeddings")
    p.add_argument("--embeddings", required=True)
    p.add_argument("--features", required=True)
    p.add_argument("--labels", required=True)
    p.add_argument("--splits", required=True)
    p.add_argument("--classifier", choices=("logreg", "mlp"), default="logreg")
    p.add_argument("--epochs", type=int, default=300)
    p.add_argument("--clf-lr", type=float, default=0.5)
    p.set_defaults(func=cmd_classify)

    p = parsers["bench"] = sub.add_parser("bench", help="sweep one knob and time iterations")
    p.add_argument("--edges", required=True)
    p.add_argument("--sweep", choices=("threads", "dim", "neg-ratio"), required=True)
    p.add_argument("--values", required=True, help="comma-separated sweep values")
    p.add_argument("--dim", type=int, default=100)
    p.add_argument("--lr", type=float, default=0.1)
    p.add_argument("--neg-ratio", type=float, default=1.0)
    p.add_argument("--partitions", type=int, default=4)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--timed-iters", type=int, default=3)
    p.set_defaults(func=cmd_bench)

    p = parsers["gen-sbm"] = sub.add_parser("gen-sbm", help="generate a stochastic block model graph")
    p.add_argument("--blocks", type=int, required=True)
    p.add_argument("--block-size", type=int, required=True)
    p.add_argument("--p-in", type=float, required=True)
    p.add_argument("--p-out", type=float, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--labels-out")
    p.set_defaults(func=cmd_gen_sbm)

    for p in parsers.values():
        _add_common(p)
    return parser, parsers


def _train_config(args):
    return trainer.TrainConfig(
        dim=args.dim, learning_rate=args.lr, iterations=args.iters,
        negative_ratio=args.neg_ratio, seed=args.seed,
        partitions=args.partitions, threads=args.threads, mode=args.mode)


def cmd_train(args):
    g = load_edge_list(args.edges, undirected=not args.directed)
    emb, report = trainer.train(g, _train_config(args))
    trainer.save_embeddings_text(emb, g.remap, args.out)
    if args.out_bin:
        trainer.save_embeddings_binary(emb, g.remap, args.out_bin)
    if args.report:
        report.save(args.report)
    return 0


def cmd_link_split(args):
    g = load_edge_list(args.edges, undirected=True)
    ds = evaluation.make_link_dataset(g, args.holdout, args.seed)
    os.makedirs(args.out_dir, exist_ok=True)
    save_edge_list(ds.core_graph, os.path.join(args.out_dir, "core_edges.txt"))
    for name in evaluation.SPLITS:
        pairs, labels = ds.splits[name]
        evaluation.save_split(pairs, labels, g.remap, os.path.join(args.out_dir, f"{name}.txt"))
    return 0


def _load_embedding_index(path):
    emb, ext_ids = trainer.load_embeddings_text(path)
    return emb, {int(e): i for i, e in enumerate(ext_ids)}


def _load_splits(splits_dir, id_map):
    splits = {}
    for name in evaluation.SPLITS:
        pairs, labels = evaluation.load_split(os.path.join(splits_dir, f"{name}.txt"))
        try:
            mapped = np.array([[id_map[int(a)], id_map[int(b)]] for a, b in pairs],
                              dtype=np.int64).reshape(-1, 2)
        except KeyError as exc:
            raise ValueError(f"vertex id {exc.args[0]} in {name} split has no embedding") from None
        splits[name] = (mapped, labels)
    return splits


def cmd_eval_link(args):
    emb, id_map = _load_embedding_index(args.embeddings)
    splits = _load_splits(args.splits_dir, id_map)
    ds = evaluation.LinkDataset(core_graph=None, splits=splits)
    spec = ClassifierSpec(kind=args.classifier, hidden_units=args.hidden_units,
                          epochs=args.epochs, learning_rate=args.clf_lr, seed=args.seed)
    metrics = evaluation.evaluate_link_prediction(
        ds, emb, spec, mode=args.feature, tune_on_validation=args.tune_threshold)
    print(metrics.line())
    return 0


def cmd_jaccard(args):
    g = load_edge_list(args.edges, undirected=True)
    id_map = {int(e): i for i, e in enumerate(g.remap.to_external)}
    splits = {}
    for name in evaluation.SPLITS:
        pairs, labels = evaluation.load_split(os.path.join(args.splits_dir, f"{name}.txt"))
        if len(pairs) == 0:
            raise ValueError(f"empty {name} split")
        # vertices that lost all their edges to the holdout have no
        # neighbors in the core graph; give them an isolated dense id
        mapped = []
        for a, b in pairs:
            if int(a) not in id_map or int(b) not in id_map:
                mapped.append((-1, -1))
            else:
                mapped.append((id_map[int(a)], id_map[int(b)]))
        splits[name] = (np.array(mapped, dtype=np.int64), labels)
    scores = {}
    for name, (pairs, labels) in splits.items():
        scores[name] = np.array([
            0.0 if a < 0 else evaluation.jaccard_score(g, a, b) for a, b in pairs])
    t = evaluation.tune_threshold(scores["validation"], splits["validation"][1])
    metrics = evaluation.confusion_metrics(splits["test"][1], scores["test"] >= t, t)
    print(metrics.line())
    return 0


def _load_vertex_table(path):
    ids, rows = [], []
    with open(path) as f:
        for line in f:
            parts = line.split()
            if not parts:
                continue
            ids.append(int(parts[0]))
            rows.append([float(x) for x in parts[1:]])
    return np.array(ids, dtype=np.int64), np.array(rows)


def cmd_classify(args):
    emb, emb_ids = trainer.load_embeddings_text(args.embeddings)
    feat_ids, features = _load_vertex_table(args.features)
    label_ids, labels = _load_vertex_table(args.labels)
    if not np.array_equal(feat_ids, label_ids):
        raise ValueError("feature and label files list different vertices")
    order = {int(e): i for i, e in enumerate(feat_ids)}
    # align embeddings to the feature row order
    if emb.size:
        emb_index = {int(e): i for i, e in enumerate(emb_ids)}
        try:
            emb = emb[[emb_index[int(v)] for v in feat_ids]]
        except KeyError as exc:
            raise ValueError(f"vertex id {exc.args[0]} has no embedding") from None
    splits = {"train": [], "validation": [], "test": []}
    with open(args.splits) as f:
        for line in f:
            parts = line.split()
            if not parts:
                continue
            splits[parts[1]].append(order[int(parts[0])])
    splits = {k: np.array(v, dtype=np.int64) for k, v in splits.items()}
    labels = labels.astype(np.int64)
    if labels.shape[1] == 1:
        labels = labels[:, 0]
    spec = ClassifierSpec(kind=args.classifier, epochs=args.epochs,
                          learning_rate=args.clf_lr, seed=args.seed)
    baseline, combined = evaluation.classify_vertices(emb, features, labels, splits, spec)
    print(baseline.line())
    print(combined.line())
    return 0


def cmd_bench(args):
    g = load_edge_list(args.edges, undirected=True)
    values = args.values.split(",")
    for raw in values:
        dim, ratio, threads = args.dim, args.neg_ratio, args.threads
        if args.sweep == "dim":
            dim = int(raw)
        elif args.sweep == "neg-ratio":
            ratio = float(raw)
        else:
            threads = int(raw)
        cfg = trainer.TrainConfig(
            dim=dim, learning_rate=args.lr, iterations=1 + args.timed_iters,
            negative_ratio=ratio, seed=args.seed, partitions=args.partitions,
            threads=threads, track_objective=False)
        _, report = trainer.train(g, cfg)
        timed = report.records[1:]  # first iteration is warmup
        mean_ms = statistics.mean(
            r.t_sample_ms + r.t_union_ms + r.t_step_ms + r.t_norm_ms for r in timed)
        print(f"{raw}\t{mean_ms:.3f}")
    return 0


def cmd_gen_sbm(args):
    g, labels = sbm.sbm_graph([args.block_size] * args.blocks, args.p_in, args.p_out, args.seed)
    save_edge_list(g, args.out)
    if args.labels_out:
        with open(args.labels_out, "w") as f:
            for v, lab in enumerate(labels):
                f.write(f"{v} {lab}\n")
    return 0


def _peek_flag(argv, flag):
    for i, arg in enumerate(argv):
        if arg == flag and i + 1 < len(argv):
            return argv[i + 1]
        if arg.startswith(flag + "="):
            return arg.split("=", 1)[1]
    return None


def main(argv=None):
    if argv is None:
        argv = sys.argv[1:]
    parser, parsers = build_parser()
    # config defaults must be installed before parsing, or required flags
    # satisfied by the config file would fail the parse
    config_path = _peek_flag(argv, "--config")
    if config_path and argv and argv[0] in parsers:
        try:
            _apply_config_defaults(parsers[argv[0]], config_path)
        except (OSError, ValueError) as exc:
            sys.stderr.write(f"error: {exc}\n")
            return 1
    args = parser.parse_args(argv)
    try:
        _echo_config(args)
        return args.func(args)
    except Exception as exc:  # library errors -> exit 1, tracebackless
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
