"""Link-prediction experiment: embeddings vs. the Jaccard baseline.

Trains VCNE embeddings on the core graph of a link split and compares a
logistic-regression classifier on hadamard pair features against tuned
Jaccard similarity, over several seeds.

Usage:
    python scripts/run_link_prediction.py --edges graph.txt
    python scripts/run_link_prediction.py --sbm 2x500 --p-in 0.05 --p-out 0.005
"""
import argparse
import sys

import numpy as np

sys.path.insert(0, "src")
import vcne


def parse_args():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--edges", help="undirected edge-list file")
    p.add_argument("--sbm", default="2x500",
                   help="generate an SBM instead: BLOCKSxSIZE (default 2x500)")
    p.add_argument("--p-in", type=float, default=0.05)
    p.add_argument("--p-out", type=float, default=0.005)
    p.add_argument("--holdout", type=float, default=0.01)
    p.add_argument("--dim", type=int, default=32)
    p.add_argument("--iters", type=int, default=100)
    p.add_argument("--lr", type=float, default=0.5)
    p.add_argument("--neg-ratio", type=float, default=1.0)
    p.add_argument("--seeds", default="0,1,2")
    return p.parse_args()


def main():
    args = parse_args()
    if args.edges:
        base = vcne.load_edge_list(args.edges)
    else:
        blocks, size = map(int, args.sbm.split("x"))
        base, _ = vcne.sbm_graph([size] * blocks, args.p_in, args.p_out, seed=0)
    print(f"graph: {base.num_vertices} vertices, {len(base.src) // 2} undirected edges")

    emb_f1, jac_f1 = [], []
    for seed in map(int, args.seeds.split(",")):
        ds = vcne.make_link_dataset(base, args.holdout, seed=seed)
        cfg = vcne.TrainConfig(dim=args.dim, iterations=args.iters,
                               learning_rate=args.lr,
                               negative_ratio=args.neg_ratio, seed=seed)
        emb, _ = vcne.train(ds.core_graph, cfg)
        m = vcne.evaluate_link_prediction(ds, emb, vcne.ClassifierSpec(seed=seed))
        j = vcne.jaccard_predict(ds.core_graph, ds)
        emb_f1.append(m.f1)
        jac_f1.append(j.f1)
        print(f"seed {seed}: embedding {m.line()}   jaccard {j.line()}")
    print(f"mean F1: embedding {np.mean(emb_f1):.3f}, jaccard {np.mean(jac_f1):.3f}")


if __name__ == "__main__":
    main()
