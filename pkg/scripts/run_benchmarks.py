"""Training-cost sweeps on a synthetic ~100k-edge SBM graph.

Runs the bench subcommand for thread, dimension, and negative-ratio sweeps
and prints one value/mean-ms table per sweep.

Usage:
    python scripts/run_benchmarks.py [--out-dir bench_out]
"""
import argparse
import pathlib
import sys

sys.path.insert(0, "src")
from vcne.cli import main as cli


def run(argv):
    print("$ vcne " + " ".join(argv), file=sys.stderr)
    code = cli(argv)
    if code != 0:
        sys.exit(code)


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--out-dir", default="bench_out")
    p.add_argument("--timed-iters", type=int, default=3)
    args = p.parse_args()
    out = pathlib.Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    edges = out / "sbm_100k.txt"
    run(["gen-sbm", "--blocks", "2", "--block-size", "1000", "--p-in", "0.08",
         "--p-out", "0.02", "--seed", "0", "--out", str(edges)])

    common = ["bench", "--edges", str(edges), "--dim", "64",
              "--timed-iters", str(args.timed_iters)]
    for sweep, values in [("threads", "1,2,4,8"),
                          ("dim", "10,50,100,200"),
                          ("neg-ratio", "1,2,5")]:
        print(f"\n# sweep: {sweep}")
        run(common + ["--sweep", sweep, "--values", values])


if __name__ == "__main__":
    main()
