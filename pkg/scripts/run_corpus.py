"""Analyze every presentation in a directory and print a verdict table.

    python scripts/run_corpus.py [DIR] [--assert-cd2] [--fuzz N] [--seed S]
"""

import argparse
import json

from aspherix.corpus import BUNDLED, run_corpus


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("directory", nargs="?", default=str(BUNDLED))
    parser.add_argument("--assert-cd2", action="store_true")
    parser.add_argument("--fuzz", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    result = run_corpus(args.directory, args.assert_cd2, args.seed, args.fuzz)
    print(f"{'file':<20} {'H_1':<12} {'b2':>3} {'sigma':>6}  verdict")
    for e in result["entries"]:
        r = e["report"]
        sigma = "-" if r["sigma_rank"] is None else r["sigma_rank"]
        print(f"{e['name']:<20} {r['homology']['h1']['text']:<12} {r['homology']['h2_rank']:>3} {sigma:>6}  {r['verdict']}")
    for e in result["errors"]:
        print(f"{e['name']:<20} ERROR {e['error']}")
    print(json.dumps(result["summary"], sort_keys=True))


if __name__ == "__main__":
    main()
