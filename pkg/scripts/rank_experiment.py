"""Compare t-rank and eps-rank on random conjugates of 0/1 projections.

Any disagreement is printed as a counterexample candidate.  The rational
idempotent (1 + g)/2 over Q[Z/2] is appended as a known disagreement.

    python scripts/rank_experiment.py [--count N] [--seed S]
"""

import argparse
import json
import random
from fractions import Fraction

from aspherix.group_ring import AbelianModel, FreeModel, GroupRingElement, GroupRingMatrix
from aspherix.trace_rank import compare_batch
from aspherix.words import Word


def elementary(model, n, i, j, w):
    one, zero = GroupRingElement.one(model), GroupRingElement.zero(model)
    return GroupRingMatrix(model, [[one if r == c else (w if (r, c) == (i, j) else zero) for c in range(n)]
                                   for r in range(n)])


def random_projection(rng, model, n, steps):
    one, zero = GroupRingElement.one(model), GroupRingElement.zero(model)
    P = GroupRingMatrix.diagonal(model, [rng.choice((one, zero)) for _ in range(n)])
    for _ in range(steps if n > 1 else 0):
        i, j = rng.sample(range(n), 2)
        letters = tuple((rng.randrange(model.rank), 1) for _ in range(rng.randint(0, 2)))
        w = GroupRingElement.from_word(model, Word(letters))
        P = elementary(model, n, i, j, w) @ P @ elementary(model, n, i, j, -w)
    return P


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--count", type=int, default=40)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    models = [FreeModel(2), AbelianModel((0, 0)), AbelianModel((0, 3))]
    batch = []
    for k in range(args.count):
        model = models[k % len(models)]
        batch.append((f"conj{k}", random_projection(rng, model, rng.randint(1, 3), rng.randint(0, 3))))
    z2 = AbelianModel((2,))
    half = Fraction(1, 2)
    batch.append(("half_sum_Z2", GroupRingMatrix(z2, [[GroupRingElement(z2, {(0,): half, (1,): half})]])))

    result = compare_batch(batch)
    for e in result["entries"]:
        if not e.get("agree", True):
            print(json.dumps(e["counterexample"], sort_keys=True))
    print(f"compared {result['count']}, invalid {result['invalid']}, disagreements {result['disagreements']}")


if __name__ == "__main__":
    main()
