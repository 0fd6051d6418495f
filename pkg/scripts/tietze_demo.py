"""Walk a presentation through Tietze moves and show which invariants move.

Stabilization leaves H_1 and H_2 alone, a trivial relator adds a free summand
to H_2, and a transvection acts on eps(d2) by a column operation.

    python scripts/tietze_demo.py [FILE]
"""

import argparse

from aspherix.corpus import BUNDLED, load_presentation
from aspherix.fox import augmented_jacobian
from aspherix.homology import homology
from aspherix.words import add_trivial_relator, tietze_stabilize, tietze_transvect


def show(label, p):
    h = homology(p)
    print(f"{label:<28} {str(p):<40} H_1 = {h.h1}, b2 = {h.h2_rank}, eps(d2) = {augmented_jacobian(p).tolist()}")


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("file", nargs="?", default=str(BUNDLED / "torus.pres"))
    args = parser.parse_args()

    p = load_presentation(args.file)
    show("start", p)
    show("stabilize 1", tietze_stabilize(p, 1))
    q = add_trivial_relator(p, 1)
    show("add trivial relator", q)
    m = q.num_relators - 1
    w = q.word(q.generators[0])
    moved = tietze_transvect(q, m, 0, w, 1)
    show(f"r{m} <- r{m} (w r0 w^-1)", moved)
    show("undo transvection", tietze_transvect(moved, m, 0, w, -1))


if __name__ == "__main__":
    main()
