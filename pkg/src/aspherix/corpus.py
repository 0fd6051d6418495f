"""Batch analysis over a directory of presentation files.

Each ``name.pres`` may have a sidecar ``name.E.json`` holding the splitting
idempotent.  Entries are processed in sorted path order.
"""

from __future__ import annotations

import json
import random
from collections import Counter
from pathlib import Path

from .fox import augmented_jacobian, fundamental_identity_check
from .group_ring import matrix_from_json
from .homology import asphericity_verdict, balanced_perfect_check, homology
from .trace_rank import NotIdempotentError, compare_ranks
from .words import Presentation, Word, free_reduce, parse_presentation, tietze_stabilize, tietze_transvect

BUNDLED = Path(__file__).with_name("corpus")


def load_presentation(path: str | Path) -> Presentation:
    return parse_presentation(Path(path).read_text(encoding="utf-8"))


def load_matrix(path: str | Path, model=None):
    return matrix_from_json(json.loads(Path(path).read_text(encoding="utf-8")), model)


def _random_word(rng: random.Random, gens: int, max_len: int) -> Word:
    if gens == 0:
        return Word()
    return free_reduce((rng.randrange(gens), rng.choice((1, -1))) for _ in range(rng.randint(0, max_len)))


def tietze_fuzz(p: Presentation, rng: random.Random, trials: int) -> list[str]:
    """Random stabilizations and transvections; returns a list of invariance failures."""
    failures = []
    base = homology(p)
    for _ in range(trials):
        q = tietze_stabilize(p, rng.randint(1, 2))
        h = homology(q)
        if (h.h1, h.h2_rank) != (base.h1, base.h2_rank):
            failures.append(f"stabilize changed homology: {q}")
        if q.num_relators >= 2:
            j, k = rng.sample(range(q.num_relators), 2)
            sign = rng.choice((1, -1))
            t = tietze_transvect(q, j, k, _random_word(rng, q.num_generators, 4), sign)
            before, after = augmented_jacobian(q), augmented_jacobian(t)
            expected = [list(r) for r in before.entries]
            for row in expected:
                row[j] += sign * row[k]
            if after.tolist() != expected:
                failures.append(f"transvection ({j},{k},{sign}) gave unexpected eps(d2) on {q}")
            if homology(t) != h:
                failures.append(f"transvection changed homology: {t}")
    return failures


def analyze_entry(path: Path, cd2_asserted: bool, rng: random.Random | None = None, fuzz: int = 0) -> dict:
    p = load_presentation(path)
    sidecar = path.with_name(path.stem + ".E.json")
    E = load_matrix(sidecar) if sidecar.exists() else None
    report = asphericity_verdict(p, E, cd2_asserted)
    entry = {
        "name": path.name,
        "idempotent_file": sidecar.name if E is not None else None,
        "fox_identity": fundamental_identity_check(p),
        "balanced_check": balanced_perfect_check(p).to_json(),
        "report": report.to_json(),
        "rank_comparison": None,
    }
    if E is not None:
        try:
            entry["rank_comparison"] = compare_ranks(E).to_json()
        except NotIdempotentError as exc:
            entry["rank_comparison"] = {"idempotent_valid": False, "error": str(exc)}
    if fuzz:
        entry["tietze_failures"] = tietze_fuzz(p, rng or random.Random(0), fuzz)
    return entry


def run_corpus(directory: str | Path = BUNDLED, cd2_asserted: bool = False, seed: int = 0, fuzz: int = 0) -> dict:
    directory = Path(directory)
    rng = random.Random(seed)
    entries, errors = [], []
    for path in sorted(directory.glob("*.pres")):
        try:
            entries.append(analyze_entry(path, cd2_asserted, rng, fuzz))
        except (OSError, ValueError, KeyError, TypeError) as exc:
            errors.append({"name": path.name, "error": f"{type(exc).__name__}: {exc}"})
    verdicts = Counter(e["report"]["verdict"] for e in entries)
    contradictions = sum(e["report"]["contradiction"] for e in entries)
    disagreements = sum(1 for e in entries if e["rank_comparison"] and e["rank_comparison"].get("agree") is False)
    fox_failures = sum(not e["fox_identity"] for e in entries)
    inconsistent = sum(not e["balanced_check"]["consistent"] for e in entries)
    tietze_failures = sum(len(e.get("tietze_failures", ())) for e in entries)
    return {
        "directory": str(directory),
        "entries": entries,
        "errors": errors,
        "summary": {
            "files": len(entries) + len(errors),
            "analyzed": len(entries),
            "errors": len(errors),
            "verdicts": dict(sorted(verdicts.items())),
            "contradictions": contradictions,
            "rank_disagreements": disagreements,
            "fox_identity_failures": fox_failures,
            "balanced_inconsistencies": inconsistent,
            "tietze_failures": tietze_failures,
        },
    }
