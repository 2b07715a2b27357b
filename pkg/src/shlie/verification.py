"""Per-level verification runs shared by the CLI and the acceptance suite."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from itertools import combinations

from .category import hom_dimension, target_of
from .complexes import homology, verify_d_squared
from .filtration import (
    admissible_cuts,
    expected_graded_homology,
    graded_complex,
    graded_isomorphism,
    split_tuples_over,
    tuples,
    verify_leading_term,
)
from .leibniz import projective_complex
from .linalg import QQ
from .tor import t_dimensions


@dataclass
class Verdict:
    name: str
    ok: bool
    detail: str = ""
    payload: dict = dc_field(default_factory=dict)


def check_tuple(u, field=QQ):
    """Leading-term and graded-piece checks for every basis element over u.

    Returns (checked pairs, first failure or None, graded ok, iso ok, reason).
    """
    checked = 0
    failure = None
    for b in split_tuples_over(u):
        m = target_of(b)
        for i, j in combinations(range(m + 1), 2):
            v = verify_leading_term(b, i, j)
            checked += 1
            if not v and failure is None:
                failure = {"blocks": b, "i": i, "j": j, "message": v.message}
    gr = graded_complex(u)
    graded_ok = bool(verify_d_squared(gr)) and homology(gr, field) == expected_graded_homology(u)
    iso_ok, reason = graded_isomorphism(u)
    return checked, failure, graded_ok, iso_ok, reason


def _check_tuple_star(args):
    return args[0], check_tuple(*args)


def verify_level(n, field=QQ, workers=1):
    """Every check attached to P_n; returns a list of Verdicts."""
    out = []
    c = projective_complex(n)
    sq = verify_d_squared(c)
    out.append(Verdict("d_squared", bool(sq), "" if sq else "witness %s" % (sq.witness,)))
    h = homology(c, field)
    expected = [1] + [0] * n if n == 0 else [0] * (n + 1)
    out.append(Verdict("projective_homology", h == expected, ",".join(map(str, h)), {"homology": h}))
    t = t_dimensions(n, field)
    out.append(Verdict("t_presentation", t == [1] + [0] * n, ",".join(map(str, t))))

    us = tuples(n)
    if workers > 1 and len(us) > 1:
        with ProcessPoolExecutor(workers) as pool:
            results = dict(pool.map(_check_tuple_star, [(u, field) for u in us], chunksize=16))
    else:
        results = {u: check_tuple(u, field) for u in us}

    checked = sum(r[0] for r in results.values())
    failures = [(u, r[1]) for u, r in results.items() if r[1]]
    detail = "%d (b, i, j) triples" % checked
    payload = {}
    if failures:
        u, f = failures[0]
        detail += "; first failure at %s: %s" % (u, f["message"])
        payload = f
    out.append(Verdict("leading_terms", not failures, detail, payload))
    bad = [u for u, r in results.items() if not r[2]]
    out.append(Verdict("graded_homology", not bad, "%d tuples" % len(us) + ("; fails at %s" % (bad[0],) if bad else "")))
    bad = [(u, r[4]) for u, r in results.items() if not r[3]]
    out.append(Verdict("graded_isomorphism", not bad, "" if not bad else "%s: %s" % bad[0]))

    total = sum(2 ** len(admissible_cuts(u)) for u in us)
    homs = sum(hom_dimension(n, m) for m in range(n + 1))
    out.append(Verdict("partition_identity", total == homs, "%d = %d" % (total, homs)))
    return out
