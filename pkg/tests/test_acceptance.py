"""Acceptance criteria, one test each.

Every criterion is an exact identity plus a wall-clock budget.  A line
``PASS``/``FAIL`` per criterion is printed in the pytest terminal summary, or
on stdout when this file is run as a script.
"""

import time

import pytest

from heappoly.hyper import clear_caches
from heappoly.suites import SUITES

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # run as a script
    ACCEPTANCE_LINES = []

CRITERIA = [
    ("k4-ledger", "K4 ledger: -3, 21 and 39 at t^-4 with their heap breakdowns", 1),
    ("rank2-oracle", "elementary-subgraph formula = determinant (34 classes + 200 random 6-vertex graphs)", 30),
    ("jacobi", "vertex quotients = closed walks, edge quotients = pyramid counts, d <= 8", 30),
    ("bijections", "|dp^e| = |W^e| = |c(D)|, |dp^u| = indeg(u)|c(D)| and round trips, <= 8 arcs", 120),
    ("best", "enumerated Eulerian circuits = tau * prod (indeg - 1)!, <= 8 arcs", 60),
    ("three-route", "harary_sachs = kocay = trivial_heaps on the test hosts", 300),
    ("single-edge", "single 3-edge host = Macaulay resultant; Delta = 0 at 15 and 18 edges", 120),
    ("kocay", "Kocay's lemma by raw-partition recount; 3+3+3 forces alpha = 6", 60),
    ("factorization", "cut-vertex factorisations of C and w_n, n = 3..6", 60),
    ("edge-vars", "zeroing an edge variable = deleting the edge", 60),
    ("root-series", "formal root = class sum = trivial-heap sum to order 9", 120),
]


def run_criterion(suite: str, label: str, budget: float):
    clear_caches()
    start = time.perf_counter()
    reports = SUITES[suite]()
    elapsed = time.perf_counter() - start
    failures = [f"{r.name}: {m}" for r in reports for m in r.failures]
    checks = sum(r.checks for r in reports)
    ok = not failures and elapsed < budget and checks > 0
    line = f"{'PASS' if ok else 'FAIL'} {suite}: {label} ({checks} checks, {elapsed:.2f}s / {budget}s)"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok, failures, elapsed


@pytest.mark.parametrize("suite,label,budget", CRITERIA, ids=[c[0] for c in CRITERIA])
def test_criterion(suite, label, budget):
    ok, failures, elapsed = run_criterion(suite, label, budget)
    assert not failures, failures[:10]
    assert elapsed < budget, f"{suite} took {elapsed:.2f}s, budget {budget}s"
    assert ok


if __name__ == "__main__":
    import sys

    results = [run_criterion(*c)[0] for c in CRITERIA]
    sys.exit(0 if all(results) else 1)
