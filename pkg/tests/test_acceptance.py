"""Acceptance suite: one PASS/FAIL line per criterion, with its time budget.

Run with ``pytest tests/test_acceptance.py -v`` (lines are printed live) or
``python tests/test_acceptance.py`` for the summary alone.
"""

from __future__ import annotations

import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from oracles import oracle_product  # noqa: E402
from pshkit import heisenberg as H  # noqa: E402
from pshkit import hopfcat, psh, twovect, wreath  # noqa: E402
from pshkit.partitions import Partition, generate_partitions, partitions_up_to  # noqa: E402
from pshkit.symfunc import lr_coefficient  # noqa: E402


def lr_oracle():
    n = bad = 0
    for s in range(9):
        for a in range(s + 1):
            for mu in generate_partitions(a):
                for nu in generate_partitions(s - a):
                    expected = oracle_product(tuple(mu), tuple(nu))
                    for lam in generate_partitions(s):
                        n += 1
                        bad += lr_coefficient(lam, mu, nu) != expected.get(tuple(lam), 0)
    return bad == 0, f"{n} triples, {bad} mismatches"


def psh_axioms():
    rep = psh.check_psh_axioms(psh.symmetric_functions(8), 8)
    return rep["ok"], ", ".join(f"{a['axiom']}={'ok' if a['ok'] else 'FAIL'}" for a in rep["axioms"])


def heisenberg_relation():
    rep = H.verify_relation(psh.symmetric_functions(6), 6, 3)
    return rep["ok"], f"{len(rep['rows'])} Schur x, {sum(r['checked'] for r in rep['rows'])} basis tensors"


def phi_algebra_and_injective():
    phi = H.verify_phi_algebra(psh.symmetric_functions(6), 6, 3)
    inj = H.verify_injectivity(psh.symmetric_functions(10), 5)
    ok = phi["algebra_map_ok"] and inj["ok"]
    return ok, (f"{phi['pairs_checked']} pairs, {phi['columns_compared']} columns; "
                f"rank {inj['total_rank']}/{inj['total_dim']}")


def presentations():
    p2 = H.commutator_table(2, 5)
    p3 = H.commutator_table(3, 5, variant="swapped")
    lit = H.commutator_table(3, 5, variant="literal")
    p1 = H.commutator_table(1, 5)
    ok = p2["ok"] and p3["ok"]
    return ok, (f"[c_k,c_l] {len(p2['rows'])} pairs ok={p2['ok']}; [a_m,b_n] swapped ok={p3['ok']}, "
                f"literal matches {sum(r['match'] for r in lit['rows'])}/{len(lit['rows'])}; "
                f"presentation 1 reported ({sum(r['match'] for r in p1['rows'])}/{len(p1['rows'])} match)")


def deltam():
    model = hopfcat.SshModel(6)
    reps = [hopfcat.verify_deltam(F, 6, model, collect=False) for F in partitions_up_to(3)]
    blocks = sum(r["mate"]["blocks_checked"] for r in reps)
    ok = all(r["ok"] and r["k_level_ok"] for r in reps)
    return ok, f"{len(reps)} shapes F, {blocks} mate blocks"


def cubes():
    rep = hopfcat.verify_cubes(5)
    return rep["ok"], ", ".join(f"{k}={'ok' if v['ok'] else 'FAIL'}" for k, v in sorted(rep["cubes"].items()))


def mate_calculus():
    rep = twovect.verify_mate_calculus(0, 50, 3)
    return rep["ok"], f"{rep['cases']} quintets, BC holds in {rep['bc_true']}"


def wreath_shadow():
    out = []
    ok = True
    for name in ("trivial", "z2", "s3"):
        rep = wreath.verify_decomposition(wreath.bundled_table(name), 4)
        ok = ok and rep["ok"]
        out.append(f"{name}:{[r['rank'] for r in rep['primitive_ranks']]}")
    return ok, " ".join(out)


def fault_detection():
    L = psh.symmetric_functions(6)
    one, two = Partition((1,)), Partition((2,))
    neg = psh.check_psh_axioms(psh.negate_constant(L, one, one, two), 4)
    neg_caught = not neg["ok"] and neg["axioms"][0]["witness"] is not None

    # Sweedler legs exchanged inside the straightening rule
    swap = H.verify_phi_algebra(psh.symmetric_functions(4), 4, 2, mutant="swap_legs")
    swap_caught = not swap["ok"] and swap["witness"] is not None
    # operand legs exchanged (skew the left factor instead of the right one)
    mis = H.verify_phi_algebra(psh.symmetric_functions(4), 4, 2, mutant="misroute")
    mis_caught = not mis["ok"] and mis["witness"] is not None

    pert = hopfcat.verify_hopf_square(4, hopfcat.perturbed_model(4), cubes=False, collect=False)
    w = pert["bc_left"].get("witness") or pert["bc_right"].get("witness")
    # the same entry bumped in the structure constants of Lambda itself
    mult = {k: dict(v) for k, v in L.mult.items()}
    mult[(one, one)][two] += 1
    bumped = psh.check_psh_axioms(psh.PshAlgebra(L.basis, mult, L.unit, 6, "Lambda+"), 4)
    pert_caught = not pert["ok"] and w is not None and not bumped["ok"]

    ok = neg_caught and swap_caught and pert_caught
    return ok, (f"negated constant caught={neg_caught}; swapped Sweedler legs caught={swap_caught} "
                f"(operand-swap variant caught={mis_caught}); perturbed LR entry caught={pert_caught}")


CRITERIA = [
    (1, "LR coefficients agree with the polynomial oracle, |lambda| <= 8", 30, lr_oracle),
    (2, "PSH axioms for Lambda at D = 8", 60, psh_axioms),
    (3, "Heisenberg relation on (Lambda x Lambda)_{<=6}, |x| <= 3", 60, heisenberg_relation),
    (4, "phi is an injective algebra map", 60, phi_algebra_and_injective),
    (5, "generator presentations", 30, presentations),
    (6, "deltam mates invertible for |F| <= 3 at D = 6", 120, deltam),
    (7, "relation cubes commute at D = 5", 60, cubes),
    (8, "mate calculus on 50 seeded quintets", 10, mate_calculus),
    (9, "wreath decomposition at D = 4", 30, wreath_shadow),
    (10, "seeded faults are caught", 30, fault_detection),
]


def evaluate(number, title, limit, fn):
    t0 = time.perf_counter()
    ok, detail = fn()
    dt = time.perf_counter() - t0
    passed = bool(ok) and dt < limit
    line = f"{'PASS' if passed else 'FAIL'} criterion {number}: {title} [{dt:.1f}s / {limit}s] {detail}"
    return passed, line


@pytest.mark.parametrize("number,title,limit,fn", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(number, title, limit, fn, capsys):
    passed, line = evaluate(number, title, limit, fn)
    with capsys.disabled():
        print("\n" + line)
    assert passed, line


if __name__ == "__main__":
    results = [evaluate(*c) for c in CRITERIA]
    for _, line in results:
        print(line)
    sys.exit(0 if all(p for p, _ in results) else 1)
