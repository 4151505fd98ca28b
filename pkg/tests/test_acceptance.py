"""Acceptance suite: nine end-to-end criteria, each with a wall-clock budget.

Every criterion prints one ``[PASS]`` or ``[FAIL]`` line; the lines are also
repeated in pytest's terminal summary. Run directly with
``python tests/test_acceptance.py`` to get just the nine lines.
"""

from __future__ import annotations

import itertools
import math
import random
import statistics
import time

import networkx as nx
import numpy as np
from helpers import (
    backtrack_colorable,
    brute_power_counts,
    exhaustive_chromatic,
    has_independent_set,
    naive_convolution,
    petersen_edges,
)

from partcolor import (
    FieldSpec,
    LatticeShape,
    SemiSelectionTable,
    make_instance,
    oracle_solve,
    power_convolve,
    solve_exact,
    subset_convolve,
    verify_certificate,
)
from partcolor.exact import build_indicator
from partcolor.field import PRIME_POOL
from partcolor.generate import random_instance, random_shape_instance
from partcolor.lattice import mobius_in_place, semi_selection_bound, zeta_in_place
from partcolor.reductions import (
    CnfFormula,
    reduce_3sat_to_pcp22,
    reduce_is_to_pcp,
    reduce_qsat_to_pcpk1,
    sat_bruteforce,
)
from partcolor.special import build_2sat, dispatch, solve_q1, solve_q2k1

EXACT = FieldSpec.exact()
RESULTS: list[str] = []


def report(number: int, title: str, ok: bool, elapsed: float, budget: float, detail: str) -> None:
    within = elapsed < budget
    status = "PASS" if ok and within else "FAIL"
    line = f"[{status}] criterion {number}: {title} | {detail} | {elapsed:.1f}s (budget {budget:.0f}s)"
    RESULTS.append(line)
    print(line)
    assert ok, line
    assert within, line


def random_cnf(rng: random.Random, max_vars: int, max_clauses: int, max_width: int) -> CnfFormula:
    num_vars = rng.randint(1, max_vars)
    clauses = []
    for _ in range(rng.randint(1, max_clauses)):
        width = rng.randint(1, max_width)
        clauses.append(tuple(rng.choice((1, -1)) * rng.randint(1, num_vars) for _ in range(width)))
    return CnfFormula(num_vars, tuple(clauses))


def test_criterion_1_oracle_equivalence():
    start = time.perf_counter()
    rng = random.Random(101)
    mismatches = 0
    yes = 0
    for _ in range(1000):
        inst = random_shape_instance(rng, max_p=8, max_q=3, max_n=16, max_size=4096)
        truth = oracle_solve(inst).verdict
        yes += truth
        for sol in (solve_exact(inst, EXACT), solve_exact(inst, repeats=2, seed=rng.getrandbits(32))):
            if sol.verdict != truth or (sol.verdict and not verify_certificate(inst, sol.selection, sol.coloring)):
                mismatches += 1
    elapsed = time.perf_counter() - start
    detail = f"1000 instances ({yes} yes), exact + modular(repeats=2) vs oracle, {mismatches} mismatches"
    report(1, "oracle equivalence", mismatches == 0, elapsed, 60, detail)


def test_criterion_2_counting_oracle():
    start = time.perf_counter()
    rng = random.Random(102)
    bad = 0
    codes = 0
    for _ in range(200):
        inst = random_shape_instance(rng, max_p=6, max_q=3, max_n=16)
        k = rng.randint(1, inst.p)
        got = power_convolve(build_indicator(inst), k, EXACT).table.to_ints()
        expected = brute_power_counts(inst, k)
        codes += len(expected)
        bad += got != expected
    elapsed = time.perf_counter() - start
    detail = f"200 instances, p <= 6, {codes} codes compared against enumerated k-tuples, {bad} differ"
    report(2, "counting oracle", bad == 0, elapsed, 30, detail)


def ordered_shapes(limit: int) -> list[tuple[int, ...]]:
    shapes = []

    def extend(prefix: list[int], size: int) -> None:
        if prefix:
            shapes.append(tuple(prefix))
        for radix in range(2, limit // size + 1):
            extend(prefix + [radix], size * radix)

    extend([], 1)
    return shapes


def test_criterion_3_transform_algebra():
    start = time.perf_counter()
    rng = random.Random(103)
    np_rng = np.random.default_rng(103)
    shapes = ordered_shapes(512)
    inverse_failures = 0
    for radices in shapes:
        shape = LatticeShape(radices)
        values = np_rng.integers(-99, 100, shape.size)
        t = SemiSelectionTable.from_values(shape, values, EXACT)
        inverse_failures += not np.array_equal(mobius_in_place(zeta_in_place(t)).values, values)
        t = SemiSelectionTable.from_values(shape, values, EXACT)
        inverse_failures += not np.array_equal(zeta_in_place(mobius_in_place(t)).values, values)
    conv_failures = 0
    for radices in rng.sample(shapes, 100):
        shape = LatticeShape(radices)
        g = [rng.randint(-99, 99) for _ in range(shape.size)]
        h = [rng.randint(-99, 99) for _ in range(shape.size)]
        got = subset_convolve(
            SemiSelectionTable.from_values(shape, g, EXACT), SemiSelectionTable.from_values(shape, h, EXACT)
        ).to_ints()
        conv_failures += got != naive_convolution(g, h, radices)
    elapsed = time.perf_counter() - start
    detail = (
        f"zeta/mobius inverse on all {len(shapes)} shapes of size <= 512 ({inverse_failures} failures); "
        f"ranked vs quadratic convolution on 100 trials ({conv_failures} failures)"
    )
    report(3, "transform algebra", inverse_failures == 0 and conv_failures == 0, elapsed, 10, detail)


def conflict_triangles_ok(out) -> bool:
    inst = out.instance
    for t in range((inst.n - 2) // 9):
        confs = range(2 + 9 * t + 6, 2 + 9 * t + 9)
        if not all(inst.adjacent(a, b) for a, b in itertools.combinations(confs, 2)):
            return False
    return True


def test_criterion_4_3sat_reduction():
    start = time.perf_counter()
    rng = random.Random(104)
    disagreements = 0
    shape_errors = 0
    sat_count = 0
    for _ in range(200):
        phi = random_cnf(rng, 6, 5, 3)
        out = reduce_3sat_to_pcp22(phi)
        inst = out.instance
        m = len(phi.clauses)
        if (inst.n, inst.p, inst.k) != (9 * m + 2, 6 * m + 2, 2) or inst.q > 2 or not conflict_triangles_ok(out):
            shape_errors += 1
        sat = sat_bruteforce(phi) is not None
        sat_count += sat
        sol = dispatch(inst)
        if sol.verdict != sat or (sol.verdict and not verify_certificate(inst, sol.selection, sol.coloring)):
            disagreements += 1
    elapsed = time.perf_counter() - start
    detail = (
        f"200 CNFs ({sat_count} SAT, {200 - sat_count} UNSAT), {disagreements} verdict disagreements, "
        f"{shape_errors} instances off 9m+2 vertices / 6m+2 parts"
    )
    report(4, "3-SAT reduction fidelity", disagreements == 0 and shape_errors == 0, elapsed, 120, detail)


def test_criterion_5_qsat_and_independent_set_reductions():
    start = time.perf_counter()
    rng = random.Random(105)
    sat_bad = 0
    sat_mix = {True: 0, False: 0}
    for q in (3, 4):
        for _ in range(200):
            phi = random_cnf(rng, 6, 5, q)
            out = reduce_qsat_to_pcpk1(phi, q)
            sat = sat_bruteforce(phi) is not None
            sat_mix[sat] += 1
            sat_bad += dispatch(out.instance).verdict != sat

    is_bad = 0
    is_cases = 0
    for graph in nx.graph_atlas_g():
        n = graph.number_of_nodes()
        if n == 0:
            continue
        edges = list(graph.edges())
        for k_i in range(1, 5):
            truth = has_independent_set(n, edges, k_i)
            for k in range(1, 4):
                out = reduce_is_to_pcp(n, edges, k_i, k)
                if out.instance.p != k_i + k - 1:
                    is_bad += 1
                is_bad += dispatch(out.instance).verdict != truth
                is_cases += 1
    elapsed = time.perf_counter() - start
    detail = (
        f"q-SAT q in {{3,4}}: 400 CNFs ({sat_mix[True]} SAT / {sat_mix[False]} UNSAT), {sat_bad} disagree; "
        f"independent set: {is_cases} cases over all graphs n <= 7, {is_bad} disagree"
    )
    report(5, "q-SAT and independent-set reduction fidelity", sat_bad == 0 and is_bad == 0, elapsed, 120, detail)


def truth_table_satisfiable(formula) -> bool:
    p = formula.num_vars
    bits = (np.arange(1 << p)[:, None] >> np.arange(p)[None, :]) & 1 == 1
    ok = np.ones(1 << p, dtype=bool)
    for clause in formula.clauses:
        hit = np.zeros(1 << p, dtype=bool)
        for var, polarity in clause:
            hit |= bits[:, var] == polarity
        ok &= hit
    return bool(ok.any())


def test_criterion_6_special_cases():
    start = time.perf_counter()
    rng = random.Random(106)
    q1_bad = 0
    for _ in range(500):
        n = rng.randint(1, 16)
        inst = random_instance(n, n, 1, rng.choice((0.1, 0.3, 0.6)), rng.randint(1, 2), rng.getrandbits(32))
        sol = solve_q1(inst)
        q1_bad += sol.verdict != oracle_solve(inst).verdict
        q1_bad += sol.verdict and not verify_certificate(inst, sol.selection, sol.coloring)
    q2_bad = 0
    formula_bad = 0
    for _ in range(500):
        p = rng.randint(1, 16)
        n = rng.randint(p, min(2 * p, 16))
        inst = random_instance(n, p, 2, rng.choice((0.1, 0.3, 0.6)), 1, rng.getrandbits(32))
        sol = solve_q2k1(inst)
        truth = oracle_solve(inst).verdict
        q2_bad += sol.verdict != truth
        q2_bad += sol.verdict and not verify_certificate(inst, sol.selection, sol.coloring)
        formula_bad += truth_table_satisfiable(build_2sat(inst)) != truth
    elapsed = time.perf_counter() - start
    detail = (
        f"q=1: 500 instances, {q1_bad} disagree; q<=2,k=1: 500 instances, {q2_bad} disagree, "
        f"{formula_bad} formulas whose satisfiability differs from the verdict"
    )
    report(6, "special-case agreement", q1_bad == 0 and q2_bad == 0 and formula_bad == 0, elapsed, 30, detail)


def test_criterion_7_vertex_coloring_degeneration():
    start = time.perf_counter()
    wrong = 0
    graphs = 0
    decisions = 0
    for graph in nx.graph_atlas_g():
        n = graph.number_of_nodes()
        if n == 0 or not nx.is_connected(graph):
            continue
        graphs += 1
        edges = list(graph.edges())
        chi = exhaustive_chromatic(n, edges)
        for k in range(1, n + 1):
            inst = make_instance([[v] for v in range(n)], edges, k)
            decisions += 1
            wrong += solve_exact(inst, EXACT).verdict != (chi <= k)
            wrong += dispatch(inst).verdict != (chi <= k)
    petersen = [[v] for v in range(10)]
    petersen_ok = True
    for k, expected in ((2, False), (3, True)):
        inst = make_instance(petersen, petersen_edges(), k)
        verdicts = {
            oracle_solve(inst).verdict,
            solve_exact(inst, EXACT).verdict,
            solve_exact(inst, repeats=2, seed=k).verdict,
            dispatch(inst).verdict,
        }
        petersen_ok &= verdicts == {expected}
    elapsed = time.perf_counter() - start
    detail = (
        f"{graphs} connected graphs n <= 7, {decisions} k-decisions vs exhaustive chromatic number, "
        f"{wrong} wrong; Petersen k=2 no / k=3 yes: {'ok' if petersen_ok else 'wrong'}"
    )
    report(7, "vertex coloring degeneration", wrong == 0 and petersen_ok, elapsed, 60, detail)


def median_time(fn, runs: int = 3) -> float:
    times = []
    for _ in range(runs):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times)


def test_criterion_8_scaling():
    start = time.perf_counter()
    field = FieldSpec.modular(PRIME_POOL[0])

    # sweep at p = 4: lattice grows from 16^4 = 2^16 to 46^4, a factor of 68
    sizes, times = [], []
    for radix in (16, 20, 24, 28, 32, 39, 46):
        inst = random_instance(4 * (radix - 1), 4, radix - 1, 0.5, 3, seed=radix)
        sizes.append(LatticeShape.from_instance(inst).size)
        times.append(median_time(lambda: solve_exact(inst, field, repeats=1)))
    slope = float(np.polyfit(np.log(sizes), np.log(times), 1)[0])
    growth = sizes[-1] / sizes[0]
    slope_ok = abs(slope - 1.0) <= 0.3 and growth >= 64

    # p = n = 20 singletons, k = 3, two primes on a no-instance
    big = random_instance(20, 20, 1, 0.5, 3, seed=7)
    t0 = time.perf_counter()
    big_sol = solve_exact(big, repeats=2, seed=7)
    big_time = time.perf_counter() - t0
    big_ok = big_time < 30 and big_sol.verdict == backtrack_colorable(20, sorted(big.edges), 3)

    # doubling k from 2 to 4 costs one extra product; compare to one subset convolution
    base = random_instance(16, 16, 1, 0.3, 2, seed=11)
    f = build_indicator(base, field)
    conv2 = power_convolve(f, 2, field, degrees=(16,)).convolutions
    conv4 = power_convolve(f, 4, field, degrees=(16,)).convolutions
    t2 = median_time(lambda: solve_exact(base.with_budget(2), field, repeats=1), 5)
    t4 = median_time(lambda: solve_exact(base.with_budget(4), field, repeats=1), 5)
    t_conv = median_time(lambda: subset_convolve(f, f), 5)
    # 25% slack absorbs timer noise on a shared machine
    doubling_ok = conv4 - conv2 == 1 and t4 - t2 <= 1.25 * t_conv

    elapsed = time.perf_counter() - start
    detail = (
        f"slope {slope:.3f} over {growth:.0f}x lattice growth; p=n=20,k=3 solved in {big_time:.1f}s "
        f"(verdict {'yes' if big_sol.verdict else 'no'}); k 2->4: {conv2}->{conv4} convolutions, "
        f"+{t4 - t2:.3f}s vs one convolution {t_conv:.3f}s"
    )
    report(8, "scaling sanity", slope_ok and big_ok and doubling_ok, elapsed, 180, detail)


def test_criterion_9_lattice_size_bound():
    start = time.perf_counter()
    rng = random.Random(109)
    violations = 0
    worst = 0.0
    for _ in range(1000):
        inst = random_shape_instance(rng, max_p=12, max_q=6, max_n=60)
        size = math.prod(len(part) + 1 for part in inst.parts)
        bound = semi_selection_bound(inst.n, inst.p)
        worst = max(worst, size / bound)
        violations += size > bound * (1 + 1e-9)
    elapsed = time.perf_counter() - start
    detail = f"1000 random shapes, {violations} violations, max size/bound {worst:.6f}"
    report(9, "lattice size bound", violations == 0, elapsed, 1, detail)


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                pass
