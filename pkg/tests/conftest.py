"""Shared fixtures: the worked example fields, the 6-cell ring network,
its synchrony patterns, and random generators for property tests."""

import random
import re

import pytest

from admnet import (
    CellGenerator,
    GeneratingAssignment,
    Network,
    Partition,
    VectorFieldSpec,
    vdp_network_field,
)
from admnet.polynomial import Polynomial, parse_polynomial


def scalar_field(exprs: list[str]) -> VectorFieldSpec:
    """Field with one coordinate per cell, parsed from x1..xn expressions."""
    n = len(exprs)
    variables = [f"x{i}" for i in range(1, n + 1)]
    comps = tuple(parse_polynomial(e, variables) for e in exprs)
    return VectorFieldSpec(n, tuple((i,) for i in range(n)), comps)


@pytest.fixture
def three_cell_field() -> VectorFieldSpec:
    return scalar_field(["x1 + x1^3", "x2 + x2^2*x3", "x3 + x1*x2*x3"])


@pytest.fixture
def three_cell_assignment() -> GeneratingAssignment:
    """Shared generator x + y1*y2*y3 with repeated tails per cell."""
    slots = ["x", "y1", "y2", "y3"]
    gen = parse_polynomial("x + y1*y2*y3", slots)
    return GeneratingAssignment(
        (
            CellGenerator(0, (gen,), (0, 0, 0)),
            CellGenerator(1, (gen,), (1, 1, 2)),
            CellGenerator(2, (gen,), (0, 1, 2)),
        )
    )


@pytest.fixture
def four_cell_field() -> VectorFieldSpec:
    return scalar_field(
        ["x1*x2 + x3*x4", "x1*x2*x3*x4", "x3*x4 + x1*x2", "x1*x2*x3*x4"]
    )


@pytest.fixture
def six_cell_field() -> VectorFieldSpec:
    """Each cell couples to the ordered pairs of its two predecessors and
    its two successors on a 6-ring: f_i = x_i^2 + x_{i-2}x_{i-1} + x_{i+1}x_{i+2}."""
    exprs = []
    for i in range(6):
        a, b = (i - 2) % 6 + 1, (i - 1) % 6 + 1
        c, d = (i + 1) % 6 + 1, (i + 2) % 6 + 1
        exprs.append(f"x{i + 1}^2 + x{a}*x{b} + x{c}*x{d}")
    return scalar_field(exprs)


@pytest.fixture
def ring6() -> Network:
    """6-ring with nearest and next-nearest neighbour coupling, one edge type."""
    edges = []
    for i in range(6):
        for j in (i - 2, i - 1, i + 1, i + 2):
            edges.append((j % 6, i, 0))
    return Network(6, Partition.top(6), edges)


RING6_PATTERNS = [
    "14", "25", "36", "1245", "1346", "2356", "12|45", "13|46", "15|24",
    "16|34", "23|56", "26|35", "14|25", "14|36", "25|36", "1245|36",
    "1346|25", "14|2356", "123|456", "126|345", "135|246", "156|234",
    "12|36|45", "13|25|46", "14|23|56", "14|26|35", "15|24|36", "16|25|34",
    "14|25|36",
]
RING6_CHIMERA_COUNT = 15  # the first 15 expressions have a singleton left over


def pattern_from_expr(expr: str, n: int = 6) -> Partition:
    merged = [tuple(int(ch) - 1 for ch in grp) for grp in expr.split("|")]
    used = {c for g in merged for c in g}
    blocks = list(merged) + [(c,) for c in range(n) if c not in used]
    return Partition(n, blocks)


@pytest.fixture
def ring6_patterns() -> list[Partition]:
    return [pattern_from_expr(e) for e in RING6_PATTERNS]


@pytest.fixture
def vdp6() -> VectorFieldSpec:
    return vdp_network_field(6)


# ---------------------------------------------------------------------------
# Random generators (seeded by the caller)
# ---------------------------------------------------------------------------


def random_field(rng: random.Random) -> VectorFieldSpec:
    """Random scalar field on a ring, mixing symmetric and generic shapes."""
    n = rng.randint(3, 6)
    variables = [f"x{i}" for i in range(1, n + 1)]
    if rng.random() < 0.6:
        # circulant: same generating shape on every cell, with interchangeable
        # neighbour pairs when several pairs are chosen
        offsets = list(range(1, n))
        rng.shuffle(offsets)
        k = rng.randint(1, min(2, len(offsets) // 2))
        exprs = []
        for i in range(n):
            terms = [f"x{i + 1}^2"]
            for p in range(k):
                a = (i + offsets[2 * p]) % n + 1
                b = (i + offsets[2 * p + 1]) % n + 1
                terms.append(f"x{a}*x{b}")
            exprs.append(" + ".join(terms))
    else:
        exprs = []
        for i in range(n):
            others = [j for j in range(n) if j != i]
            deps = rng.sample(others, rng.randint(0, min(3, len(others))))
            terms = [f"x{i + 1}"]
            if deps:
                terms.append("*".join(f"x{j + 1}" for j in deps))
            exprs.append(" + ".join(terms))
    comps = tuple(parse_polynomial(e, variables) for e in exprs)
    return VectorFieldSpec(n, tuple((i,) for i in range(n)), comps)


def random_network(rng: random.Random, n_max: int = 6) -> Network:
    n = rng.randint(2, n_max)
    k = rng.randint(1, 2)
    edges = []
    for t in range(k):
        m = rng.randint(1, n + 1)
        for _ in range(m):
            edges.append((rng.randrange(n), rng.randrange(n), t))
    used = sorted({t for _, _, t in edges})
    remap = {t: i for i, t in enumerate(used)}
    edges = [(a, b, remap[t]) for a, b, t in edges]
    return Network(n, Partition.top(n), edges)


def random_relabeling(rng: random.Random, g: Network) -> Network:
    sigma = list(range(g.n_cells))
    rng.shuffle(sigma)
    tau = list(range(g.n_types))
    rng.shuffle(tau)
    return g.relabel(sigma, tau)


# ---------------------------------------------------------------------------
# Acceptance summary: one PASS/FAIL line per criterion
# ---------------------------------------------------------------------------


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    verdicts: dict[int, str] = {}
    for status, verdict in (("passed", "PASS"), ("failed", "FAIL"), ("error", "FAIL")):
        for rep in terminalreporter.stats.get(status, []):
            m = re.search(r"test_acceptance\.py::test_criterion_(\d+)", getattr(rep, "nodeid", ""))
            if m:
                verdicts[int(m.group(1))] = verdict
    if verdicts:
        terminalreporter.write_line("")
        for k in sorted(verdicts):
            terminalreporter.write_line(f"ACCEPTANCE CRITERION {k}: {verdicts[k]}")
