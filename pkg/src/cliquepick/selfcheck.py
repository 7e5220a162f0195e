"""Quick randomized agreement checks between the fast algorithms and the brute-force oracles."""

from __future__ import annotations

import random
import sys
from typing import Callable, TextIO

from .background import count_with_background, dag_to_cpdag
from .counting import count_amo, count_amo_by_separators, count_mec
from .errors import NotExtendableError
from .generators import GeneratorSpec, generate_chordal
from .graph import Dag, PartiallyDirectedGraph
from .oracles import brute_force_amo_count, brute_force_extensions
from .orientation import intervention_update, meek_closure, orient_at_vertex
from .applications import enumerate_intervention_results


def random_dag(n: int, p: float, rng: random.Random) -> Dag:
    order = list(range(1, n + 1))
    rng.shuffle(order)
    return Dag(n, [(order[i], order[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < p])


def random_chordal(rng: random.Random, max_n: int) -> PartiallyDirectedGraph:
    n = rng.randint(1, max_n)
    model = rng.choice(("subtree", "interval"))
    return generate_chordal(GeneratorSpec(model, n, rng.uniform(1, 3), seed=rng.randrange(2**32)))


def random_pdag(rng: random.Random, max_n: int, p_orient: float = 0.4) -> PartiallyDirectedGraph:
    """A CPDAG of a random DAG with some undirected edges oriented as in that DAG."""
    D = random_dag(rng.randint(1, max_n), rng.random(), rng)
    C = dag_to_cpdag(D)
    return C.orient([e for e in sorted(D.directed) if (min(e), max(e)) in C.undirected and rng.random() < p_orient])


def _counting(rng, max_n):
    U = random_chordal(rng, max_n)
    c = count_amo(U)
    return c == brute_force_amo_count(U)[0] == count_amo_by_separators(U)


def _mec(rng, max_n):
    C = dag_to_cpdag(random_dag(rng.randint(1, max_n), rng.random(), rng))
    return count_mec(C) == brute_force_extensions(C)[0]


def _update(rng, max_n):
    U = random_chordal(rng, max_n)
    for v in U.vertices:
        if not U.undirected_neighbors(v):
            continue
        for K in enumerate_intervention_results(U, v):
            if intervention_update(U, v, K) != meek_closure(orient_at_vertex(U, v, K)):
                return False
    return True


def _background(rng, max_n):
    G = random_pdag(rng, max_n)
    try:
        fast = count_with_background(G)
    except NotExtendableError:
        fast = 0
    return fast == brute_force_extensions(G)[0]


CHECKS: list[tuple[str, Callable[[random.Random, int], bool]]] = [
    ("orientation count vs brute force and separator formula", _counting),
    ("class size vs extension enumeration", _mec),
    ("intervention update vs Meek closure", _update),
    ("background count vs extension enumeration", _background),
]


def run_selfcheck(seed: int = 0, trials: int = 100, max_n: int = 7, out: TextIO = sys.stdout) -> bool:
    ok = True
    for name, check in CHECKS:
        rng = random.Random(seed)
        failures = sum(not check(rng, max_n) for _ in range(trials))
        status = "PASS" if failures == 0 else "FAIL"
        print(f"{status} {name} ({trials} cases, {failures} failures)", file=out)
        ok &= failures == 0
    return ok
