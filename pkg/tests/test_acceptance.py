"""The ten acceptance criteria, each with its time limit.

Run under pytest (a PASS/FAIL line per criterion is printed in the terminal
summary) or directly with ``python3 tests/test_acceptance.py``.
"""

import math
import random
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from groupomega.algebra import ideal_power_dims, ideal_powers, triple_subspace_bound  # noqa: E402
from groupomega.arith import exact_log  # noqa: E402
from groupomega.bounds import delta, delta_prime_trend, ideal_bound, nilpotent_bound, synthetic_delta_scan  # noqa: E402
from groupomega.groups import build_symmetric, parse_group_spec, quotient, subgroup_closure  # noqa: E402
from groupomega.jennings import PDegreeVector, degree_stats, jennings_ideal_dims, p_degrees  # noqa: E402
from groupomega.matchings import (  # noqa: E402
    Matching,
    cyclic_border,
    extend_matching,
    pgroup_chain_border,
    transport,
    verify_border,
)
from groupomega.partitions import partition_count  # noqa: E402
from groupomega.tensors import (  # noqa: E402
    diagonal_tensor,
    flat_rank_exact,
    matching_lower_bound,
    matmul_tensor,
    mult_tensor,
    slice_rank_exact,
)
from groupomega.tpp import (  # noqa: E402
    DegreeMultiset,
    TPPInstance,
    char_degrees,
    nec_tpp_check,
    omega_solve,
    verify_tpp,
)
from groupomega.young import (  # noqa: E402
    binomial_bound_check,
    direction_order_ratio,
    hexagon_shape,
    triangle_shape,
    young_subgroup,
)

RESULTS: list[str] = []

CORPUS = (
    [("abelian:" + ",".join(["2"] * n), 2) for n in range(1, 7)]
    + [
        ("cyclic:4", 2),
        ("cyclic:8", 2),
        ("cyclic:9", 3),
        ("cyclic:27", 3),
        ("abelian:4,4", 2),
        ("abelian:3,3,3", 3),
        ("ut:3,2", 2),
        ("ut:3,3", 3),
        ("ut:4,2", 2),
    ]
)


def run_criterion(number, limit, body):
    start = time.perf_counter()
    error = None
    try:
        body()
    except AssertionError as e:
        error = e
    elapsed = time.perf_counter() - start
    ok = error is None and elapsed < limit
    reason = "" if ok else (f": {error}" if error is not None else f": took {elapsed:.1f}s, limit {limit}s")
    line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'} ({elapsed:.2f}s < {limit}s){reason}"
    RESULTS.append(line)
    print(line)
    if error is not None:
        raise error
    assert elapsed < limit, line


def c1_jennings_cross_check():
    for spec, p in CORPUS:
        G = parse_group_spec(spec)
        assert jennings_ideal_dims(p_degrees(G, p)) == ideal_power_dims(G, p), spec


def c2_p_degree_golden():
    assert p_degrees(parse_group_spec("ut:4,2"), 2).r == (3, 2, 1)
    assert p_degrees(parse_group_spec("cyclic:8"), 2).r == (1, 1, 0, 1)
    assert p_degrees(parse_group_spec("abelian:9,9"), 3).r == (2, 0, 2)
    for n in range(1, 7):
        assert p_degrees(parse_group_spec("abelian:" + ",".join(["2"] * n)), 2).r == (n,)


def c3_delta_exactness():
    for n in range(1, 30):
        assert delta(PDegreeVector(2, (n,))).delta_g == n
    assert delta(PDegreeVector(2, (1, 1, 0, 1))).delta_g == Fraction(7, 3)
    rng = random.Random(20240501)
    for _ in range(1000):
        p = rng.choice([2, 3, 5, 7])
        r = PDegreeVector(p, tuple(rng.randint(0, 40) for _ in range(rng.randint(0, 10))) + (rng.randint(1, 40),))
        d = delta(r)
        _, var = degree_stats(r)
        assert d.delta_prime >= 1 / (1 + var)
        assert d.delta_g >= Fraction(r.n, r.length)
        for alpha in (2, 3, 5):
            s = delta(PDegreeVector(p, tuple(alpha * x for x in r.r)))
            assert s.delta_prime == d.delta_prime and s.delta_g == alpha * d.delta_g


def c4_ideal_bound():
    assert ideal_bound(parse_group_spec("cyclic:2"), 2).ideal_exact == 2
    assert ideal_bound(parse_group_spec("cyclic:4"), 2).ideal_exact == 4
    assert ideal_bound(parse_group_spec("abelian:2,2"), 2).ideal_exact == 3
    G = parse_group_spec("product:abelian:2,2,2,2|cyclic:3")
    bound, prime = nilpotent_bound(G)
    assert (bound, prime) == (33, 2) and bound < 48 == G.order


def _best_ideal_triple(G, p):
    P = ideal_powers(G, p)
    last = len(P) - 1
    return min(
        triple_subspace_bound(G, p, P[min(a, last)], P[min(b, last)], P[min(a + b, last)])
        for a in range(len(P))
        for b in range(len(P))
    )


def c5_rank_oracles():
    tensors = []
    for m in range(1, 5):
        t = diagonal_tensor(m, 2)
        assert flat_rank_exact(t).value == m
        tensors.append(t)
    for t in (matmul_tensor(2), mult_tensor(parse_group_spec("cyclic:4"), 2)):
        assert flat_rank_exact(t).value == 4
        tensors.append(t)
    # coprime characteristic: full slice rank
    coprime = [("cyclic:2", 3), ("cyclic:3", 2), ("cyclic:4", 3), ("abelian:2,2", 3)]
    for spec, p in coprime:
        G = parse_group_spec(spec)
        t = mult_tensor(G, p)
        assert slice_rank_exact(t, caps={2: 4, 3: 4}).value == G.order, spec
    for t in tensors:
        assert flat_rank_exact(t).value <= slice_rank_exact(t).value
    V = parse_group_spec("abelian:2,2")
    sandwich = [
        ("cyclic:2", 2, None),
        ("cyclic:3", 3, cyclic_border(3)),
        ("cyclic:4", 2, cyclic_border(4)),
        ("abelian:2,2", 2, Matching(V, (0, 2), (0, 1), (0, 3))),
        ("cyclic:3", 2, cyclic_border(3)),
    ]
    for spec, p, m in sandwich:
        G = parse_group_spec(spec)
        t = mult_tensor(G, p)
        lower = matching_lower_bound(m) if m is not None else 1
        exact = slice_rank_exact(t).value
        assert lower <= exact <= _best_ideal_triple(G, p), spec
        assert flat_rank_exact(t).value <= exact


def c6_matchings():
    for m in range(1, 201):
        b = cyclic_border(m)
        assert len(b) == (m + 1) // 2 and verify_border(b), m
    for spec, p in CORPUS:
        G = parse_group_spec(spec)
        n = exact_log(G.order, p)
        b = pgroup_chain_border(G, p)
        assert len(b) == ((p + 1) // 2) ** n and len(b) * 2**n >= p**n and verify_border(b), spec
    for spec, gen, p in (("cyclic:9", 3, 3), ("cyclic:25", 5, 5), ("cyclic:27", 9, 3)):
        G = parse_group_spec(spec)
        q = quotient(G, subgroup_closure(G, [gen]))
        NG, embed = q.normal_group
        pos = {g: i for i, g in enumerate(embed)}
        k = NG.order
        inner = transport(cyclic_border(k), NG, [pos[gen * i % G.order] for i in range(k)])
        outer = pgroup_chain_border(q.quotient, p)
        ext = extend_matching(q, inner, outer)
        assert len(ext) == len(inner) * len(outer) and verify_border(ext), spec


def c7_symmetric_golden():
    tri, hexa = triangle_shape(13), hexagon_shape(6)
    assert tri.n == hexa.n == 91
    assert direction_order_ratio(hexa, tri) == Fraction(2940, 1573)
    for m in (2, 3):
        sh = triangle_shape(m)
        S = build_symmetric(sh.n)
        assert verify_tpp(TPPInstance(S, *(young_subgroup(S, p) for p in sh.partitions)))
    for m in range(4, 14):
        n = m * (m + 1) // 2
        line = math.prod(math.factorial(i) for i in range(1, m + 1))
        assert nec_tpp_check(math.factorial(n), (line, line, line), partition_count(n)).vacuous, m


def c8_omega_consistency():
    for order in (2, 6, 12, 60):
        assert omega_solve([(order, 1, 1)], DegreeMultiset.of({1: order})).omega_star == 3
    assert omega_solve([(2, 2, 2)], DegreeMultiset.of([1, 1, 2])).omega_star == 3
    for n in range(1, 9):
        d = char_degrees(f"sym:{n}")
        assert d.square_sum == math.factorial(n) and d.count == partition_count(n)


def c9_binomial():
    for n in range(2, 501):
        for t in range(1, n):
            assert binomial_bound_check(n, t), (n, t)


def c10_delta_prime_trend():
    ells = [2**k for k in range(4, 17)]
    for c in (0, -1, -2, -3):
        norm = [dp / delta_prime_trend(c, ell) for ell, dp in synthetic_delta_scan(ells, c)]
        assert max(norm) / min(norm) <= 4, c


CRITERIA = [
    (1, 10, c1_jennings_cross_check),
    (2, 10, c2_p_degree_golden),
    (3, 5, c3_delta_exactness),
    (4, 5, c4_ideal_bound),
    (5, 60, c5_rank_oracles),
    (6, 30, c6_matchings),
    (7, 60, c7_symmetric_golden),
    (8, 10, c8_omega_consistency),
    (9, 10, c9_binomial),
    (10, 10, c10_delta_prime_trend),
]


@pytest.mark.parametrize("number, limit, body", CRITERIA, ids=[f"criterion_{n}" for n, _, _ in CRITERIA])
def test_criterion(number, limit, body):
    run_criterion(number, limit, body)


if __name__ == "__main__":
    failed = 0
    for number, limit, body in CRITERIA:
        try:
            run_criterion(number, limit, body)
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
