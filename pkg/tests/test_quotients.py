from __future__ import annotations

import itertools
import random
import warnings
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from epsquot.errors import SizeLimitError
from epsquot.quotients import (
    INF,
    CombQuotient,
    Component,
    VeryAmplenessWarning,
    chamber_index,
    contract,
    count_by_relabeling,
    embedding_h0,
    enumerate_quotients,
    genus0_dim,
    is_epsilon_stable,
    is_mop_stable,
    plucker,
    total_degree,
    vdim,
    walls,
)
from oracles import brute_stable, stability_critical_values

F = Fraction


def single(genus=0, markings=(), degree=0, torsion=(), rank=(1, 2)):
    return CombQuotient((Component(genus, markings, degree, torsion),), (), rank)


def body_with_tail(d, rank=(1, 2)):
    return CombQuotient((Component(1, (), 0), Component(0, (), d)), ((0, 1),), rank)


# --- data model ----------------------------------------------------------------


def test_total_degree_examples():
    assert total_degree(single(2, degree=3)) == 3
    two = CombQuotient((Component(0, (), 2), Component(0, (), 1)), ((0, 1),))
    assert total_degree(two) == 3
    assert total_degree(single(0, (1, 2), 2, (2,))) == 2


def test_invalid_quotients_rejected():
    with pytest.raises(ValueError):
        Component(0, (), 1, (2,))  # torsion exceeds degree
    with pytest.raises(ValueError):
        CombQuotient((Component(), Component()), ())  # disconnected
    with pytest.raises(ValueError):
        single(markings=(2,))  # labels must be 1..m
    with pytest.raises(ValueError):
        single(rank=(2, 2))


def test_loop_counts_twice():
    q = CombQuotient((Component(0, (), 1),), ((0, 0),))
    assert q.special_points(0) == 2
    assert q.genus == 1


def test_serialization_is_byte_stable():
    q = CombQuotient((Component(1, (2,), 0), Component(0, (1,), 3, (1, 2))), ((0, 1), (0, 0)), (2, 5))
    text = q.dumps()
    assert text.index('"vertices"') < text.index('"edges"') < text.index('"rank"')
    assert text.index('"genus"') < text.index('"markings"') < text.index('"degree"') < text.index('"torsion"')
    again = CombQuotient.loads(text)
    assert again == q
    assert again.dumps() == text


def test_malformed_serialization():
    with pytest.raises(ValueError):
        CombQuotient.from_dict({"edges": []})
    with pytest.raises(ValueError):
        CombQuotient.from_dict({"vertices": [{"genus": 0, "degree": 1}], "edges": [[0, 0, 0]]})


# --- stability -----------------------------------------------------------------


def test_example_torsion_point_of_length_three():
    q = single(0, (1, 2), 3, (3,))
    assert is_epsilon_stable(q, F(1, 3))
    verdict = is_epsilon_stable(q, F(1, 2))
    assert not verdict
    assert "torsion" in verdict.reason


def test_genus_two_always_stable():
    q = single(2, degree=1)
    for eps in (F(1, 1000), F(1, 2), 1, 7):
        assert is_epsilon_stable(q, eps)


def test_rational_tail_needs_large_degree_share():
    q = CombQuotient((Component(2, (), 0), Component(0, (), 2)), ((0, 1),))
    verdict = is_epsilon_stable(q, F(1, 2))
    assert not verdict and verdict.reason.startswith("component 1")
    assert is_epsilon_stable(q, F(3, 4))


def test_nonpositive_eps_rejected():
    with pytest.raises(ValueError):
        is_epsilon_stable(single(2), 0)


def test_mop_examples():
    assert is_mop_stable(single(1, degree=1))
    for b in range(4):
        tail = CombQuotient((Component(2), Component(0, (), b)), ((0, 1),))
        assert not is_mop_stable(tail)
        if b:
            assert not is_epsilon_stable(tail, F(1, 10 * b))


def test_below_lowest_wall_stable_implies_mop():
    for q in enumerate_quotients(1, 1, 3, 2):
        eps = F(1, 3)
        if is_epsilon_stable(q, eps):
            assert is_mop_stable(q)


# --- walls and chambers --------------------------------------------------------


@pytest.mark.parametrize(
    "gmd, expected",
    [
        ((2, 0, 5), [F(1, 5), F(1, 4), F(1, 3), F(1, 2), F(1), INF]),
        ((0, 0, 1), [F(2), INF]),
        ((0, 0, 4), [F(1, 2), F(1), INF]),
        ((0, 0, 5), [F(2, 5), F(1, 2), F(1), INF]),
        ((0, 0, 2), [F(1), INF]),
        ((0, 0, 3), [F(2, 3), F(1), INF]),
        ((0, 1, 3), [F(1, 3), F(1, 2), F(1), INF]),
    ],
)
def test_walls(gmd, expected):
    assert list(walls(*gmd).walls) == expected


def test_walls_format_and_errors():
    assert walls(2, 0, 5).format() == "1/5 1/4 1/3 1/2 1 inf"
    with pytest.raises(ValueError):
        walls(1, 0, 0)


def test_chamber_index():
    ws = walls(2, 0, 5)
    assert chamber_index(ws, F(1, 3)) == 3
    assert ws.chambers()[chamber_index(ws, F(2, 5)) - 1] == (F(1, 3), F(1, 2))
    assert ws.chambers()[chamber_index(ws, 7) - 1] == (F(1), INF)
    assert chamber_index(ws, F(1, 100)) == 1


@pytest.mark.parametrize("g,m,d", [(0, 0, 3), (0, 0, 4), (0, 1, 3), (1, 0, 3), (1, 1, 2), (2, 0, 2)])
def test_walls_contain_every_switching_value(g, m, d):
    """Scan the raw inequality thresholds of every quotient and keep those where the verdict flips."""
    wallset = set(walls(g, m, d).finite)
    for q in enumerate_quotients(g, m, d, 3):
        for c in stability_critical_values(q):
            below = brute_stable(q, c - F(1, 10**6))
            at = brute_stable(q, c)
            above = brute_stable(q, c + F(1, 10**6))
            if below != at or at != above:
                assert c in wallset, (q.to_dict(), c)


def test_emptiness_below_threshold():
    for d in range(1, 5):
        for q in enumerate_quotients(0, 0, d, 3):
            assert not is_epsilon_stable(q, F(2, d))


def test_top_chamber_has_no_torsion():
    for q in enumerate_quotients(1, 0, 2, 2):
        if is_epsilon_stable(q, 3):
            assert all(not v.torsion for v in q.vertices)


# --- dimensions ----------------------------------------------------------------


def test_vdim_examples():
    assert vdim(1, 0, 1, 3, 1) == 3
    assert vdim(0, 0, 1, 5, 1) == 6
    assert vdim(1, 0, 1, 2, 0) == 0


def test_genus0_dim_examples():
    # 2*2 + 1*1 + 0 - 3; also the dimension of degree-2 maps from rational curves to P^1
    assert genus0_dim(0, 1, 2, 2) == 2
    for d in range(2, 6):
        assert genus0_dim(1, 1, 1, d) == d - 2


def test_genus0_dim_agrees_with_vdim():
    rng = random.Random(3)
    for _ in range(100):
        n = rng.randint(2, 7)
        r = rng.randint(1, n - 1)
        m, d = rng.randint(0, 5), rng.randint(0, 6)
        assert genus0_dim(m, r, n, d) == vdim(0, m, r, n, d)


def test_embedding_h0():
    assert embedding_h0(2, 0, 1, 1, 5) == 14
    assert embedding_h0(1, 3, 2, 2, 5) == 13
    for g, m, d, l in [(2, 1, 3, 1), (3, 0, 2, 2)]:
        assert embedding_h0(g, m, d, l, 6) - embedding_h0(g, m, d, l, 5) == l * (2 * g - 2) + d
    with pytest.warns(VeryAmplenessWarning):
        embedding_h0(2, 0, 1, 1, 3)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        embedding_h0(2, 0, 1, 1, 5)


# --- contraction and Pluecker --------------------------------------------------


def test_contract_identity_without_tails():
    q = single(2, (1,), 3)
    assert contract(q, 1, F(1, 5)) == q


@pytest.mark.parametrize("d", [2, 3, 4])
def test_contract_rational_tail(d):
    q = body_with_tail(d)
    out = contract(q, F(1, d - 1), F(1, d))
    assert out == single(1, (), d, (d,))
    assert is_epsilon_stable(out, F(1, d))
    assert not is_epsilon_stable(out, F(1, d - 1))


def test_contract_preconditions():
    with pytest.raises(ValueError):
        contract(body_with_tail(2, rank=(2, 4)), 1, F(1, 2))
    with pytest.raises(ValueError):
        contract(body_with_tail(2), F(1, 2), F(1, 3))  # not stable at 1/2
    with pytest.raises(ValueError):
        contract(body_with_tail(2), F(1, 3), F(1, 2))


def test_contract_composes_and_keeps_degree():
    ws = walls(1, 1, 3)
    samples = [hi for _, hi in ws.chambers()[:-1]] + [F(2)]
    for q in enumerate_quotients(1, 1, 3, 3):
        for i, e1 in enumerate(samples):
            if not is_epsilon_stable(q, e1):
                continue
            for e2 in samples[: i + 1]:
                c = contract(q, e1, e2)
                assert total_degree(c) == total_degree(q)
                assert is_epsilon_stable(c, e2)
                for e3 in samples[: samples.index(e2) + 1]:
                    assert contract(c, e2, e3) == contract(q, e1, e3)


def test_plucker():
    q = body_with_tail(2, rank=(2, 4))
    p = plucker(q)
    assert p.rank == (1, 6)
    assert (p.vertices, p.edges) == (q.vertices, q.edges)
    assert plucker(body_with_tail(2, rank=(1, 4))) == body_with_tail(2, rank=(1, 4))


def test_plucker_commutes_with_contract():
    for q in enumerate_quotients(1, 0, 3, 2, rank=(1, 3)):
        if is_epsilon_stable(q, 2):
            assert plucker(contract(q, 2, F(1, 3))) == contract(plucker(q), 2, F(1, 3))


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_plucker_preserves_stability(data):
    qs = enumerate_quotients(1, 1, 2, 2, rank=(2, 5))
    q = data.draw(st.sampled_from(qs))
    eps = data.draw(st.fractions(min_value=F(1, 20), max_value=5))
    if eps > 0:
        assert bool(is_epsilon_stable(q, eps)) == bool(is_epsilon_stable(plucker(q), eps))
        assert total_degree(plucker(q)) == total_degree(q)


# --- enumeration ---------------------------------------------------------------


def test_enumeration_hand_example():
    qs = enumerate_quotients(0, 0, 1, 1)
    assert sorted(q.vertices[0].torsion for q in qs) == [(), (1,)]
    assert all(q.vertices[0].degree == 1 for q in qs)


def test_enumeration_is_duplicate_free():
    qs = enumerate_quotients(1, 1, 2, 3)
    assert count_by_relabeling(qs) == len(qs)
    shuffled = []
    rng = random.Random(0)
    for q in qs:
        perm = list(range(len(q.vertices)))
        rng.shuffle(perm)
        inv = {old: new for new, old in enumerate(perm)}
        shuffled.append(
            CombQuotient(tuple(q.vertices[i] for i in perm), tuple((inv[a], inv[b]) for a, b in q.edges), q.rank)
        )
    assert count_by_relabeling(shuffled) == len(qs)


def test_enumeration_matches_brute_force_count():
    """Two-vertex trees of genus 0 with two markings and degree 1, counted by hand-rolled loops."""
    seen = set()
    for owners in itertools.product(range(2), repeat=2):
        for b0 in range(2):
            for t0 in ([()] if b0 == 0 else [(), (1,)]):
                for t1 in ([()] if b0 == 1 else [(), (1,)]):
                    marks = [tuple(j + 1 for j in range(2) if owners[j] == i) for i in range(2)]
                    verts = (Component(0, marks[0], b0, t0), Component(0, marks[1], 1 - b0, t1))
                    seen.add(CombQuotient(verts, ((0, 1),)).canonical())
    listed = [q for q in enumerate_quotients(0, 2, 1, 2) if len(q.vertices) == 2]
    assert {q.canonical() for q in listed} == seen
    assert len(listed) == len(seen)


def test_enumeration_size_guard():
    with pytest.raises(SizeLimitError):
        enumerate_quotients(5, 0, 1, 1)
    with pytest.raises(SizeLimitError):
        enumerate_quotients(1, 1, 3, 3, limit=50)


def test_enumerated_torsion_respects_degree():
    for q in enumerate_quotients(0, 1, 3, 2):
        assert total_degree(q) == 3
        assert q.genus == 0
        assert sorted(p for v in q.vertices for p in v.markings) == [1]
