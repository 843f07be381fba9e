import itertools
import json
import math

import pytest

import loopforge as lf


def is_latin(rows):
    n = len(rows)
    full = set(range(n))
    return all(set(r) == full for r in rows) and all(
        {rows[i][j] for i in range(n)} == full for j in range(n)
    )


def brute_unbreakable(rows):
    """No proper nontrivial subset is closed under the product."""
    n = len(rows)
    for k in range(2, n):
        for subset in itertools.combinations(range(1, n), k - 1):
            s = {0, *subset}
            if all(rows[a][b] in s for a in s for b in s):
                return False
    return True


def closure_size(gens):
    seen = {tuple(range(len(gens[0])))}
    frontier = list(seen)
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = tuple(g[x] for x in p)
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return len(seen)


Z5 = [[(a + b) % 5 for b in range(5)] for a in range(5)]


def test_table_round_trip(tmp_path):
    t = lf.Table(Z5)
    assert t.order == 5 and len(t) == 5
    assert t[2, 4] == 1
    assert t.rows() == Z5
    assert lf.parse_table(lf.format_table(t)) == t
    assert lf.Table.from_json(t.to_json()) == t
    path = tmp_path / "z5.txt"
    lf.write_table(path, t)
    assert lf.read_table(path) == t
    with pytest.raises(IndexError):
        t[5, 0]


def test_bad_input():
    with pytest.raises(ValueError):
        lf.parse_table("3\n0 1 2\n1 x 0\n2 0 1\n")
    with pytest.raises(ValueError):
        lf.Table([[0, 1], [1]])
    with pytest.raises(ValueError):
        lf.construct(6, "alt")
    with pytest.raises(ValueError):
        lf.construct(5, "alt")


def test_analyze_cyclic_group():
    r = lf.analyze(Z5)
    assert r["schema"] == 1
    assert r["is_loop"] and r["associative"] and r["commutative"]
    assert r["unbreakable"]
    assert r["group_order"] == "5"


@pytest.mark.parametrize("n,group", [(7, "sym"), (9, "alt"), (11, "sym"), (10, "sym")])
def test_construct(n, group):
    t = lf.construct(n, group)
    rows = t.rows()
    assert is_latin(rows)
    assert rows[0] == list(range(n)) and [r[0] for r in rows] == list(range(n))
    assert lf.is_unbreakable(t)
    assert not lf.is_associative(t)
    r = lf.analyze(t)
    expected = math.factorial(n) // (2 if group == "alt" else 1)
    assert int(r["group_order"]) == expected == lf.multiplication_group_order(t)
    assert r["group_class"] == ("Alternating" if group == "alt" else "Symmetric")
    assert r["commutative"] == (n % 2 == 1)


def test_small_loop_against_oracles():
    t = lf.construct(7, "sym")
    rows = t.rows()
    assert brute_unbreakable(rows)
    lefts = [rows[a] for a in range(7)]
    rights = [[rows[b][a] for b in range(7)] for a in range(7)]
    assert closure_size(lefts + rights) == math.factorial(7)


def test_certificate():
    c = lf.certificate(lf.construct(12))
    assert c["all_hold"]


def test_census():
    c5 = lf.census(5)
    assert (c5["classes"], c5["unbreakable"]) == (6, 1)
    assert c5["by_group"] == {"Symmetric": 1}
    loops = lf.enumerate_loops(5)
    assert len(loops) == 6
    assert [lf.canonical_form(t) == t for t in loops] == [True] * 6
    nonassoc_unbreakable = [
        t for t in loops if brute_unbreakable(t.rows()) and not lf.is_associative(t)
    ]
    assert len(nonassoc_unbreakable) == 1
    assert len(lf.enumerate_loops(6, limit=4)) == 4


def test_permutation_groups():
    assert lf.group_order(5, [[1, 2, 3, 4, 0], [1, 0, 2, 3, 4]]) == 120
    assert lf.classify(5, [[1, 2, 0, 3, 4], [0, 1, 3, 4, 2]]) == ("Alternating", 60)
    kind, order = lf.classify(30, [list(range(1, 30)) + [0], [1, 0] + list(range(2, 30))])
    assert kind == "Symmetric" and order == math.factorial(30)
    assert lf.parity([1, 0, 2]) == "odd"
    assert lf.subloop_closure(Z5, [0]) == [0]
    assert lf.subloop_closure(Z5, [2]) == [0, 1, 2, 3, 4]
