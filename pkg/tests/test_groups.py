import pytest

from solvint import corpus
from solvint import groups as gr
from solvint.errors import MalformedInput, ResourceCapExceeded, UnsupportedGroup


def s3():
    return corpus.corpus_group("S3")


def test_from_mul_table_validates():
    # broken identity row
    with pytest.raises(MalformedInput):
        gr.from_mul_table([[1, 0], [0, 1]])
    # fine for C2
    g = gr.from_mul_table([[0, 1], [1, 0]], "C2")
    assert g.n == 2 and g.inv(1) == 1


def test_from_mul_table_catches_nonassociative():
    # a quasigroup table that is not associative
    table = [
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0],
    ]
    with pytest.raises(MalformedInput):
        gr.from_mul_table(table)


def test_subgroup_closure_examples():
    g = s3()
    assert gr.subgroup_closure(g, []).order == 1
    assert gr.subgroup_closure(g, list(range(6))).order == 6
    three_cycle = next(x for x in range(6) if g.order_of(x) == 3)
    assert gr.subgroup_closure(g, [three_cycle]).order == 3


def test_all_subgroups_cyclic_prime():
    for p in (2, 3, 5, 7):
        assert len(gr.all_subgroups(gr.cyclic(p))) == 2


def test_all_subgroups_s3():
    subs = gr.all_subgroups(s3())
    assert [s.order for s in subs] == [1, 2, 2, 2, 3, 6]
    classes = gr.conjugacy_classes_of_subgroups(s3())
    assert [(rep.order, size) for rep, size in classes] == [(1, 1), (2, 3), (3, 1), (6, 1)]


def test_all_subgroups_cap():
    with pytest.raises(ResourceCapExceeded):
        gr.all_subgroups(gr.cyclic(50), cap=10)


def test_all_subgroups_requires_solvable():
    a5 = gr.from_permutations([(1, 2, 0, 3, 4), (0, 1, 2, 4, 3)], "A5-ish")
    # <(012),(34)> is solvable order 6; build actual A5 via two gens
    a5 = gr.from_permutations([(1, 2, 3, 4, 0), (1, 0, 3, 2, 4)], "A5")
    assert a5.n == 60
    assert not gr.is_solvable(a5)
    with pytest.raises(UnsupportedGroup):
        gr.all_subgroups(a5)


def test_maximals_and_frattini():
    maxs = gr.maximal_subgroups(s3())
    assert sorted(m.index for m in maxs) == [2, 3, 3, 3]
    c4 = gr.cyclic(4)
    assert len(gr.maximal_subgroups(c4)) == 1
    assert gr.frattini(c4).order == 2
    sl23 = corpus.corpus_group("SL(2,3)")
    fr = gr.frattini(sl23)
    assert fr.order == 2
    center = [x for x in range(sl23.n) if all(sl23.mul(x, y) == sl23.mul(y, x) for y in range(sl23.n))]
    assert fr.members == tuple(sorted(center))


def test_frattini_of_trivial_group_is_itself():
    g = gr.cyclic(1)
    assert gr.frattini(g).order == 1


def test_core_and_socle_examples():
    g = s3()
    subs = gr.all_subgroups(g)
    a3 = next(x for x in subs if x.order == 3)
    c2 = next(x for x in subs if x.order == 2)
    y, x = gr.core_and_socle(a3, g)
    assert (y.order, x.order) == (3, 6)
    y, x = gr.core_and_socle(c2, g)
    assert (y.order, x.order) == (1, 3)
    f20 = corpus.corpus_group("F20")
    m5 = next(m for m in gr.maximal_subgroups(f20) if m.index == 5)
    y, x = gr.core_and_socle(m5, f20)
    assert (y.order, x.order) == (1, 5)


def test_core_and_socle_rejects_nonsolvable():
    a5 = gr.from_permutations([(1, 2, 3, 4, 0), (1, 0, 3, 2, 4)], "A5")
    m = gr.Subgroup(a5, gr.closure_mask(a5, [1]))
    with pytest.raises(UnsupportedGroup):
        gr.core_and_socle(m, a5)


def test_mobius_examples():
    g = s3()
    mu = gr.mobius_all(g)
    subs = gr.all_subgroups(g)
    full = subs[-1]
    assert mu[full.mask] == 1
    for m in gr.maximal_subgroups(g):
        assert mu[m.mask] == -1
    assert mu[subs[0].mask] == 3


def test_mobius_overgroup_path_matches_lattice(corpus_list):
    for g in corpus_list[:8]:
        lattice_mu = gr.mobius_all(g)
        for s in gr.all_subgroups(g)[:6]:
            fresh = gr.OracleGroup(g.n, g._mul, g.name, g.gens)
            assert gr.mobius(gr.Subgroup(fresh, s.mask), fresh) == lattice_mu[s.mask]


def test_mobius_row_sums(corpus_list):
    for g in corpus_list:
        subs = gr.all_subgroups(g)
        mu = gr.mobius_all(g)
        full = (1 << g.n) - 1
        for h in subs:
            total = sum(mu[k.mask] for k in subs if h.mask & k.mask == h.mask)
            assert total == (1 if h.mask == full else 0), g.name


def test_nonzero_mobius_implies_maximal_intersection(corpus_list):
    for g in corpus_list:
        mu = gr.mobius_all(g)
        for s in gr.all_subgroups(g):
            if mu[s.mask] != 0:
                assert gr.is_maximal_intersection(s, g), g.name


def test_counts_s3():
    table = gr.counts(s3()).as_dict()
    assert table[2] == (1, 1, 1)
    assert table[3] == (3, 3, 3)
    assert table[6] == (0, 1, 1)


def test_counts_chain(corpus_list):
    for g in corpus_list:
        for _n, (m_n, b_n, c_n) in gr.counts(g).entries:
            assert m_n <= b_n <= c_n, g.name


def test_counts_tower_g2_maximals():
    g2 = corpus.corpus_group("tower-G2")
    table = gr.counts(g2).as_dict()
    assert table[2][0] == 1 and table[3][0] == 3 and table[5][0] == 5


def test_lattice_matches_independent_enumeration():
    # closures of all subsets of size <= 3 (plus G) find every subgroup of
    # these small groups; this is independent of the cyclic-extension walk
    from itertools import combinations

    for name in ["S3", "D8", "Q8", "C2^3", "A4", "F20", "SL(2,3)"]:
        g = corpus.corpus_group(name)
        masks = {1, (1 << g.n) - 1}
        for size in (1, 2, 3):
            for gens in combinations(range(1, g.n), size):
                masks.add(gr.closure_mask(g, gens))
        assert masks == {s.mask for s in gr.all_subgroups(g)}, name


def test_lattice_sizes_match_literature():
    # classical subgroup counts, independent of this implementation
    expected = {
        "S4": (30, 11),
        "A4": (10, 5),
        "D8": (10, 8),
        "Q8": (6, 6),
        "SL(2,3)": (15, 7),
        "C2^4": (67, 67),
        "F20": (14, 6),
    }
    for name, (n_subs, n_classes) in expected.items():
        g = corpus.corpus_group(name)
        assert len(gr.all_subgroups(g)) == n_subs, name
        assert len(gr.conjugacy_classes_of_subgroups(g)) == n_classes, name


def test_whole_group_is_the_empty_intersection():
    g = s3()
    assert gr.is_maximal_intersection(gr.Subgroup(g, (1 << g.n) - 1), g)


def test_frattini_members_are_not_maximal_intersections():
    sl23 = corpus.corpus_group("SL(2,3)")
    fr = gr.frattini(sl23)
    assert fr.order == 2
    assert not gr.is_maximal_intersection(gr.Subgroup(sl23, 1), sl23)


def test_chief_factor_complement_checks(corpus_list):
    # M cap X = Y and M X = G are asserted inside core_and_socle
    for g in corpus_list[:10]:
        for m in gr.maximal_subgroups(g):
            gr.core_and_socle(m, g)


def test_solvability_and_derived_series():
    g = corpus.corpus_group("S4")
    orders = [s.order for s in gr.derived_series(g)]
    assert orders == [24, 12, 4, 1]
    assert gr.is_solvable(g)
    assert not gr.is_nilpotent_mask(g, gr.derived_series(g)[1].mask)
    q8 = corpus.corpus_group("Q8")
    assert gr.is_nilpotent_mask(q8, (1 << q8.n) - 1)


def test_direct_product_and_semidirect():
    d = gr.direct_product(gr.cyclic(2), gr.cyclic(3))
    assert d.n == 6 and gr.is_solvable(d)
    f20 = gr.semidirect_cyclic(5, 4, 2)
    assert f20.n == 20
    with pytest.raises(MalformedInput):
        gr.semidirect_cyclic(5, 3, 2)  # 2^3 != 1 mod 5


def test_overgroups_of_trivial_is_whole_lattice():
    g = s3()
    fresh = gr.OracleGroup(g.n, g._mul, g.name, g.gens)
    over = gr.overgroups(fresh, gr.Subgroup(fresh, 1))
    assert len(over) == 6
