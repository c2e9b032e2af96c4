import random

import pytest

from solvint import corpus, sdp
from solvint import groups as gr
from solvint.errors import (
    CaseDispatchError,
    MalformedInput,
    RealizationError,
    ValidationError,
)
from solvint.ffla import FpSubspace


def g_f5_c4(t=1):
    return sdp.SdGroup.create(5, 1, t, [((2,),)])


def g_s3():
    return sdp.SdGroup.create(3, 1, 1, [((2,),)])


def test_create_validates_invariants():
    with pytest.raises(ValidationError) as err:
        sdp.SdGroup.create(5, 2, 1, [((2, 0), (0, 2))])
    assert err.value.invariant == "irreducibility"
    with pytest.raises(MalformedInput):
        sdp.SdGroup.create(5, 2, 1, [((1, 0), (1, 0))])  # singular generator


def test_multiplication_convention():
    g = g_s3()
    a = ((1,), 0)
    b = ((0,), 1)
    # (w1, h1)(w2, h2) = (w1^{h2} + w2, h1 h2)
    w, h = g.mul(a, b)
    assert w == (2,) and h == 1
    ident = ((0,), 0)
    for x in [a, b, g.mul(a, b)]:
        assert g.mul(x, g.inverse(x)) == ident
        assert g.mul(g.inverse(x), x) == ident


def test_enumerate_maximal_supplements_counts():
    assert len(sdp.enumerate_maximal_supplements(g_f5_c4(1))) == 5
    assert len(sdp.enumerate_maximal_supplements(g_s3())) == 3
    assert len(sdp.enumerate_maximal_supplements(g_f5_c4(2))) == 30


def test_supplements_are_maximal_in_oracle():
    g = g_s3()
    oracle, encode = sdp.embed_as_oracle(g)
    maximal_masks = {m.mask for m in gr.maximal_subgroups(oracle)}
    for m in sdp.enumerate_maximal_supplements(g):
        mask = 0
        for w, h in sdp.supplement_elements(g, m):
            mask |= 1 << encode(w, h)
        assert mask in maximal_masks


def test_supplement_enumeration_is_complete():
    # every oracle maximal not containing the socle appears in the list
    for g in [g_s3(), g_f5_c4(1), g_f5_c4(2),
              sdp.SdGroup.create(3, 2, 1, [((0, 2), (1, 0))]),
              sdp.SdGroup.create(2, 2, 2, [((1, 1), (1, 0))])]:
        oracle, encode = sdp.embed_as_oracle(g)
        socle = 0
        for w in FpSubspace.full(g.p, g.wdim).vectors():
            socle |= 1 << encode(w, 0)
        oracle_sups = {m.mask for m in gr.maximal_subgroups(oracle)
                       if m.mask & socle != socle}
        enumerated = set()
        for m in sdp.enumerate_maximal_supplements(g):
            mask = 0
            for w, h in sdp.supplement_elements(g, m):
                mask |= 1 << encode(w, h)
            enumerated.add(mask)
        assert enumerated == oracle_sups, g.name


def test_case_spanning_spec_example():
    g2 = g_f5_c4(2)
    w1 = FpSubspace.from_vectors(5, 2, [(1, 0)])
    w2 = FpSubspace.from_vectors(5, 2, [(0, 1)])
    all_h = tuple(range(4))
    # same translates: K cap M = H
    k = sdp.PartialIntersection(w1, all_h, (0, 0))
    m = sdp.MaximalSupplement(w2, (0, 0))
    res = sdp.intersect_case_spanning(g2, k, m)
    assert res.submodule.dim == 0 and res.translate == (0, 0)
    assert sdp.partial_elements(g2, res) == (
        sdp.partial_elements(g2, k) & sdp.supplement_elements(g2, m)
    )
    # shifted translate: witness w1 solved inside W1
    k = sdp.PartialIntersection(w1, all_h, (0, 1))
    res = sdp.intersect_case_spanning(g2, k, m)
    assert sdp.partial_elements(g2, res) == (
        sdp.partial_elements(g2, k) & sdp.supplement_elements(g2, m)
    )


def test_case_dispatch_guard():
    g2 = g_f5_c4(2)
    w2 = FpSubspace.from_vectors(5, 2, [(0, 1)])
    k = sdp.PartialIntersection(w2, tuple(range(4)), (0, 0))
    m = sdp.MaximalSupplement(w2, (0, 0))
    with pytest.raises(CaseDispatchError):
        sdp.intersect_case_spanning(g2, k, m)  # W1 = W2 cannot span
    w1 = FpSubspace.from_vectors(5, 2, [(1, 0)])
    k = sdp.PartialIntersection(w1, tuple(range(4)), (0, 0))
    with pytest.raises(CaseDispatchError):
        sdp.intersect_case_nested(g2, k, m)  # W1 not inside W2


def test_case_nested_spec_example():
    g = g_f5_c4(1)
    zero = FpSubspace.zero(5, 1)
    k = sdp.PartialIntersection(zero, tuple(range(4)), (0,))
    m = sdp.MaximalSupplement(zero, (1,))
    res, witness = sdp.intersect_case_nested(g, k, m)
    assert res.h_indices == (0,)
    assert witness is not None
    assert len(sdp.partial_elements(g, res)) == 1
    assert sdp.partial_elements(g, res) == (
        sdp.partial_elements(g, k) & sdp.supplement_elements(g, m)
    )
    # same coset: unchanged
    res2, witness2 = sdp.intersect_case_nested(g, k, sdp.MaximalSupplement(zero, (0,)))
    assert res2 == k and witness2 is None


def test_canonicalize_single_supplement():
    g = g_f5_c4(1)
    for m in sdp.enumerate_maximal_supplements(g):
        ci = sdp.canonicalize_intersection(g, [m])
        assert ci.submodule == m.submodule
        assert ci.z_space.dim == 0
        assert sdp.canonical_elements(g, ci) == sdp.supplement_elements(g, m)


def test_canonicalize_rejects_empty():
    with pytest.raises(MalformedInput):
        sdp.canonicalize_intersection(g_f5_c4(1), [])


def test_canonicalize_pair_spec_example():
    g = g_f5_c4(1)
    ms = sdp.enumerate_maximal_supplements(g)
    m0 = next(m for m in ms if m.translate == (0,))
    m1 = next(m for m in ms if m.translate == (1,))
    ci = sdp.canonicalize_intersection(g, [m0, m1])
    assert ci.submodule.dim == 0 and ci.z_space == FpSubspace.full(5, 1)
    assert sdp.centralizer_in_h(g, ci.z_space) == (0,)


def test_canonicalize_matches_bruteforce_random(sdp_pool):
    rng = random.Random(4242)
    small = [g for g in sdp_pool if g.order <= 600]
    sups = {id(g): sdp.enumerate_maximal_supplements(g) for g in small}
    for _ in range(150):
        g = small[rng.randrange(len(small))]
        avail = sups[id(g)]
        fam = [avail[rng.randrange(len(avail))] for _ in range(rng.randrange(1, 6))]
        ci = sdp.canonicalize_intersection(g, fam)
        brute = sdp.supplement_elements(g, fam[0])
        for m in fam[1:]:
            brute &= sdp.supplement_elements(g, m)
        assert brute == sdp.canonical_elements(g, ci)


def test_realize_spec_examples():
    g = g_f5_c4(1)
    # U = V^t, Z = 0: the empty family (meaning G)
    assert sdp.realize_intersection(g, FpSubspace.full(5, 1), FpSubspace.zero(5, 1)) == []
    # U = V^t with nonzero Z is flagged
    with pytest.raises(RealizationError):
        sdp.realize_intersection(g, FpSubspace.full(5, 1), FpSubspace.full(5, 1))
    # U = 0, Z = F_5: two descriptors with translates 0 and 1
    fam = sdp.realize_intersection(g, FpSubspace.zero(5, 1), FpSubspace.full(5, 1))
    assert len(fam) == 2 and {m.translate for m in fam} == {(0,), (1,)}
    # t = 2, U a coordinate line, Z = 0: a single descriptor
    g2 = g_f5_c4(2)
    u = FpSubspace.from_vectors(5, 2, [(1, 0)])
    fam = sdp.realize_intersection(g2, u, FpSubspace.zero(5, 1))
    assert len(fam) == 1 and fam[0].submodule == u


def test_realize_round_trip_enumerated():
    # every (U, Z) pair in a few small instances
    instances = [
        g_f5_c4(1), g_f5_c4(2),
        sdp.SdGroup.create(3, 1, 2, [((2,),)]),
        sdp.SdGroup.create(3, 2, 1, [((0, 2), (1, 0))]),
        sdp.SdGroup.create(2, 2, 2, [((1, 1), (1, 0))]),
    ]
    for g in instances:
        fops = g.module.fops
        u_list = [g.submodule_from_fvectors(rows) for rows in fops.all_subspaces(g.t)]
        z_list = [g.module.v_subspace_from_fcoords(rows)
                  for rows in g.module.fops.all_subspaces(g.module.f_dim)]
        for u in u_list:
            t_star = g.t - u.dim // g.k
            for z in z_list:
                d = z.dim // g.module.field.degree
                if t_star == 0 and d > 0:
                    with pytest.raises(RealizationError):
                        sdp.realize_intersection(g, u, z)
                    continue
                fam = sdp.realize_intersection(g, u, z)
                if t_star == 0 and d == 0:
                    assert fam == []
                    continue
                assert len(fam) == t_star + d
                ci = sdp.canonicalize_intersection(g, fam)
                expected = sdp.descriptor_elements(
                    g, u, sdp.centralizer_in_h(g, z), g.zero_w()
                )
                assert sdp.canonical_elements(g, ci) == expected


def test_realize_family_size_is_tstar_plus_d():
    g2 = g_f5_c4(2)
    u = FpSubspace.zero(5, 2)
    z = FpSubspace.full(5, 1)
    fam = sdp.realize_intersection(g2, u, z)
    assert len(fam) == 2 + 1  # t* = 2, d = 1


def test_embed_as_oracle_examples():
    oracle, _ = sdp.embed_as_oracle(g_s3())
    assert oracle.n == 6
    assert sorted(oracle.order_of(x) for x in range(6)) == [1, 2, 2, 2, 3, 3]
    h_only = sdp.SdGroup(g_f5_c4(1).module, 0)
    o2, _ = sdp.embed_as_oracle(h_only)
    assert o2.n == 4
    o3, _ = sdp.embed_as_oracle(g_f5_c4(1))
    assert o3.n == 20
    assert sorted({o3.order_of(x) for x in range(20)}) == [1, 2, 4, 5]


def test_index_law():
    for g in [g_f5_c4(2), sdp.SdGroup.create(3, 2, 2, [((0, 2), (1, 0))])]:
        v_size = g.p**g.k
        for m in sdp.enumerate_maximal_supplements(g):
            assert g.order // (m.submodule.size() * g.module.order) == v_size


def test_crown_g2_spec_example(tower2):
    oracle = tower2.embed_as_oracle()
    classes = sdp.chief_factor_classes(oracle)
    cls5 = next(c for c in classes if c.prime == 5)
    data = sdp.crown(oracle, cls5)
    assert data.centralizer.order == 15       # V_1 x V_2
    assert data.core_r.order == 3             # V_1
    assert data.delta == 1
    assert data.complement is not None and data.complement.order == 5
    assert sdp.crown_module_check(oracle, data)


def test_crown_s3_and_f20():
    s3, _ = sdp.embed_as_oracle(g_s3())
    cls3 = next(c for c in sdp.chief_factor_classes(s3) if c.prime == 3)
    data = sdp.crown(s3, cls3)
    assert (data.centralizer.order, data.core_r.order, data.delta) == (3, 1, 1)
    assert data.complement.order == 3
    f20, _ = sdp.embed_as_oracle(g_f5_c4(1))
    cls5 = next(c for c in sdp.chief_factor_classes(f20) if c.prime == 5)
    data = sdp.crown(f20, cls5)
    assert data.delta == 1 and data.core_r.order == 1
    assert sdp.crown_module_check(f20, data)
    # |G/R| = |V|^delta * |G/C|
    assert (f20.n // data.core_r.order
            == cls5.module_size**data.delta * (f20.n // data.centralizer.order))


def test_find_corona_crown_requires_frattini_free():
    c4 = gr.cyclic(4)
    with pytest.raises(ValidationError):
        sdp.find_corona_crown(c4)


def test_corona_and_sotto_on_corpus(corpus_list):
    for g in corpus_list:
        if gr.frattini(g).order != 1:
            continue
        data = sdp.find_corona_crown(g)
        d_sub = data.complement
        r_sub = data.core_r
        assert d_sub.order > 1
        assert (d_sub.mask & r_sub.mask) == 1
        assert d_sub.order * r_sub.order == data.centralizer.order
        # if KD = KR = G then K = G
        for k in gr.all_subgroups(g):
            kd = k.order * d_sub.order // (k.mask & d_sub.mask).bit_count()
            kr = k.order * r_sub.order // (k.mask & r_sub.mask).bit_count()
            if kd == g.n and kr == g.n:
                assert k.order == g.n, g.name


def test_crown_module_check_corpus(corpus_list):
    for g in corpus_list[:12]:
        for cls in sdp.chief_factor_classes(g):
            assert sdp.crown_module_check(g, sdp.crown(g, cls)), g.name


def test_random_case_suite_seeded(sdp_pool):
    pairs, fams, failures = sdp.random_case_suite(sdp_pool, 120, 120, seed=7)
    assert (pairs, fams) == (120, 120)
    assert failures == []


def test_canonicalize_is_order_invariant(sdp_pool):
    # different input orders give the same subgroup (and the same U)
    rng = random.Random(31337)
    small = [g for g in sdp_pool if g.order <= 400]
    for _ in range(60):
        g = small[rng.randrange(len(small))]
        avail = sdp.enumerate_maximal_supplements(g)
        fam = [avail[rng.randrange(len(avail))] for _ in range(rng.randrange(2, 6))]
        ci = sdp.canonicalize_intersection(g, fam)
        shuffled = fam[:]
        rng.shuffle(shuffled)
        ci2 = sdp.canonicalize_intersection(g, shuffled)
        assert ci2.submodule == ci.submodule
        assert sdp.subgroup_equal(g, ci, ci2)
        assert sdp.canonical_elements(g, ci) == sdp.canonical_elements(g, ci2)


def test_trivial_acting_group_edge():
    # H = 1 forces k = 1 and G = V^t elementary abelian; translates of each
    # hyperplane collapse to a single maximal subgroup
    g = sdp.SdGroup(sdp.HModule.create(2, 1, []), 2)
    ms = sdp.enumerate_maximal_supplements(g)
    assert len(ms) == 3
    assert all(m.translate == (0, 0) for m in ms)
    ci = sdp.canonicalize_intersection(g, ms)
    assert ci.submodule.dim == 0 and ci.z_space.dim == 0
    assert sdp.canonical_elements(g, ci) == {((0, 0), 0)}


def test_sdgroup_from_spec_schema():
    from solvint.errors import SchemaError

    with pytest.raises(SchemaError):
        sdp.sdgroup_from_spec({"kind": "sdp", "p": 4, "k": 1, "t": 1, "h_gens": [[[1]]]})
    with pytest.raises(SchemaError):
        sdp.sdgroup_from_spec({"p": 5})
    g = sdp.sdgroup_from_spec({"kind": "sdp", "p": 5, "k": 1, "t": 2, "h_gens": [[[2]]]})
    assert g.order == 100
