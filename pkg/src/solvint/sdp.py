"""Structured groups G = V^t x| H with H acting irreducibly on V and
diagonally on V^t: maximal supplements of the socle, the closed-form
intersection calculus, canonical intersection triples (U, v, Z), their
realization by explicit families of maximal subgroups, and crowns.

Multiplication convention (fixed artifact-wide, and locked by the
brute-force equivalence tests): (w1,h1)(w2,h2) = (w1^{h2} + w2, h1*h2),
so the conjugate H^v is {(v - v^h, h) : h in H}.

Groups are immutable after validation and every operation is a pure,
deterministic function of its arguments (internal caches only memoize),
so families may be canonicalized concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import groups as gr
from .errors import (
    CaseDispatchError,
    MalformedInput,
    RealizationError,
    ResourceCapExceeded,
    ValidationError,
)
from .ffla import (
    EndField,
    FieldOps,
    FpSubspace,
    Matrix,
    Vector,
    endomorphism_field,
    is_irreducible,
    mat_identity,
    mat_inv,
    mat_mod,
    mat_mul,
    nullspace,
    vec_add,
    vec_mat,
    vec_neg,
    vec_sub,
)

H_ORDER_CAP = 10000
FVECTOR_ENUM_CAP = 200000


# ---------------------------------------------------------------------------
# the acting module


class HModule:
    """A solvable matrix group H <= GL(k, p) acting faithfully and
    irreducibly on V = F_p^k, with its endomorphism field."""

    def __init__(self, p, k, gens, elements, field, fops, f_basis, name):
        self.p = p
        self.k = k
        self.gens = gens
        self.elements = elements  # identity first, rest sorted by entries
        self.index = {m: i for i, m in enumerate(elements)}
        self.gen_indices = tuple(self.index[g] for g in gens)
        self.field: EndField = field
        self.fops: FieldOps = fops
        self.f_basis = f_basis  # F-basis of V, deterministic
        self.f_dim = k // field.degree
        self.name = name
        self._oracle = None

    @classmethod
    def create(cls, p: int, k: int, gens, name: str = "H", max_order: int = H_ORDER_CAP):
        gens = tuple(mat_mod(g, p) for g in gens)
        for g in gens:
            if len(g) != k or any(len(row) != k for row in g):
                raise MalformedInput(f"generator is not {k}x{k}")
            mat_inv(g, p)  # raises on singular input
        identity = mat_identity(k)
        elems = _matrix_closure(gens or (identity,), p, max_order)
        elements = (identity,) + tuple(sorted(e for e in elems if e != identity))
        if not is_irreducible(gens or (identity,), p, k):
            raise ValidationError("irreducibility", "H does not act irreducibly on V")
        # faithfulness is structural for matrix groups: the only element
        # acting trivially is the identity matrix itself
        if not _matrix_group_solvable(gens, p, k, max_order):
            raise ValidationError("solvability", "H is not solvable")
        field = endomorphism_field(gens or (identity,), p, k)
        fops = FieldOps(field)
        f_basis = _f_basis_of_v(p, k, fops)
        return cls(p, k, gens, elements, field, fops, f_basis, name)

    @property
    def order(self) -> int:
        return len(self.elements)

    def act(self, v: Vector, h_idx: int) -> Vector:
        return vec_mat(v, self.elements[h_idx], self.p)

    def mul_idx(self, i: int, j: int) -> int:
        return self.index[mat_mul(self.elements[i], self.elements[j], self.p)]

    def inv_idx(self, i: int) -> int:
        return self.index[mat_inv(self.elements[i], self.p)]

    def centralizer_of(self, vectors) -> tuple[int, ...]:
        vs = [v for v in vectors if any(v)]
        return tuple(
            i for i in range(self.order) if all(self.act(v, i) == v for v in vs)
        )

    def to_oracle(self) -> gr.OracleGroup:
        if self._oracle is None:
            p = self.p

            def mul(a, b):
                return mat_mul(a, b, p)

            self._oracle = gr.from_elements(
                list(self.elements), mul, f"{self.name}-oracle",
                gen_elems=list(self.gens) or [self.elements[0]],
            )
        return self._oracle

    def v_subspace_from_fcoords(self, frows) -> FpSubspace:
        """F-subspace of V given by RREF rows over F^{f_dim} (via f_basis)."""
        vectors = []
        for row in frows:
            v = (0,) * self.k
            for pos, idx in enumerate(row):
                if idx:
                    v = vec_add(v, self.fops.act(self.f_basis[pos], idx), self.p)
            for m in self.field.basis:
                vectors.append(vec_mat(v, m, self.p))
        return FpSubspace.from_vectors(self.p, self.k, vectors)

    def all_f_subspaces(self):
        """Every F-subspace of V as an FpSubspace, deterministic order."""
        for rows in self.fops.all_subspaces(self.f_dim):
            yield self.v_subspace_from_fcoords(rows)


def _matrix_closure(gens, p, cap):
    identity = mat_identity(len(gens[0]))
    seen = {identity}
    order = [identity]
    i = 0
    while i < len(order):
        x = order[i]
        i += 1
        for g in gens:
            y = mat_mul(x, g, p)
            if y not in seen:
                seen.add(y)
                order.append(y)
                if len(order) > cap:
                    raise ResourceCapExceeded("H element closure", cap)
    return order


def _matrix_group_solvable(gens, p, k, cap) -> bool:
    current = tuple(gens)
    identity = mat_identity(k)
    for _ in range(64):
        if all(g == identity for g in current) or not current:
            return True
        comms = set()
        for a in current:
            ai = mat_inv(a, p)
            for b in current:
                bi = mat_inv(b, p)
                comms.add(mat_mul(mat_mul(ai, bi, p), mat_mul(a, b, p), p))
        # conjugation closure under the parent level
        stack = list(comms)
        conj_closed = set()
        while stack:
            x = stack.pop()
            if x in conj_closed:
                continue
            conj_closed.add(x)
            if len(conj_closed) > cap:
                raise ResourceCapExceeded("derived series closure", cap)
            for g in current:
                gi = mat_inv(g, p)
                stack.append(mat_mul(mat_mul(gi, x, p), g, p))
        nxt = tuple(sorted(conj_closed))
        if set(nxt) == set(current):
            return False
        current = nxt
    return False


def _f_basis_of_v(p, k, fops: FieldOps):
    """Greedy F-basis of V from standard vectors (deterministic)."""
    basis = []
    span = FpSubspace.zero(p, k)
    for i in range(k):
        e = tuple(1 if j == i else 0 for j in range(k))
        if not span.contains(e):
            basis.append(e)
            rows = list(span.basis)
            for m in fops.field.basis:
                rows.append(vec_mat(e, m, p))
            span = FpSubspace.from_vectors(p, k, rows)
    return tuple(basis)


# ---------------------------------------------------------------------------
# the semidirect product


class SdGroup:
    """G = V^t x| H with diagonal action of H on the t factors."""

    def __init__(self, module: HModule, t: int, name: str | None = None):
        if t < 0:
            raise MalformedInput("multiplicity t must be nonnegative")
        self.module = module
        self.t = t
        self.p = module.p
        self.k = module.k
        self.wdim = module.k * t
        self.order = module.p ** self.wdim * module.order
        self.name = name or f"V^{t}:{module.name}"
        self._cache: dict = {}

    @classmethod
    def create(cls, p: int, k: int, t: int, h_gens, name: str | None = None) -> "SdGroup":
        return cls(HModule.create(p, k, h_gens, name=f"H<GL({k},{p})"), t, name=name)

    # -- arithmetic on group elements ((w, h_idx) pairs)

    def act_w(self, w: Vector, h_idx: int) -> Vector:
        k, p = self.k, self.p
        m = self.module.elements[h_idx]
        out = []
        for b in range(self.t):
            out.extend(vec_mat(w[b * k:(b + 1) * k], m, p))
        return tuple(out)

    def mul(self, a, b):
        w1, h1 = a
        w2, h2 = b
        return (vec_add(self.act_w(w1, h2), w2, self.p), self.module.mul_idx(h1, h2))

    def inverse(self, a):
        w, h = a
        hi = self.module.inv_idx(h)
        return (vec_neg(self.act_w(w, hi), self.p), hi)

    def zero_w(self) -> Vector:
        return (0,) * self.wdim

    def full_w_space(self) -> FpSubspace:
        return FpSubspace.full(self.p, self.wdim)

    # -- submodules of V^t via F-subspaces of F^t

    def submodule_from_fvectors(self, frows) -> FpSubspace:
        """H-submodule of V^t spanned by the images of V under the maps
        x -> (x*s_1, ..., x*s_t), s running over the given F^t rows."""
        fops = self.module.fops
        p, k, t = self.p, self.k, self.t
        vectors = []
        for s in frows:
            mats = [fops.elements[idx] for idx in s]
            for j in range(k):
                e = tuple(1 if i == j else 0 for i in range(k))
                w: list[int] = []
                for i in range(t):
                    w.extend(vec_mat(e, mats[i], p))
                vectors.append(tuple(w))
        return FpSubspace.from_vectors(p, self.wdim, vectors)

    def fvectors_of_submodule(self, W: FpSubspace):
        """F-RREF basis of the F-subspace of F^t corresponding to W; raises
        if W is not an H-submodule of V^t.  Results are cached per W."""
        fvec_cache = self._cache.setdefault("fvec", {})
        cached = fvec_cache.get(W)
        if cached is not None:
            return cached
        fops = self.module.fops
        q, t, k, p = fops.q, self.t, self.k, self.p
        if q**t > FVECTOR_ENUM_CAP:
            raise ResourceCapExceeded("F^t vector enumeration", FVECTOR_ENUM_CAP)
        from itertools import product as iter_product

        members = []
        for s in iter_product(range(q), repeat=t):
            mats = [fops.elements[idx] for idx in s]
            ok = True
            for j in range(k):
                e = tuple(1 if i == j else 0 for i in range(k))
                w: list[int] = []
                for i in range(t):
                    w.extend(vec_mat(e, mats[i], p))
                if not W.contains(tuple(w)):
                    ok = False
                    break
            if ok:
                members.append(s)
        rows, _ = fops.f_rref(members, t)
        if self.submodule_from_fvectors(rows) != W:
            raise RealizationError("subspace is not an H-submodule of V^t")
        fvec_cache[W] = rows
        return rows

    def maximal_submodules(self) -> list[FpSubspace]:
        cached = self._cache.get("maximal_submodules")
        if cached is None:
            fops = self.module.fops
            fvec_cache = self._cache.setdefault("fvec", {})
            cached = []
            for rows in fops.hyperplanes(self.t):
                w = self.submodule_from_fvectors(rows)
                fvec_cache.setdefault(w, rows)
                cached.append(w)
            self._cache["maximal_submodules"] = cached
        return list(cached)

    def fixed_space_over(self, W: FpSubspace) -> FpSubspace:
        """{v in V^t : v^h - v in W for every h}; contains W, and equals W
        whenever H acts nontrivially (faithful irreducible, |H| > 1)."""
        cache = self._cache.setdefault("fixed_over", {})
        cached = cache.get(W)
        if cached is not None:
            return cached
        p, n = self.p, self.wdim
        if n == 0 or not self.module.gen_indices:
            result = self.full_w_space()
        else:
            eq_rows = []
            for g in self.module.gen_indices:
                reds = []
                for i in range(n):
                    e = tuple(1 if c == i else 0 for c in range(n))
                    reds.append(W.reduce(vec_sub(self.act_w(e, g), e, p)))
                for j in range(n):
                    eq_rows.append(tuple(reds[i][j] for i in range(n)))
            kernel = nullspace(eq_rows, p, n)
            result = FpSubspace.from_vectors(p, n, list(W.basis) + kernel)
        cache[W] = result
        return result


# ---------------------------------------------------------------------------
# descriptors


@dataclass(frozen=True)
class MaximalSupplement:
    """M = W * H^v with W a maximal H-submodule of V^t; the translate is the
    canonical coset representative, so descriptor equality is subgroup
    equality."""

    submodule: FpSubspace
    translate: Vector


@dataclass(frozen=True)
class PartialIntersection:
    """A subgroup W * X^v with X <= H given by sorted element indices."""

    submodule: FpSubspace
    h_indices: tuple[int, ...]
    translate: Vector


@dataclass(frozen=True)
class CanonicalIntersection:
    """The triple (U, v, Z) representing U * C_{H^v}(Z)."""

    submodule: FpSubspace
    translate: Vector
    z_space: FpSubspace

    @property
    def z_f_dim_times_degree(self) -> int:
        return self.z_space.dim


def enumerate_maximal_supplements(G: SdGroup) -> list[MaximalSupplement]:
    """All maximal subgroups of G supplementing V^t, deduplicated by
    canonical descriptor."""
    from itertools import product as iter_product

    out = []
    seen = set()
    p = G.p
    for W in G.maximal_submodules():
        fixed = G.fixed_space_over(W)
        free_positions = [c for c in range(G.wdim) if c not in W.pivots]
        for fill in iter_product(range(p), repeat=len(free_positions)):
            v = [0] * G.wdim
            for c, val in zip(free_positions, fill):
                v[c] = val
            canon = fixed.reduce(tuple(v))
            key = (W, canon)
            if key not in seen:
                seen.add(key)
                m = MaximalSupplement(W, canon)
                if G.wdim and (G.order // (W.size() * G.module.order)) != p ** G.k:
                    raise AssertionError("maximal supplement index is not |V|")
                out.append(m)
    return out


def descriptor_elements(G: SdGroup, submodule: FpSubspace, h_indices, translate) -> set:
    """Explicit element set {(u + v - v^x, x)} of a descriptor subgroup."""
    out = set()
    vectors = list(submodule.vectors())
    for x in h_indices:
        shift = vec_sub(translate, G.act_w(translate, x), G.p)
        for u in vectors:
            out.add((vec_add(u, shift, G.p), x))
    return out


def supplement_elements(G: SdGroup, M: MaximalSupplement) -> set:
    return descriptor_elements(G, M.submodule, range(G.module.order), M.translate)


def partial_elements(G: SdGroup, K: PartialIntersection) -> set:
    return descriptor_elements(G, K.submodule, K.h_indices, K.translate)


def canonical_elements(G: SdGroup, ci: CanonicalIntersection) -> set:
    cen = centralizer_in_h(G, ci.z_space)
    return descriptor_elements(G, ci.submodule, cen, ci.translate)


def centralizer_in_h(G: SdGroup, z_space: FpSubspace) -> tuple[int, ...]:
    return G.module.centralizer_of(z_space.basis)


# ---------------------------------------------------------------------------
# the intersection calculus


def intersect_case_spanning(G: SdGroup, K: PartialIntersection,
                            M: MaximalSupplement) -> PartialIntersection:
    """K cap M when K's submodule and M's submodule together span V^t:
    the submodules intersect and the translate shifts inside K's submodule."""
    W1, W2 = K.submodule, M.submodule
    if W1.sum_with(W2).dim != G.wdim:
        raise CaseDispatchError("submodules do not span V^t; use the nested case")
    d = vec_sub(K.translate, M.translate, G.p)
    dec = W2.decompose(d, W1)
    if dec is None:
        raise CaseDispatchError("translate difference not decomposable")
    _, b = dec  # d = w2 + b with b in W1; the shift is -b
    w1 = vec_neg(b, G.p)
    new_sub = W1.intersect(W2)
    new_v = new_sub.reduce(vec_add(K.translate, w1, G.p))
    return PartialIntersection(new_sub, K.h_indices, new_v)


def intersect_case_nested(G: SdGroup, K: PartialIntersection, M: MaximalSupplement):
    """K cap M when K's submodule lies inside M's: the H-part shrinks to the
    centralizer of a vector u in a complement of M's submodule.

    Returns (descriptor, witness) where witness is the canonical F-line
    representative in V of the image of u, or None when K is unchanged.
    """
    W1, W2 = K.submodule, M.submodule
    if not W1.is_subspace_of(W2):
        raise CaseDispatchError("K's submodule is not inside M's; use the spanning case")
    fops = G.module.fops
    s2 = G.fvectors_of_submodule(W2)
    comp = fops.f_complement(s2, G.t)
    if len(comp) != 1:
        raise CaseDispatchError("M's submodule is not maximal")
    line = comp[0]
    u_sub = G.submodule_from_fvectors([line])
    d = vec_sub(M.translate, K.translate, G.p)
    dec = W2.decompose(d, u_sub)
    if dec is None:
        raise AssertionError("V^t is not W2 + U (internal complement bug)")
    _, u = dec
    z = _invert_line_embedding(G, line, u)
    cen = tuple(x for x in K.h_indices if G.module.act(z, x) == z)
    if len(cen) == len(K.h_indices):
        return K, None
    return PartialIntersection(W1, cen, K.translate), fops.canonical_line_rep(z)


def _invert_line_embedding(G: SdGroup, line, u: Vector) -> Vector:
    """Solve u = (z*l_1, ..., z*l_t) for z in V, given the F-line `line`."""
    fops = G.module.fops
    k = G.k
    pos = next(i for i, idx in enumerate(line) if idx)
    block = u[pos * k:(pos + 1) * k]
    inv_idx = fops.inv_t[line[pos]]
    return fops.act(block, inv_idx)


def intersect_supplement(G: SdGroup, K: PartialIntersection, M: MaximalSupplement):
    """Dispatch on the (always exclusive, always exhaustive) case split."""
    spanning = K.submodule.sum_with(M.submodule).dim == G.wdim
    nested = K.submodule.is_subspace_of(M.submodule)
    if spanning == nested:
        raise AssertionError("case dispatch totality violated (M not maximal?)")
    if spanning:
        return intersect_case_spanning(G, K, M), None
    return intersect_case_nested(G, K, M)


def canonicalize_intersection(G: SdGroup, supplements) -> CanonicalIntersection:
    """Closed form (U, v, Z) of an intersection of maximal supplements.

    First the descriptors whose submodule does not contain the running
    intersection are folded in (the submodule strictly decreases); the
    remaining ones only shrink the H-part, accumulating the F-span Z of
    their witnesses.
    """
    ms = list(supplements)
    if not ms:
        raise MalformedInput("canonicalize_intersection requires a nonempty family")
    cur = PartialIntersection(G.full_w_space(), tuple(range(G.module.order)), G.zero_w())
    pending = ms
    progress = True
    while progress:
        progress = False
        for i, m in enumerate(pending):
            if not cur.submodule.is_subspace_of(m.submodule):
                cur = intersect_case_spanning(G, cur, m)
                pending.pop(i)
                progress = True
                break
    witnesses = []
    for m in pending:
        cur, z = intersect_case_nested(G, cur, m)
        if z is not None:
            witnesses.append(z)
    fops = G.module.fops
    z_space = fops.f_closure(witnesses) if witnesses else FpSubspace.zero(G.p, G.k)
    if tuple(sorted(cur.h_indices)) != centralizer_in_h(G, z_space):
        raise AssertionError("H-part does not match the centralizer of Z")
    return CanonicalIntersection(cur.submodule, cur.submodule.reduce(cur.translate), z_space)


def realize_intersection(G: SdGroup, U: FpSubspace, Z: FpSubspace) -> list[MaximalSupplement]:
    """A family of exactly t* + d maximal supplements intersecting in
    U * C_H(Z), where t* is the codimension of U over F and d = dim_F Z."""
    fops = G.module.fops
    if fops.f_closure(Z.basis) != Z:
        raise MalformedInput("Z is not closed under the endomorphism field")
    s_u = G.fvectors_of_submodule(U)
    comp = fops.f_complement(s_u, G.t)
    t_star = len(comp)
    z_basis = _f_basis_of_subspace(G.module, Z)
    d = len(z_basis)
    if t_star == 0:
        if d > 0:
            raise RealizationError(
                "U = V^t admits no maximal submodule above it; cannot realize a nonzero Z"
            )
        return []
    family = []
    for i in range(t_star):
        rows = list(s_u) + [c for j, c in enumerate(comp) if j != i]
        red, _ = fops.f_rref(rows, G.t)
        w_i = G.submodule_from_fvectors(red)
        family.append(MaximalSupplement(w_i, G.zero_w()))
    if d:
        a_sub = family[0].submodule
        line = comp[0]
        fixed = G.fixed_space_over(a_sub)
        for z in z_basis:
            b = _line_embedding(G, line, z)
            family.append(MaximalSupplement(a_sub, fixed.reduce(b)))
    if len(set(family)) != t_star + d:
        raise AssertionError("realized family has duplicate descriptors")
    return family


def _line_embedding(G: SdGroup, line, z: Vector) -> Vector:
    fops = G.module.fops
    w: list[int] = []
    for idx in line:
        w.extend(fops.act(z, idx))
    return tuple(w)


def _f_basis_of_subspace(module: HModule, Z: FpSubspace) -> list[Vector]:
    """Greedy F-basis extraction from an F-closed subspace of V."""
    basis: list[Vector] = []
    span = FpSubspace.zero(module.p, module.k)
    for row in Z.basis:
        if not span.contains(row):
            basis.append(row)
            span = module.fops.f_closure(basis)
    if span != Z:
        raise MalformedInput("Z basis extraction failed (Z not F-closed?)")
    return basis


def subgroup_equal(G: SdGroup, a: CanonicalIntersection, b: CanonicalIntersection) -> bool:
    """Exact subgroup equality of two canonical triples (algebraic: sizes,
    submodules, centralizers and translate congruence)."""
    if a.submodule != b.submodule or a.z_space.dim != b.z_space.dim:
        return False
    cen_a = centralizer_in_h(G, a.z_space)
    cen_b = centralizer_in_h(G, b.z_space)
    if cen_a != cen_b:
        return False
    delta = vec_sub(a.translate, b.translate, G.p)
    return all(
        a.submodule.contains(vec_sub(delta, G.act_w(delta, x), G.p)) for x in cen_a
    )


# ---------------------------------------------------------------------------
# oracle bridge


def embed_as_oracle(G: SdGroup, cap: int = gr.DEFAULT_ORDER_CAP):
    """Explicit OracleGroup for G plus the element encoder.

    Element ids enumerate (w, h) with w in lexicographic digit order and h
    in the canonical H order, so the identity gets id 0.
    """
    if G.order > cap:
        raise ResourceCapExceeded(f"oracle embedding of |G|={G.order} exceeds the order cap", cap)
    p, wdim = G.p, G.wdim
    w_size = p**wdim
    h_size = G.module.order

    def w_id(w: Vector) -> int:
        out = 0
        for x in w:
            out = out * p + x
        return out

    def w_of_id(i: int) -> Vector:
        digits = []
        for _ in range(wdim):
            digits.append(i % p)
            i //= p
        return tuple(reversed(digits))

    w_vectors = [w_of_id(i) for i in range(w_size)]
    act = [[w_id(G.act_w(w, h)) for w in w_vectors] for h in range(h_size)]
    add = [[w_id(vec_add(w1, w2, p)) for w2 in w_vectors] for w1 in w_vectors]
    hmul = [[G.module.mul_idx(i, j) for j in range(h_size)] for i in range(h_size)]
    w_gens = [w_id(tuple(1 if j == i else 0 for j in range(wdim))) for i in range(wdim)]
    oracle = gr.oracle_from_split_tables(
        w_size, h_size, act, add, hmul, G.name,
        w_gens=[w for w in w_gens if w], h_gens=[g for g in G.module.gen_indices if g],
    )

    def encode(w: Vector, h_idx: int) -> int:
        return w_id(w) * h_size + h_idx

    return oracle, encode


# ---------------------------------------------------------------------------
# crowns (computed on oracle groups)


@dataclass
class ChiefFactorClass:
    """A class of G-isomorphic complemented chief factors, carried by the
    maximal subgroups whose socle factor realizes it."""

    label: str
    prime: int
    dim: int
    rep_core: gr.Subgroup
    rep_socle: gr.Subgroup
    action_matrices: list[Matrix]
    centralizer: gr.Subgroup
    maximals: list[gr.Subgroup]

    @property
    def module_size(self) -> int:
        return self.prime**self.dim


@dataclass
class CrownData:
    """(C_G(V), R_G(V), delta, optional direct complement D with C = R x D)."""

    v_class: ChiefFactorClass
    centralizer: gr.Subgroup
    core_r: gr.Subgroup
    delta: int
    complement: gr.Subgroup | None


def chief_factor_classes(G: gr.OracleGroup) -> list[ChiefFactorClass]:
    """Complemented chief factor classes of a solvable G, from its maximal
    subgroups, grouped by exact G-module isomorphism."""
    from .ffla import module_isomorphism

    cached = getattr(G, "_crown_classes", None)
    if cached is not None:
        return cached
    gens = G.gens or tuple(gr.small_generating_set(G))
    classes: list[ChiefFactorClass] = []
    for m in gr.maximal_subgroups(G):
        y, x = gr.core_and_socle(m, G)
        p, d, mats = gr.action_on_factor(G, x, y, gens)
        c = gr.centralizer_of_factor(G, x, y)
        placed = False
        for cls in classes:
            if cls.prime != p or cls.dim != d or cls.centralizer.mask != c.mask:
                continue
            full = FpSubspace.full(p, d)
            if module_isomorphism(full, cls.action_matrices, full, mats) is not None:
                cls.maximals.append(m)
                placed = True
                break
        if not placed:
            classes.append(
                ChiefFactorClass(
                    label=f"p{p}d{d}#{len(classes)}",
                    prime=p,
                    dim=d,
                    rep_core=y,
                    rep_socle=x,
                    action_matrices=mats,
                    centralizer=c,
                    maximals=[m],
                )
            )
    G._crown_classes = classes
    return classes


def crown(G: gr.OracleGroup, v_class: ChiefFactorClass) -> CrownData:
    """C = C_G(V), R = intersection of the maximals in the class, delta with
    |C:R| = |V|^delta, and a direct normal complement D when one exists."""
    r_mask = (1 << G.n) - 1
    for m in v_class.maximals:
        r_mask &= m.mask
    r = gr.Subgroup(G, r_mask)
    c = v_class.centralizer
    if r.mask & c.mask != r.mask:
        raise AssertionError("crown core is not inside the centralizer")
    for g in G.gens or tuple(gr.small_generating_set(G)):
        if gr.conjugate_mask(G, r.mask, g) != r.mask:
            raise AssertionError("crown core is not normal")
    quotient = c.order // r.order
    size = v_class.module_size
    delta = 0
    while quotient > 1:
        if quotient % size:
            raise AssertionError("crown size |C:R| is not a power of |V|")
        quotient //= size
        delta += 1
    gens = G.gens or tuple(gr.small_generating_set(G))
    complement = None
    target = c.order // r.order
    for s in gr.all_subgroups(G):
        if s.order != target or s.mask & ~c.mask or (s.mask & r.mask) != 1:
            continue
        if all(gr.conjugate_mask(G, s.mask, g) == s.mask for g in gens):
            complement = s
            break
    return CrownData(v_class, c, r, delta, complement)


def crown_module_check(G: gr.OracleGroup, data: CrownData) -> bool:
    """Exact check that C/R is G-isomorphic to V^delta: sizes agree and the
    conjugation action on C/R is equivalent to the delta-fold diagonal of
    the class action."""
    from .ffla import module_isomorphism

    cls = data.v_class
    p, d, delta = cls.prime, cls.dim, data.delta
    if data.centralizer.order != data.core_r.order * (p**d) ** delta:
        return False
    if delta == 0:
        return True
    pc, dc, mats_c = gr.action_on_factor(G, data.centralizer, data.core_r)
    if pc != p or dc != d * delta:
        return False
    big = []
    for m in cls.action_matrices:
        rows = []
        for block in range(delta):
            for i in range(d):
                row = [0] * (d * delta)
                for j in range(d):
                    row[block * d + j] = m[i][j]
                rows.append(tuple(row))
        big.append(tuple(rows))
    full = FpSubspace.full(p, d * delta)
    return module_isomorphism(full, mats_c, full, big) is not None


def find_corona_crown(G: gr.OracleGroup) -> CrownData:
    """A crown with a nontrivial direct complement D (exists whenever the
    Frattini subgroup is trivial)."""
    if gr.frattini(G).order != 1:
        raise ValidationError("frattini-free", "find_corona_crown requires Frattini(G) = 1")
    for cls in chief_factor_classes(G):
        data = crown(G, cls)
        if data.complement is not None and data.complement.order > 1:
            return data
    raise AssertionError("no crown with direct complement found in a Frattini-free group")


# ---------------------------------------------------------------------------
# randomized equivalence suite (seeded, deterministic)


def random_submodule(G: SdGroup, rng) -> FpSubspace:
    fops = G.module.fops
    dim = rng.randrange(G.t + 1)
    rows = [tuple(rng.randrange(fops.q) for _ in range(G.t)) for _ in range(dim)]
    red, _ = fops.f_rref(rows, G.t)
    return G.submodule_from_fvectors(red)


def random_partial(G: SdGroup, rng) -> PartialIntersection:
    w = random_submodule(G, rng)
    seeds = [rng.randrange(G.module.order) for _ in range(rng.randrange(1, 3))]
    # subgroup closure over element indices
    x_set = {0}
    frontier = list(seeds)
    while frontier:
        a = frontier.pop()
        if a in x_set:
            continue
        x_set.add(a)
        for b in list(x_set):
            for c in (G.module.mul_idx(a, b), G.module.mul_idx(b, a)):
                if c not in x_set:
                    frontier.append(c)
    v = tuple(rng.randrange(G.p) for _ in range(G.wdim))
    return PartialIntersection(w, tuple(sorted(x_set)), v)


def random_case_suite(pool, pair_cases: int, family_cases: int, seed: int,
                      family_max: int = 5):
    """Seeded equivalence checks of the closed-form calculus against
    elementwise brute force.  Returns (pairs_checked, families_checked,
    failures) where failures is a list of diagnostics (empty on success)."""
    import random as _random

    rng = _random.Random(seed)
    failures = []
    supplements = {id(g): enumerate_maximal_supplements(g) for g in pool}
    for case in range(pair_cases):
        g = pool[rng.randrange(len(pool))]
        k_desc = random_partial(g, rng)
        m = supplements[id(g)][rng.randrange(len(supplements[id(g)]))]
        result, _witness = intersect_supplement(g, k_desc, m)
        brute = partial_elements(g, k_desc) & supplement_elements(g, m)
        if brute != partial_elements(g, result):
            failures.append(("pair", case, g.name))
    for case in range(family_cases):
        g = pool[rng.randrange(len(pool))]
        avail = supplements[id(g)]
        size = rng.randrange(1, family_max + 1)
        family = [avail[rng.randrange(len(avail))] for _ in range(size)]
        ci = canonicalize_intersection(g, family)
        brute = supplement_elements(g, family[0])
        for m in family[1:]:
            brute &= supplement_elements(g, m)
        if brute != canonical_elements(g, ci):
            failures.append(("family", case, g.name))
    return pair_cases, family_cases, failures


# ---------------------------------------------------------------------------
# group-spec ingestion (shared wire format with the CLI)


def sdgroup_from_spec(doc: dict) -> SdGroup:
    """Build and validate an SdGroup from its structured document; raises
    SchemaError for shape problems and ValidationError (named invariant)
    for group-theoretic ones."""
    from .errors import SchemaError

    for key in ("p", "k", "t", "h_gens"):
        if key not in doc:
            raise SchemaError(f"sdp spec is missing '{key}'")
    p, k, t = doc["p"], doc["k"], doc["t"]
    if not (isinstance(p, int) and p >= 2 and all(p % d for d in range(2, int(p**0.5) + 1))):
        raise SchemaError("p must be prime")
    if not (isinstance(k, int) and k >= 1 and isinstance(t, int) and t >= 0):
        raise SchemaError("k must be >= 1 and t >= 0")
    gens = doc["h_gens"]
    if not isinstance(gens, list) or not all(
        isinstance(g, list) and all(isinstance(r, list) for r in g) for g in gens
    ):
        raise SchemaError("h_gens must be a list of integer matrices")
    mats = [tuple(tuple(int(x) for x in row) for row in g) for g in gens]
    return SdGroup.create(p, k, t, mats, name=doc.get("name"))
