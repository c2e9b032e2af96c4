"""Brute-force oracle for finite groups.

Groups are multiplication tables over dense element ids 0..n-1 with the
identity at id 0; subgroups are bitmasks over element ids.  Everything here
is exact: subgroup lattices by cyclic extension, conjugacy classes of
subgroups, Moebius values, and the index-counting tables built on them.

Tables and subgroups are immutable; derived data (lattice, Moebius values,
power tables) is memoized on the group in per-key dicts whose inserts are
atomic under the interpreter lock, and every public result is returned in
canonical order, so concurrent readers observe the single-threaded answer.
"""

from __future__ import annotations

import random
from array import array
from dataclasses import dataclass

from .errors import MalformedInput, ResourceCapExceeded, UnsupportedGroup

DEFAULT_ORDER_CAP = 5000
OVERGROUP_NODE_CAP = 10**4


def mask_bits(mask: int):
    """Yield the set bit positions of a mask, ascending."""
    while mask:
        lsb = mask & -mask
        yield lsb.bit_length() - 1
        mask ^= lsb


class OracleGroup:
    """A finite group given by its full multiplication table."""

    def __init__(self, n: int, mul_flat: array, name: str, gens: tuple[int, ...]):
        self.n = n
        self.name = name
        self._mul = mul_flat
        self.gens = gens
        inv = array("i", [0] * n)
        for a in range(n):
            row = a * n
            for b in range(n):
                if mul_flat[row + b] == 0:
                    inv[a] = b
                    break
            else:
                raise MalformedInput(f"element {a} has no inverse")
        self._inv = inv
        self._cache: dict = {}

    # -- elementary operations

    def mul(self, a: int, b: int) -> int:
        return self._mul[a * self.n + b]

    def inv(self, a: int) -> int:
        return self._inv[a]

    def conj(self, x: int, g: int) -> int:
        m = self._mul
        n = self.n
        return m[m[self._inv[g] * n + x] * n + g]

    def power(self, a: int, e: int) -> int:
        result = 0
        base = a
        m = self._mul
        n = self.n
        while e:
            if e & 1:
                result = m[result * n + base]
            base = m[base * n + base]
            e >>= 1
        return result

    def order_of(self, a: int) -> int:
        k = 1
        x = a
        while x != 0:
            x = self.mul(x, a)
            k += 1
        return k

    def elements(self) -> range:
        return range(self.n)

    def commutator(self, a: int, b: int) -> int:
        return self.mul(self.mul(self._inv[a], self._inv[b]), self.mul(a, b))

    def power_table(self, e: int) -> array:
        key = ("pow", e)
        tab = self._cache.get(key)
        if tab is None:
            tab = array("i", [self.power(g, e) for g in range(self.n)])
            self._cache[key] = tab
        return tab

    def __repr__(self):
        return f"OracleGroup({self.name}, order={self.n})"


@dataclass(frozen=True)
class Subgroup:
    """A subgroup as a membership bitmask over element ids."""

    group: OracleGroup
    mask: int

    @property
    def order(self) -> int:
        return self.mask.bit_count()

    @property
    def index(self) -> int:
        return self.group.n // self.order

    @property
    def members(self) -> tuple[int, ...]:
        return tuple(mask_bits(self.mask))

    def contains(self, other: "Subgroup") -> bool:
        return self.mask | other.mask == self.mask

    def __repr__(self):
        return f"Subgroup(order={self.order} of {self.group.name})"


# ---------------------------------------------------------------------------
# constructors


def _spot_check_table(G: OracleGroup) -> None:
    n = G.n
    for j in range(n):
        if G.mul(0, j) != j or G.mul(j, 0) != j:
            raise MalformedInput("row/column 0 is not an identity")
    if n <= 128:
        triples = ((a, b, c) for a in range(n) for b in range(n) for c in range(n))
    else:
        rng = random.Random(0xA55)
        triples = ((rng.randrange(n), rng.randrange(n), rng.randrange(n)) for _ in range(100000))
    for a, b, c in triples:
        if G.mul(G.mul(a, b), c) != G.mul(a, G.mul(b, c)):
            raise MalformedInput(f"associativity fails on ({a},{b},{c})")


def from_mul_table(table, name: str = "table-group") -> OracleGroup:
    """Build from an explicit n x n table; group axioms are verified
    (associativity exhaustively for n <= 128, 10^5 seeded random triples
    above that)."""
    n = len(table)
    flat = array("i")
    for row in table:
        if len(row) != n:
            raise MalformedInput("multiplication table is not square")
        for x in row:
            if not 0 <= int(x) < n:
                raise MalformedInput("table entry out of range")
        flat.extend(int(x) for x in row)
    G = OracleGroup(n, flat, name, gens=())
    _spot_check_table(G)
    G_gens = small_generating_set(G)
    G.gens = tuple(G_gens)
    return G


def from_elements(elems, mul_fn, name: str, gen_elems=()) -> OracleGroup:
    """Build from hashable element objects (identity first) and a closed
    multiplication function; the law is trusted (constructive)."""
    index = {e: i for i, e in enumerate(elems)}
    if len(index) != len(elems):
        raise MalformedInput("duplicate elements")
    n = len(elems)
    flat = array("i", [0] * (n * n))
    for i, a in enumerate(elems):
        row = i * n
        for j, b in enumerate(elems):
            product = mul_fn(a, b)
            if product not in index:
                raise MalformedInput("multiplication is not closed over the given elements")
            flat[row + j] = index[product]
    gens = tuple(index[g] for g in gen_elems)
    G = OracleGroup(n, flat, name, gens)
    if not gens:
        G.gens = tuple(small_generating_set(G))
    return G


def _closure_of_objects(gens, mul_fn, identity, cap=20000):
    seen = {identity}
    order = [identity]
    i = 0
    while i < len(order):
        x = order[i]
        i += 1
        for g in gens:
            y = mul_fn(x, g)
            if y not in seen:
                seen.add(y)
                order.append(y)
                if len(order) > cap:
                    raise ResourceCapExceeded("element closure", cap)
    return order


def from_permutations(perm_gens, name: str) -> OracleGroup:
    """Group generated by permutations given as tuples (images of 0..d-1)."""
    degree = len(perm_gens[0])
    identity = tuple(range(degree))

    def compose(a, b):  # apply a then b
        return tuple(b[a[i]] for i in range(degree))

    elems = _closure_of_objects([tuple(g) for g in perm_gens], compose, identity)
    ordered = [identity] + sorted(e for e in elems if e != identity)
    return from_elements(ordered, compose, name, gen_elems=[tuple(g) for g in perm_gens])


def from_matrices(mat_gens, p: int, name: str) -> OracleGroup:
    """Group generated by invertible matrices over F_p."""
    from .ffla import mat_identity, mat_mod, mat_mul

    k = len(mat_gens[0])
    gens = [mat_mod(g, p) for g in mat_gens]
    identity = mat_identity(k)

    def mul(a, b):
        return mat_mul(a, b, p)

    elems = _closure_of_objects(gens, mul, identity)
    ordered = [identity] + sorted(e for e in elems if e != identity)
    return from_elements(ordered, mul, name, gen_elems=gens)


def cyclic(m: int, name: str | None = None) -> OracleGroup:
    flat = array("i", [0] * (m * m))
    for a in range(m):
        for b in range(m):
            flat[a * m + b] = (a + b) % m
    gens = (1,) if m > 1 else ()
    return OracleGroup(m, flat, name or f"C{m}", gens)


def direct_product(A: OracleGroup, B: OracleGroup, name: str | None = None) -> OracleGroup:
    n = A.n * B.n
    nb = B.n
    flat = array("i", [0] * (n * n))
    for a1 in range(A.n):
        for b1 in range(nb):
            x = a1 * nb + b1
            row = x * n
            for a2 in range(A.n):
                arow = A._mul[a1 * A.n + a2] * nb
                for b2 in range(nb):
                    flat[row + a2 * nb + b2] = arow + B._mul[b1 * nb + b2]
    gens = tuple(g * nb for g in A.gens) + tuple(B.gens)
    return OracleGroup(n, flat, name or f"{A.name}x{B.name}", gens)


def semidirect_cyclic(n_order: int, h_order: int, action_exp: int,
                      name: str | None = None) -> OracleGroup:
    """C_n as a module for C_h, with the chosen generator acting x -> s*x.

    Multiplication follows the right-action convention
    (v1,e1)(v2,e2) = (v1*s^e2 + v2, e1+e2).
    """
    s = action_exp % n_order
    if pow(s, h_order, n_order) != 1 % n_order:
        raise MalformedInput("action exponent order does not divide |H|")
    act = [[(w * pow(s, e, n_order)) % n_order for w in range(n_order)] for e in range(h_order)]
    add = [[(w1 + w2) % n_order for w2 in range(n_order)] for w1 in range(n_order)]
    return oracle_from_split_tables(
        n_order, h_order, act, add,
        [[(e1 + e2) % h_order for e2 in range(h_order)] for e1 in range(h_order)],
        name or f"C{n_order}:C{h_order}",
        w_gens=[1] if n_order > 1 else [],
        h_gens=[1] if h_order > 1 else [],
    )


def oracle_from_split_tables(w_size: int, h_size: int, act, add, hmul, name: str,
                             w_gens=(), h_gens=()) -> OracleGroup:
    """Assemble a semidirect product W x| H oracle from small tables.

    Element id = w*h_size + h; act[h][w] is the action of h on w; the group
    law is (w1,h1)(w2,h2) = (act[h2][w1] + w2, h1*h2).
    """
    n = w_size * h_size
    flat = array("i", [0] * (n * n))
    for w1 in range(w_size):
        for h1 in range(h_size):
            a = w1 * h_size + h1
            base = a * n
            hrow = hmul[h1]
            for h2 in range(h_size):
                aw_row = add[act[h2][w1]]
                hh = hrow[h2]
                off = base + h2
                for w2 in range(w_size):
                    flat[off + w2 * h_size] = aw_row[w2] * h_size + hh
    gens = tuple(w * h_size for w in w_gens) + tuple(h_gens)
    return OracleGroup(n, flat, name, gens)


# ---------------------------------------------------------------------------
# closures and elementary subgroup machinery


def closure_mask(G: OracleGroup, gen_ids) -> int:
    """Subgroup generated by the given element ids, as a mask."""
    mul = G._mul
    n = G.n
    mask = 1
    members = [0]
    gen_list = [g for g in gen_ids if g != 0]
    for g in gen_list:
        if not (mask >> g) & 1:
            mask |= 1 << g
            members.append(g)
    i = 0
    while i < len(members):
        x = members[i]
        i += 1
        row = x * n
        for g in gen_list:
            y = mul[row + g]
            if not (mask >> y) & 1:
                mask |= 1 << y
                members.append(y)
    return mask


def subgroup_closure(G: OracleGroup, gen_ids) -> Subgroup:
    """Smallest subgroup containing the given elements."""
    for g in gen_ids:
        if not 0 <= g < G.n:
            raise MalformedInput(f"element id {g} out of range")
    return Subgroup(G, closure_mask(G, gen_ids))


def conjugate_mask(G: OracleGroup, mask: int, g: int) -> int:
    out = 0
    for x in mask_bits(mask):
        out |= 1 << G.conj(x, g)
    return out


def greedy_generators(G: OracleGroup, mask: int) -> list[int]:
    """A short generating list for the subgroup given by `mask`."""
    gens: list[int] = []
    cur = 1
    for x in mask_bits(mask):
        if not (cur >> x) & 1:
            gens.append(x)
            cur = closure_mask(G, gens)
            if cur == mask:
                break
    return gens


def small_generating_set(G: OracleGroup) -> list[int]:
    cached = G._cache.get("gens_small")
    if cached is None:
        cached = greedy_generators(G, (1 << G.n) - 1)
        G._cache["gens_small"] = cached
    return cached


def normal_closure_mask(G: OracleGroup, seed_ids, ambient_gens) -> int:
    """Normal closure of the seeds under conjugation by the ambient gens."""
    conj_closed = set()
    stack = list(seed_ids)
    while stack:
        x = stack.pop()
        if x in conj_closed:
            continue
        conj_closed.add(x)
        for g in ambient_gens:
            stack.append(G.conj(x, g))
    return closure_mask(G, conj_closed)


def derived_mask(G: OracleGroup, mask: int) -> int:
    gens = greedy_generators(G, mask)
    comms = {G.commutator(a, b) for a in gens for b in gens}
    return normal_closure_mask(G, comms, gens)


def derived_series(G: OracleGroup) -> list[Subgroup]:
    cached = G._cache.get("derived_series")
    if cached is None:
        full = (1 << G.n) - 1
        series = [full]
        while True:
            nxt = derived_mask(G, series[-1])
            if nxt == series[-1]:
                break
            series.append(nxt)
            if nxt == 1:
                break
        cached = series
        G._cache["derived_series"] = cached
    return [Subgroup(G, m) for m in cached]


def is_solvable(G: OracleGroup) -> bool:
    return derived_series(G)[-1].mask == 1


def is_nilpotent_mask(G: OracleGroup, mask: int) -> bool:
    """Lower central series test for the subgroup given by `mask`."""
    s_gens = greedy_generators(G, mask)
    cur = mask
    while cur != 1:
        k_gens = greedy_generators(G, cur)
        comms = {G.commutator(a, b) for a in k_gens for b in s_gens}
        nxt = normal_closure_mask(G, comms, s_gens)
        if nxt == cur:
            return False
        cur = nxt
    return True


# ---------------------------------------------------------------------------
# the subgroup lattice


def all_subgroups(G: OracleGroup, cap: int = DEFAULT_ORDER_CAP) -> list[Subgroup]:
    """Every subgroup of a solvable G, canonically ordered.

    Cyclic extension: each subgroup T has a normal subgroup of prime index,
    so the lattice is generated bottom-up by adjoining normalizing elements
    g with g^p inside the current subgroup.
    """
    cached = G._cache.get("lattice")
    if cached is None:
        if G.n > cap:
            raise ResourceCapExceeded(f"all_subgroups on |G|={G.n} exceeds the order cap", cap)
        if not is_solvable(G):
            raise UnsupportedGroup("subgroup lattice enumeration requires a solvable group")
        n = G.n
        mul = G._mul
        records: dict[int, tuple[tuple[int, ...], tuple[int, ...]]] = {1: ((0,), ())}
        queue = [1]
        qi = 0
        while qi < len(queue):
            s_mask = queue[qi]
            qi += 1
            s_members, s_gens = records[s_mask]
            s_order = len(s_members)
            quotient = n // s_order
            for p in _prime_divisors(quotient):
                pow_p = G.power_table(p)
                local_cover = 0
                for g in range(1, n):
                    if (s_mask >> g) & 1 or (local_cover >> g) & 1:
                        continue
                    if not (s_mask >> pow_p[g]) & 1:
                        continue
                    if any(not (s_mask >> G.conj(s, g)) & 1 for s in s_gens):
                        continue
                    t_mask = s_mask
                    new_members = []
                    x = g
                    for _ in range(1, p):
                        for s in s_members:
                            y = mul[s * n + x]
                            t_mask |= 1 << y
                            new_members.append(y)
                        x = mul[x * n + g]
                    local_cover |= t_mask
                    if t_mask in records:
                        continue
                    records[t_mask] = (
                        tuple(sorted(s_members + tuple(new_members))),
                        s_gens + (g,),
                    )
                    queue.append(t_mask)
        ordered = sorted(records, key=lambda m: (m.bit_count(), records[m][0]))
        G._cache["lattice"] = ordered
        G._cache["lattice_gens"] = {m: records[m][1] for m in ordered}
    else:
        ordered = cached
    return [Subgroup(G, m) for m in ordered]


def _prime_divisors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def maximal_subgroups(G: OracleGroup, cap: int = DEFAULT_ORDER_CAP) -> list[Subgroup]:
    cached = G._cache.get("maximals")
    if cached is None:
        subs = [s.mask for s in all_subgroups(G, cap)]
        full = subs[-1]
        maximals = []
        for s in subs:
            if s == full:
                continue
            if any(t != full and t != s and s & t == s for t in subs if t.bit_count() > s.bit_count()):
                continue
            maximals.append(s)
        cached = maximals
        G._cache["maximals"] = cached
    return [Subgroup(G, m) for m in cached]


def frattini(G: OracleGroup, cap: int = DEFAULT_ORDER_CAP) -> Subgroup:
    """Intersection of all maximal subgroups (G itself when |G| = 1)."""
    if G.n == 1:
        return Subgroup(G, 1)
    mask = (1 << G.n) - 1
    for m in maximal_subgroups(G, cap):
        mask &= m.mask
    return Subgroup(G, mask)


def conjugacy_classes_of_subgroups(G: OracleGroup, cap: int = DEFAULT_ORDER_CAP):
    """Class representatives (canonically least) with their class sizes."""
    cached = G._cache.get("classes")
    if cached is None:
        subs = all_subgroups(G, cap)
        gens = G.gens or tuple(small_generating_set(G))
        seen: set[int] = set()
        classes = []
        for s in subs:
            if s.mask in seen:
                continue
            orbit = {s.mask}
            stack = [s.mask]
            while stack:
                m = stack.pop()
                for g in gens:
                    c = conjugate_mask(G, m, g)
                    if c not in orbit:
                        orbit.add(c)
                        stack.append(c)
            seen |= orbit
            classes.append((s.mask, len(orbit)))
        G._cache["classes"] = classes
        cached = classes
    return [(Subgroup(G, m), size) for m, size in cached]


# ---------------------------------------------------------------------------
# Moebius function


def mobius_all(G: OracleGroup, cap: int = DEFAULT_ORDER_CAP) -> dict[int, int]:
    """mu(H, G) for every subgroup mask, via the full lattice."""
    cached = G._cache.get("mobius_all")
    if cached is None:
        subs = [s.mask for s in all_subgroups(G, cap)]
        full = subs[-1]
        by_desc = sorted(subs, key=lambda m: -m.bit_count())
        mu: dict[int, int] = {}
        for m in by_desc:
            if m == full:
                mu[m] = 1
                continue
            acc = 0
            for t in by_desc:
                if t.bit_count() > m.bit_count() and m & t == m:
                    acc += mu[t]
            mu[m] = -acc
        G._cache["mobius_all"] = mu
        cached = mu
    return dict(cached)


def overgroups(G: OracleGroup, H: Subgroup, node_cap: int = OVERGROUP_NODE_CAP) -> list[Subgroup]:
    """All subgroups K with H <= K <= G, by coset-transversal closure (does
    not require the full lattice)."""
    h_gens = tuple(greedy_generators(G, H.mask))
    n = G.n
    found = {H.mask}
    queue = [H.mask]
    qi = 0
    while qi < len(queue):
        k_mask = queue[qi]
        qi += 1
        k_gens = h_gens if k_mask == H.mask else tuple(greedy_generators(G, k_mask))
        covered = k_mask
        for g in range(1, n):
            if (covered >> g) & 1:
                continue
            t_mask = _closure_above(G, k_mask, k_gens, g, node_cap)
            covered |= _coset_mask(G, k_mask, g)
            if t_mask not in found:
                found.add(t_mask)
                queue.append(t_mask)
                if len(found) > node_cap:
                    raise ResourceCapExceeded("overgroup lattice nodes", node_cap)
    return [Subgroup(G, m) for m in sorted(found, key=lambda m: (m.bit_count(), m))]


def _coset_mask(G: OracleGroup, k_mask: int, g: int) -> int:
    out = 0
    mul = G._mul
    n = G.n
    for x in mask_bits(k_mask):
        out |= 1 << mul[x * n + g]
    return out


def _closure_above(G: OracleGroup, k_mask: int, k_gens, g: int, node_cap: int) -> int:
    """<K, g> via right-coset BFS over K."""
    mul = G._mul
    n = G.n
    k_members = list(mask_bits(k_mask))
    t_mask = k_mask
    gens = tuple(k_gens) + (g,)
    stack = list(gens)
    cosets = 1
    while stack:
        x = stack.pop()
        if (t_mask >> x) & 1:
            continue
        for m in k_members:
            t_mask |= 1 << mul[m * n + x]
        cosets += 1
        if cosets > node_cap:
            raise ResourceCapExceeded("coset closure nodes", node_cap)
        for h in gens:
            stack.append(mul[x * n + h])
    return t_mask


def mobius(H: Subgroup, G: OracleGroup) -> int:
    """mu(H, G) over the subgroup lattice.

    Uses the cached full lattice when available, otherwise recurses over the
    overgroup lattice of H only (usable above the all-subgroups cap).
    """
    if H.group is not G:
        raise MalformedInput("subgroup belongs to a different group")
    if "mobius_all" in G._cache or "lattice" in G._cache:
        return mobius_all(G)[H.mask]
    over = overgroups(G, H)
    full = (1 << G.n) - 1
    mu: dict[int, int] = {}
    for K in sorted((o.mask for o in over), key=lambda m: -m.bit_count()):
        if K == full:
            mu[K] = 1
            continue
        mu[K] = -sum(mu[t] for t in mu if t != K and K & t == K)
    return mu[H.mask]


# ---------------------------------------------------------------------------
# maximal intersections and counting tables


def is_maximal_intersection(H: Subgroup, G: OracleGroup, cap: int = DEFAULT_ORDER_CAP) -> bool:
    """True iff H equals the intersection of the maximal subgroups above it
    (the empty intersection is G, so G itself qualifies)."""
    mask = (1 << G.n) - 1
    for m in maximal_subgroups(G, cap):
        if m.mask & H.mask == H.mask:
            mask &= m.mask
    return mask == H.mask


@dataclass(frozen=True)
class CountTable:
    """Per-index counts: n -> (maximals, nonzero-Moebius, maximal-intersections)."""

    entries: tuple[tuple[int, tuple[int, int, int]], ...]

    def as_dict(self) -> dict[int, tuple[int, int, int]]:
        return dict(self.entries)


def counts(G: OracleGroup, cap: int = DEFAULT_ORDER_CAP) -> CountTable:
    """m_n, b_n, c_n for every index n > 1 dividing |G| (proper subgroups
    only; a maximal subgroup is the intersection of the family containing
    just itself)."""
    subs = all_subgroups(G, cap)
    mu = mobius_all(G, cap)
    maximal_masks = {m.mask for m in maximal_subgroups(G, cap)}
    full = (1 << G.n) - 1
    divisors = sorted(d for d in range(2, G.n + 1) if G.n % d == 0)
    table = {d: [0, 0, 0] for d in divisors}
    for s in subs:
        if s.mask == full:
            continue
        idx = s.index
        row = table[idx]
        if s.mask in maximal_masks:
            row[0] += 1
        if mu[s.mask] != 0:
            row[1] += 1
        if is_maximal_intersection(s, G, cap):
            row[2] += 1
    entries = tuple((d, tuple(table[d])) for d in divisors)
    for _, (m_n, b_n, c_n) in entries:
        if not (m_n <= b_n <= c_n):
            raise AssertionError("count chain m_n <= b_n <= c_n violated (internal bug)")
    return CountTable(entries)


# ---------------------------------------------------------------------------
# cores, socles and chief-factor machinery


def normal_core(G: OracleGroup, M: Subgroup) -> Subgroup:
    """Intersection of all conjugates of M."""
    gens = G.gens or tuple(small_generating_set(G))
    orbit = {M.mask}
    stack = [M.mask]
    while stack:
        m = stack.pop()
        for g in gens:
            c = conjugate_mask(G, m, g)
            if c not in orbit:
                orbit.add(c)
                stack.append(c)
    core = (1 << G.n) - 1
    for m in orbit:
        core &= m
    return Subgroup(G, core)


def core_and_socle(M: Subgroup, G: OracleGroup) -> tuple[Subgroup, Subgroup]:
    """(Y, X) where Y is the core of the maximal subgroup M and X/Y is the
    unique minimal normal subgroup of the primitive quotient G/Y."""
    if not is_solvable(G):
        raise UnsupportedGroup("core_and_socle requires a solvable group")
    y = normal_core(G, M)
    gens = G.gens or tuple(small_generating_set(G))
    g0 = next(g for g in range(G.n) if not (y.mask >> g) & 1)
    x_mask = normal_closure_mask(G, [g0] + greedy_generators(G, y.mask), gens)
    improved = True
    while improved:
        improved = False
        for g in mask_bits(x_mask & ~y.mask):
            cand = normal_closure_mask(G, [g] + greedy_generators(G, y.mask), gens)
            if cand.bit_count() < x_mask.bit_count():
                x_mask = cand
                improved = True
                break
    x = Subgroup(G, x_mask)
    # chief factor sanity: M complements X/Y
    if x.mask & M.mask != y.mask:
        raise AssertionError("socle does not meet M in the core")
    if closure_mask(G, greedy_generators(G, M.mask) + greedy_generators(G, x.mask)) != (1 << G.n) - 1:
        raise AssertionError("M does not supplement the socle")
    return y, x


def factor_prime_dim(G: OracleGroup, X: Subgroup, Y: Subgroup) -> tuple[int, int]:
    size = X.order // Y.order
    ps = _prime_divisors(size)
    if len(ps) != 1:
        raise MalformedInput("factor is not of prime-power order")
    p = ps[0]
    d = 0
    while size > 1:
        size //= p
        d += 1
    return p, d


def action_on_factor(G: OracleGroup, X: Subgroup, Y: Subgroup, gens=None):
    """Conjugation action of G on the elementary abelian factor X/Y.

    Returns (p, d, matrices) with one d x d matrix over F_p per generator
    (G.gens by default); the factor is coordinatized deterministically.
    """
    if gens is None:
        gens = G.gens or tuple(small_generating_set(G))
    p, d = factor_prime_dim(G, X, Y)
    y_members = Y.members
    mul = G._mul
    n = G.n

    def rep(x: int) -> int:
        return min(mul[y * n + x] for y in y_members)

    reps = sorted({rep(x) for x in X.members})
    vec_of: dict[int, tuple[int, ...]] = {reps[0]: (0,) * d}
    if rep(0) != reps[0]:
        raise AssertionError("identity coset is not canonical-least")
    basis: list[int] = []
    for r in reps:
        if r in vec_of:
            continue
        basis.append(r)
        i = len(basis) - 1
        current = list(vec_of.items())
        x_pow = r
        for j in range(1, p):
            for s, v in current:
                t = rep(mul[s * n + x_pow])
                w = list(v)
                w[i] = j
                vec_of[t] = tuple(w)
            x_pow = rep(mul[x_pow * n + r])
    if len(vec_of) != p**d:
        raise AssertionError("factor coordinatization incomplete")
    matrices = []
    for g in gens:
        rows = [vec_of[rep(G.conj(b, g))] for b in basis]
        matrices.append(tuple(rows))
    return p, d, matrices


def centralizer_of_factor(G: OracleGroup, X: Subgroup, Y: Subgroup) -> Subgroup:
    """Elements g with [X, g] <= Y."""
    x_gens = greedy_generators(G, X.mask)
    mask = 0
    for g in range(G.n):
        if all((Y.mask >> G.mul(G.inv(x), G.conj(x, g))) & 1 for x in x_gens):
            mask |= 1 << g
    return Subgroup(G, mask)
