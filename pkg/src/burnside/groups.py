"""Permutation-group kernel: stabilizer chains, subgroups, conjugacy machinery.

Groups are given by generators.  A deterministic Schreier-Sims chain
(base points chosen smallest-moved-first, orbits in BFS discovery
order) backs order and membership, so every computation in the package
is reproducible run to run.

Subgroups of a common ambient group carry their element sets whenever
the order is at most SET_CAP; conjugacy of subgroups is resolved by
orbit enumeration with per-class caches stored on the ambient group.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .perms import (
    Perm,
    conj,
    identity_tuple,
    inv,
    mul,
    order_of,
)
from .perms import power as perm_power

# subgroups up to this order keep an explicit element set (used for
# fingerprints, fast membership and coset canonicalisation)
SET_CAP = 5000

# elements() refuses beyond this, to keep accidental blowups loud
ELEMENTS_CAP = 250_000


class NotSolvableError(ValueError):
    """Raised when a solvable-only algorithm meets a non-solvable group."""


class CapExceededError(ValueError):
    """A configured size cap was exceeded."""


# ---------------------------------------------------------------------------
# stabilizer chain


def _orbit_rebuild(level: dict, degree: int) -> None:
    base = level["base"]
    orbit = {base: identity_tuple(degree)}
    queue = [base]
    qi = 0
    gens = level["gens"]
    while qi < len(queue):
        pt = queue[qi]
        qi += 1
        u = orbit[pt]
        for s in gens:
            q = s[pt]
            if q not in orbit:
                orbit[q] = mul(u, s)
                queue.append(q)
    level["orbit"] = orbit


def _chain_sift(levels: list[dict], g: tuple[int, ...]) -> tuple[int, ...]:
    for lv in levels:
        u = lv["orbit"].get(g[lv["base"]])
        if u is None:
            return g
        g = mul(g, inv(u))
    return g


def build_chain(gens, degree: int) -> list[dict]:
    """Deterministic Schreier-Sims; returns the list of chain levels.

    Level i holds the strong generators fixing the first i base points,
    so the generator lists are nested: a sifted residue is installed at
    every level from where it got stuck down to the first base it moves.
    """
    idn = identity_tuple(degree)
    levels: list[dict] = []

    def sift_add(g: tuple[int, ...], i: int) -> None:
        for j in range(i, len(levels)):
            lv = levels[j]
            u = lv["orbit"].get(g[lv["base"]])
            if u is None:
                add_gen(g)
                return
            g = mul(g, inv(u))
        if g != idn:
            add_gen(g)

    def add_gen(h: tuple[int, ...]) -> None:
        # h enters every level whose earlier bases it fixes
        m = 0
        while m < len(levels) and h[levels[m]["base"]] == levels[m]["base"]:
            m += 1
        if m == len(levels):
            base = min(x for x in range(degree) if h[x] != x)
            levels.append({"base": base, "gens": [], "orbit": {base: idn}})
        for i in range(m + 1):
            lv = levels[i]
            lv["gens"].append(h)
            _orbit_rebuild(lv, degree)
        for i in range(m + 1):
            lv = levels[i]
            orbit = lv["orbit"]
            for pt in list(orbit):
                u = orbit[pt]
                for s in lv["gens"]:
                    sg = mul(mul(u, s), inv(orbit[s[pt]]))
                    if sg != idn:
                        sift_add(sg, i + 1)

    for g in gens:
        if g != idn:
            sift_add(g, 0)
    return levels


def _chain_order(levels: list[dict]) -> int:
    n = 1
    for lv in levels:
        n *= len(lv["orbit"])
    return n


def _chain_elements(levels: list[dict], degree: int) -> list[tuple[int, ...]]:
    elems = [identity_tuple(degree)]
    for lv in reversed(levels):
        reps = [lv["orbit"][pt] for pt in sorted(lv["orbit"])]
        elems = [mul(e, u) for u in reps for e in elems]
    return elems


# ---------------------------------------------------------------------------
# groups


class PermGroup:
    """A permutation group with a cached deterministic stabilizer chain.

    Immutable after construction; all per-group caches (elements,
    conjugacy classes, subgroup-class orbits, normalizers) are
    value-deterministic, so sharing instances across computations is
    safe and profitable.
    """

    def __init__(self, gens, degree: int):
        raw = []
        for g in gens:
            t = g.images if isinstance(g, Perm) else tuple(g)
            if len(t) != degree:
                raise ValueError("generator degree mismatch")
            if any(x != i for i, x in enumerate(t)):
                raw.append(t)
        self.degree = degree
        self.gens: tuple[tuple[int, ...], ...] = tuple(dict.fromkeys(raw))
        self.chain = build_chain(self.gens, degree)
        self.order: int = _chain_order(self.chain)
        self._elements: list[tuple[int, ...]] | None = None
        self._sorted_elements: list[tuple[int, ...]] | None = None
        self._element_classes = None
        self._class_of_element: dict | None = None
        # subgroup conjugacy caches
        self._sub_class_of: dict = {}       # fingerprint -> class id
        self._sub_classes: list = []        # class id -> _SubClass
        self._normalizers: dict = {}        # fingerprint -> Subgroup
        self._centralizers: dict = {}       # element tuple -> Subgroup

    # -- basics ------------------------------------------------------------

    @property
    def identity(self) -> tuple[int, ...]:
        return identity_tuple(self.degree)

    def contains(self, g) -> bool:
        t = g.images if isinstance(g, Perm) else tuple(g)
        if len(t) != self.degree:
            return False
        return _chain_sift(self.chain, t) == self.identity

    __contains__ = contains

    def elements(self) -> list[tuple[int, ...]]:
        """All elements, in deterministic chain order."""
        if self._elements is None:
            if self.order > ELEMENTS_CAP:
                raise CapExceededError(
                    f"group of order {self.order} exceeds element cap")
            self._elements = _chain_elements(self.chain, self.degree)
        return self._elements

    def sorted_elements(self) -> list[tuple[int, ...]]:
        if self._sorted_elements is None:
            self._sorted_elements = sorted(self.elements())
        return self._sorted_elements

    def gen_perms(self) -> list[Perm]:
        return [Perm(g) for g in self.gens]

    def __repr__(self) -> str:
        return f"PermGroup(order={self.order}, degree={self.degree})"

    # -- element conjugacy ---------------------------------------------------

    def element_classes(self):
        """Conjugacy classes of elements as (representative, size) pairs.

        Classes are ordered by element order, ties by first appearance in
        the sorted element list; the representative is the minimal tuple
        of its class.
        """
        if self._element_classes is None:
            elems = self.sorted_elements()
            class_of: dict = {}
            classes = []
            for x in elems:
                if x in class_of:
                    continue
                orbit = [x]
                seen = {x}
                qi = 0
                while qi < len(orbit):
                    y = orbit[qi]
                    qi += 1
                    for g in self.gens:
                        z = conj(y, g)
                        if z not in seen:
                            seen.add(z)
                            orbit.append(z)
                cid = len(classes)
                classes.append((x, len(orbit)))
                for y in orbit:
                    class_of[y] = cid
            ordering = sorted(range(len(classes)),
                              key=lambda i: (order_of(classes[i][0]), i))
            remap = {old: new for new, old in enumerate(ordering)}
            self._element_classes = [classes[i] for i in ordering]
            self._class_of_element = {x: remap[c] for x, c in class_of.items()}
        return self._element_classes

    def class_of_element(self, x: tuple[int, ...]) -> int:
        self.element_classes()
        return self._class_of_element[x]


def group_of(sub: "Subgroup") -> PermGroup:
    """Promote a subgroup handle to a standalone PermGroup."""
    return sub.as_group()


class Subgroup:
    """A subgroup of an ambient PermGroup, given by generators.

    Carries the exact element set when the order is at most SET_CAP;
    otherwise membership falls back to a stabilizer chain.
    """

    __slots__ = ("ambient", "gens", "order", "_elems", "_group", "_fp",
                 "_profile")

    def __init__(self, ambient: PermGroup, gens, *, elems=None, check=False):
        raw = []
        for g in gens:
            t = g.images if isinstance(g, Perm) else tuple(g)
            if len(t) != ambient.degree:
                raise ValueError("generator degree mismatch")
            if any(x != i for i, x in enumerate(t)):
                raw.append(t)
        self.ambient = ambient
        self.gens = tuple(dict.fromkeys(raw))
        if check:
            for t in self.gens:
                if not ambient.contains(t):
                    raise ValueError("generator outside the ambient group")
        self._group = None
        self._fp = None
        self._profile = None
        if elems is not None:
            self._elems = frozenset(elems)
            self.order = len(self._elems)
        else:
            elems = close_elements(self.gens, ambient.degree, cap=SET_CAP)
            if elems is not None:
                self._elems = frozenset(elems)
                self.order = len(self._elems)
            else:
                self._elems = None
                self._group = PermGroup(self.gens, ambient.degree)
                self.order = self._group.order

    def as_group(self) -> PermGroup:
        if self._group is None:
            self._group = PermGroup(self.gens, self.ambient.degree)
        return self._group

    def elements(self) -> frozenset:
        if self._elems is None:
            self._elems = frozenset(self.as_group().elements())
        return self._elems

    def sorted_elements(self) -> list[tuple[int, ...]]:
        return sorted(self.elements())

    def contains(self, g) -> bool:
        t = g.images if isinstance(g, Perm) else tuple(g)
        if self._elems is not None:
            return t in self._elems
        return self.as_group().contains(t)

    __contains__ = contains

    def fingerprint(self):
        """Hashable identity key: the element set for small subgroups.

        Big subgroups fall back to a generator-based key, which is only
        unique per handle; class identification treats them separately.
        """
        if self._fp is None:
            if self.order <= SET_CAP:
                self._fp = self.elements()
            else:
                self._fp = ("big", self.order, tuple(sorted(self.gens)))
        return self._fp

    def order_profile(self):
        """Sorted multiset of element orders (small subgroups only)."""
        if self._profile is None:
            counts: dict[int, int] = {}
            for x in self.elements():
                o = order_of(x)
                counts[o] = counts.get(o, 0) + 1
            self._profile = tuple(sorted(counts.items()))
        return self._profile

    def is_subset_of(self, other: "Subgroup") -> bool:
        return all(g in other for g in self.gens)

    def same_subgroup(self, other: "Subgroup") -> bool:
        return (self.order == other.order
                and self.is_subset_of(other))

    def conjugated(self, g: tuple[int, ...]) -> "Subgroup":
        gens = [conj(x, g) for x in self.gens]
        if self._elems is not None and self.order <= SET_CAP:
            return Subgroup(self.ambient, gens,
                            elems=[conj(x, g) for x in self._elems])
        return Subgroup(self.ambient, gens)

    def is_normal_in(self, other) -> bool:
        """True iff this subgroup is normalized by all generators of other."""
        gens = other.gens if not isinstance(other, PermGroup) else other.gens
        return all(conj(x, g) in self for g in gens for x in self.gens)

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order}, degree={self.ambient.degree})"


def trivial_subgroup(G: PermGroup) -> Subgroup:
    return Subgroup(G, [], elems=[G.identity])


def whole_subgroup(G: PermGroup) -> Subgroup:
    if G.order <= SET_CAP:
        return Subgroup(G, G.gens, elems=G.elements())
    sub = Subgroup.__new__(Subgroup)
    sub.ambient = G
    sub.gens = G.gens
    sub.order = G.order
    sub._elems = None
    sub._group = G
    sub._fp = None
    sub._profile = None
    return sub


def close_elements(gens, degree, *, cap=None, seed=None):
    """Close a generating set into a full element set by BFS products.

    ``seed`` may carry already-known elements (they must lie in the
    group the generators span).  Returns a set of tuples, or None if
    ``cap`` is given and exceeded.
    """
    idn = identity_tuple(degree)
    elems = {idn}
    if seed is not None:
        elems.update(seed)
    gens = list(dict.fromkeys(g for g in gens if g != idn))
    if not gens:
        return elems
    elems.update(gens)
    frontier = list(elems)
    while frontier:
        if cap is not None and len(elems) > cap:
            return None
        new = []
        for x in frontier:
            for s in gens:
                y = mul(x, s)
                if y not in elems:
                    elems.add(y)
                    new.append(y)
        frontier = new
    return elems


def join_normalizing(h_elems: frozenset, h_gens, z: tuple[int, ...]):
    """Element set of <H, z> when z normalizes H, else None.

    With z normalizing H the join is the plain union of cosets H z^i,
    which is much cheaper than a closure BFS.
    """
    if any(conj(g, z) not in h_elems for g in h_gens):
        return None
    out = set(h_elems)
    coset = [mul(x, z) for x in h_elems]
    w = z
    while w not in h_elems:
        out.update(coset)
        coset = [mul(x, z) for x in coset]
        w = mul(w, z)
    return frozenset(out)


# ---------------------------------------------------------------------------
# orbit-stabilizer machinery


def _stabilizer_from_orbit(G: PermGroup, orbit_reps, orbit_index, act,
                           target_order: int, seed_gens) -> list:
    """Schreier generators of a point stabilizer, sifted until complete.

    orbit_reps: list of transversal elements u_i (u_0 = id), orbit_index:
    mapping node -> position, act(node, g) -> node.  Returns generators.
    """
    gens = list(dict.fromkeys(g for g in seed_gens))
    sub = PermGroup(gens, G.degree)
    if sub.order == target_order:
        return gens
    nodes = list(orbit_index)
    for i, node in enumerate(nodes):
        u = orbit_reps[i]
        for s in G.gens:
            image = act(node, s)
            v = orbit_reps[orbit_index[image]]
            sg = mul(mul(u, s), inv(v))
            if not sub.contains(sg):
                gens.append(sg)
                sub = PermGroup(gens, G.degree)
                if sub.order == target_order:
                    return gens
    if sub.order != target_order:  # pragma: no cover - orbit-stabilizer theorem
        raise RuntimeError("stabilizer reconstruction failed")
    return gens


def centralizer(G: PermGroup, x) -> Subgroup:
    """Centralizer of an element of G, as a subgroup of G."""
    t = x.images if isinstance(x, Perm) else tuple(x)
    if not G.contains(t):
        raise ValueError("element outside the group")
    cached = G._centralizers.get(t)
    if cached is not None:
        return cached
    orbit_index = {t: 0}
    reps = [G.identity]
    queue = [t]
    qi = 0
    while qi < len(queue):
        y = queue[qi]
        qi += 1
        u = reps[orbit_index[y]]
        for s in G.gens:
            z = conj(y, s)
            if z not in orbit_index:
                orbit_index[z] = len(reps)
                reps.append(mul(u, s))
                queue.append(z)
    target = G.order // len(orbit_index)
    gens = _stabilizer_from_orbit(
        G, reps, orbit_index, lambda node, s: conj(node, s), target, [t])
    result = Subgroup(G, gens)
    assert result.order == target
    G._centralizers[t] = result
    return result


@dataclass
class _SubClass:
    rep: Subgroup
    size: int
    # fingerprint -> conjugator g with rep^g == member
    transversal: dict = field(default_factory=dict)


def subgroup_class_id(G: PermGroup, H: Subgroup) -> int:
    """Conjugacy-class id of H in G, enumerating the class on first sight.

    The whole class orbit is cached on G, so later identifications of
    any member are dictionary lookups.
    """
    fp = H.fingerprint()
    cid = G._sub_class_of.get(fp)
    if cid is not None:
        return cid
    if H.order > SET_CAP:
        return _class_id_big(G, H)
    cid = len(G._sub_classes)
    cls = _SubClass(rep=H, size=0)
    G._sub_classes.append(cls)
    idn = G.identity
    queue = [fp]
    cls.transversal[fp] = idn
    G._sub_class_of[fp] = cid
    base = list(H.elements())
    qi = 0
    while qi < len(queue):
        node_fp = queue[qi]
        u = cls.transversal[node_fp]
        qi += 1
        for s in G.gens:
            w = mul(u, s)
            nfp = frozenset(conj(x, w) for x in base)
            if nfp not in cls.transversal:
                cls.transversal[nfp] = w
                G._sub_class_of[nfp] = cid
                queue.append(nfp)
    cls.size = len(cls.transversal)
    return cid


def _class_id_big(G: PermGroup, H: Subgroup) -> int:
    """Class id for subgroups above SET_CAP (generator keys per handle).

    These are almost always normal at the scales this package targets;
    a non-normal big subgroup would need a guarded orbit walk, which is
    refused beyond a small bound.
    """
    fp = H.fingerprint()
    for cid, cls in enumerate(G._sub_classes):
        if cls.rep.order == H.order and cls.rep.order > SET_CAP:
            if H.same_subgroup(cls.rep):
                G._sub_class_of[fp] = cid
                cls.transversal[fp] = G.identity
                return cid
    if not H.is_normal_in(G):
        raise CapExceededError(
            "conjugacy-class enumeration of a non-normal subgroup of order "
            f"{H.order} is above the element-set cap")
    cid = len(G._sub_classes)
    cls = _SubClass(rep=H, size=1)
    cls.transversal[fp] = G.identity
    G._sub_classes.append(cls)
    G._sub_class_of[fp] = cid
    return cid


def are_conjugate_subgroups(G: PermGroup, H: Subgroup, K: Subgroup):
    """A conjugating element g with H^g = K, or None.

    Order and element-order-profile mismatches are rejected before any
    orbit enumeration.
    """
    if H.order != K.order:
        return None
    if H.same_subgroup(K):
        return G.identity
    if H.order <= SET_CAP and H.order_profile() != K.order_profile():
        return None
    ch = subgroup_class_id(G, H)
    ck = subgroup_class_id(G, K)
    if ch != ck:
        return None
    cls = G._sub_classes[ch]
    gh = cls.transversal[H.fingerprint()]
    gk = cls.transversal[K.fingerprint()]
    # rep^gh = H, rep^gk = K  =>  H^(gh^-1 gk) = K
    return mul(inv(gh), gk)


def subgroup_class_size(G: PermGroup, H: Subgroup) -> int:
    cid = subgroup_class_id(G, H)
    return G._sub_classes[cid].size


def normalizer(G: PermGroup, H: Subgroup) -> Subgroup:
    """Normalizer of H in G via orbit-stabilizer on the conjugation orbit."""
    fp = H.fingerprint()
    cached = G._normalizers.get(fp)
    if cached is not None:
        return cached
    if not all(g in G for g in H.gens):
        raise ValueError("subgroup not inside the group")
    if H.is_normal_in(G):
        result = whole_subgroup(G)
        G._normalizers[fp] = result
        return result
    cid = subgroup_class_id(G, H)
    cls = G._sub_classes[cid]
    # re-root the class transversal at H
    g0 = cls.transversal[fp]
    node_index: dict = {}
    reps: list = []
    for nfp, g in cls.transversal.items():
        node_index[nfp] = len(reps)
        reps.append(mul(inv(g0), g))
    # reps[i] conjugates H to the i-th member; rep for H itself is identity
    small = H.order <= SET_CAP
    base = list(H.elements()) if small else list(H.gens)

    def act_node(nfp, s):
        g = mul(reps[node_index[nfp]], s)
        if small:
            return frozenset(conj(x, g) for x in base)
        return ("big", H.order, tuple(sorted(conj(x, g) for x in base)))

    target = G.order // cls.size
    gens = _stabilizer_from_orbit(
        G, reps, node_index, act_node, target, list(H.gens))
    result = Subgroup(G, gens)
    assert result.order == target
    G._normalizers[fp] = result
    return result


# ---------------------------------------------------------------------------
# coset actions and quotients


def coset_transversal(G: PermGroup, H: Subgroup) -> list[tuple[int, ...]]:
    """Deterministic transversal of the right cosets Hg, identity first."""
    index = G.order // H.order
    reps = [G.identity]
    if index == 1:
        return reps
    if H.order <= SET_CAP:
        helems = sorted(H.elements())
        seen = {min(helems)}  # canonical key: min element of the coset

        def key(g):
            return min(mul(h, g) for h in helems)
    else:
        seen = set()
        known: list[tuple[int, ...]] = []

        def key(g):
            for i, r in enumerate(known):
                if mul(g, inv(r)) in H:
                    return i
            known.append(g)
            return len(known) - 1
        key(G.identity)
        seen = {0}
    qi = 0
    while qi < len(reps):
        r = reps[qi]
        qi += 1
        for s in G.gens:
            g = mul(r, s)
            k = key(g)
            if k not in seen:
                seen.add(k)
                reps.append(g)
    assert len(reps) == index
    return reps


def coset_action(G: PermGroup, H: Subgroup, *, max_degree: int = 200_000):
    """Action of G on the cosets of H.

    Returns (image group, hom) where hom maps an element tuple of G to
    its image tuple of degree |G:H|.
    """
    index = G.order // H.order
    if index > max_degree:
        raise CapExceededError(f"coset action degree {index} over the limit")
    reps = coset_transversal(G, H)
    if H.order <= SET_CAP:
        helems = sorted(H.elements())
        label = {min(mul(h, r) for h in helems): i for i, r in enumerate(reps)}

        def label_of(g):
            return label[min(mul(h, g) for h in helems)]
    else:
        def label_of(g):
            for i, r in enumerate(reps):
                if mul(g, inv(r)) in H:
                    return i
            raise RuntimeError("coset labeling failed")

    def hom(g):
        return tuple(label_of(mul(r, g)) for r in reps)

    image = PermGroup([hom(g) for g in G.gens], index)
    return image, hom


def quotient_group(N: PermGroup, H: Subgroup):
    """Quotient W = N/H as a regular coset action, with a lift map.

    H must be normal in N.  Returns (W, lift) where lift maps a
    W-element tuple to a coset representative in N; lift of the
    identity is the identity (which lies in H).
    """
    if not H.is_normal_in(N):
        raise ValueError("subgroup is not normal")
    W, hom = coset_action(N, H)
    reps = coset_transversal(N, H)
    if W.order != N.order // H.order:  # pragma: no cover
        raise RuntimeError("quotient action is not regular")

    def lift(w: tuple[int, ...]) -> tuple[int, ...]:
        return reps[w[0]]

    return W, lift


# ---------------------------------------------------------------------------
# derived series, solvability, composition series


def normal_closure(G: PermGroup, gens) -> list[tuple[int, ...]]:
    """Generators of the normal closure of <gens> in G."""
    out = list(dict.fromkeys(gens))
    sub = PermGroup(out, G.degree)
    changed = True
    while changed:
        changed = False
        for x in list(out):
            for g in G.gens:
                y = conj(x, g)
                if not sub.contains(y):
                    out.append(y)
                    sub = PermGroup(out, G.degree)
                    changed = True
    return out


def derived_subgroup(G: PermGroup) -> PermGroup:
    comms = []
    for a in G.gens:
        for b in G.gens:
            c = mul(mul(inv(a), inv(b)), mul(a, b))
            comms.append(c)
    gens = normal_closure(G, comms)
    return PermGroup(gens, G.degree)


def derived_series(G: PermGroup, *, max_steps: int = 64) -> list[PermGroup]:
    series = [G]
    while series[-1].order > 1:
        if len(series) > max_steps:
            raise NotSolvableError("derived series did not terminate")
        nxt = derived_subgroup(series[-1])
        if nxt.order == series[-1].order:
            raise NotSolvableError(
                f"group of order {G.order} is not solvable")
        series.append(nxt)
    return series


def is_solvable(G: PermGroup) -> bool:
    try:
        derived_series(G)
        return True
    except NotSolvableError:
        return False


@dataclass
class SeriesChain:
    """A chain of prime-index normal steps from the trivial group to G."""
    terms: list[Subgroup]
    indices: list[int]

    def __post_init__(self):
        for a, b, p in zip(self.terms, self.terms[1:], self.indices):
            assert b.order == a.order * p


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        while n % d == 0:
            out.append(d)
            n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def composition_series(G: PermGroup) -> SeriesChain:
    """Composition series 1 = G_0 < G_1 < ... < G_n = G with prime steps.

    Built by refining the derived series: each abelian factor is peeled
    into prime-order steps (smallest primes first) through the quotient
    representation.
    """
    dseries = derived_series(G)  # raises NotSolvableError if not solvable
    terms = [trivial_subgroup(G)]
    indices: list[int] = []
    for step in range(len(dseries) - 1, 0, -1):
        # extend from dseries[step] up to dseries[step-1]
        bottom = terms[-1]
        top = dseries[step - 1]
        assert bottom.order == dseries[step].order
        if bottom.order == 1:
            W: PermGroup = top
            lift = lambda w: w  # noqa: E731
        else:
            W, lift = quotient_group(top, bottom)
        # peel the abelian factor W into prime steps
        cur_gens: list[tuple[int, ...]] = []
        cur = PermGroup(cur_gens, W.degree)
        for w in W.gens:
            while not cur.contains(w):
                o = 1
                x = w
                while not cur.contains(x):
                    x = mul(x, w)
                    o += 1
                p = _prime_factors(o)[0]
                step_gen = perm_power(w, o // p)
                cur_gens = cur_gens + [step_gen]
                cur = PermGroup(cur_gens, W.degree)
                lifted = terms[-1].gens + (lift(step_gen),)
                new_term = Subgroup(G, lifted)
                assert new_term.order == terms[-1].order * p, \
                    "prime refinement step failed"
                terms.append(new_term)
                indices.append(p)
        assert terms[-1].order == top.order, "factor refinement incomplete"
    assert terms[-1].order == G.order
    return SeriesChain(terms=terms, indices=indices)
