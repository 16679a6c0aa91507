"""Brute-force ground truth: full subgroup enumeration and direct
fixed-coset tables of marks for small groups.

Enumeration is bottom-up join closure: class representatives are
extended by cyclic subgroups of prime-power order (zuppos) and
deduplicated up to conjugacy; orbits are expanded afterwards for the
full subgroup list.  Every mark is computed straight from the
definition (fixed cosets), independent of the extension engine.

`subgroup_classes_search` extends the same idea to groups beyond the
brute cap whose proper subgroups are all solvable (e.g. L2(32)): every
proper subgroup is then reachable by prime-cyclic extensions inside
normalizers, and the group itself is appended at the end.
"""

from __future__ import annotations

from dataclasses import dataclass

from .groups import (
    CapExceededError,
    PermGroup,
    Subgroup,
    close_elements,
    join_normalizing,
    normalizer,
    quotient_group,
    subgroup_class_id,
    trivial_subgroup,
    whole_subgroup,
    SET_CAP,
)
from .marks import (
    PatternClass,
    PatternStats,
    SubgroupPattern,
    mark_fixed_cosets,
)
from .extension import rewrap
from .perms import conj, order_of, power

DEFAULT_CAP = 2000


@dataclass
class LatticeDump:
    """All subgroups of a group, partitioned into conjugacy classes."""

    subgroups: list[Subgroup]
    classes: list[list[int]]   # indices into subgroups, one list per class

    @property
    def class_count(self) -> int:
        return len(self.classes)


def _is_prime_power(n: int) -> bool:
    if n < 2:
        return False
    p = 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            return n == 1
        p += 1
    return True


def zuppos(G: PermGroup) -> list[tuple[tuple[int, ...], frozenset]]:
    """Cyclic subgroups of prime-power order, as (generator, elements)."""
    out = []
    seen = set()
    for x in G.sorted_elements():
        n = order_of(x)
        if not _is_prime_power(n):
            continue
        elems = frozenset(power(x, k) for k in range(n))
        if elems in seen:
            continue
        seen.add(elems)
        out.append((x, elems))
    return out


def all_subgroup_classes_brute(G: PermGroup,
                               cap: int = DEFAULT_CAP) -> list[Subgroup]:
    """Transversal of the subgroup classes by join closure with zuppos.

    Deterministic; the result is sorted by subgroup order with
    first-construction tie-breaks.
    """
    if G.order > cap:
        raise CapExceededError(
            f"group order {G.order} exceeds the brute cap {cap}")
    triv = trivial_subgroup(G)
    reps = [triv]
    known = {subgroup_class_id(G, triv)}
    zups = zuppos(G)
    qi = 0
    while qi < len(reps):
        H = reps[qi]
        qi += 1
        helems = H.elements()
        for x, _zel in zups:
            if x in helems:
                continue
            elems = join_normalizing(helems, H.gens, x)
            if elems is None:
                elems = close_elements(H.gens + (x,), G.degree, seed=helems)
            K = Subgroup(G, H.gens + (x,), elems=elems)
            cid = subgroup_class_id(G, K)
            if cid not in known:
                known.add(cid)
                reps.append(K)
    reps.sort(key=lambda h: h.order)
    return reps


def all_subgroups_brute(G: PermGroup, cap: int = DEFAULT_CAP) -> LatticeDump:
    """Every subgroup exactly once, grouped into conjugacy classes."""
    reps = all_subgroup_classes_brute(G, cap)
    subgroups: list[Subgroup] = []
    classes: list[list[int]] = []
    for rep in reps:
        cid = subgroup_class_id(G, rep)
        cls = G._sub_classes[cid]
        idxs = []
        for fp, g in cls.transversal.items():
            idxs.append(len(subgroups))
            gens = tuple(conj(x, g) for x in cls.rep.gens)
            subgroups.append(Subgroup(G, gens, elems=fp))
        classes.append(idxs)
    return LatticeDump(subgroups=subgroups, classes=classes)


def table_of_marks_brute(G: PermGroup,
                         cap: int = DEFAULT_CAP) -> SubgroupPattern:
    """Pattern of G with every entry counted over an explicit coset
    transversal (the package's independent oracle)."""
    reps = all_subgroup_classes_brute(G, cap)
    classes = []
    for rep in reps:
        cid = subgroup_class_id(G, rep)
        length = G._sub_classes[cid].size
        classes.append(PatternClass(
            rep=rep, order=rep.order, length=length,
            normalizer_order=G.order // length))
    rows = []
    for i, ki in enumerate(classes):
        row = []
        k_normal = ki.length == 1
        for j in range(i + 1):
            hj = classes[j]
            if ki.order % hj.order:
                row.append(0)
            else:
                row.append(mark_fixed_cosets(G, ki.rep, hj.rep,
                                             k_normal=k_normal))
        rows.append(row)
    return SubgroupPattern(group=G, classes=classes, rows=rows,
                           stats=PatternStats())


# ---------------------------------------------------------------------------
# class-level search past the brute cap


def _rational_prime_reps(W: PermGroup, q: int, skip=None):
    """One element per rational class of order-q elements of W.

    Rational class: closed under conjugacy and prime-to-q powers, so
    two elements are equivalent exactly when they generate conjugate
    subgroups of order q.  ``skip`` filters elements out entirely.
    """
    seen: set = set()
    out = []
    for w in W.sorted_elements():
        if w in seen or order_of(w) != q:
            continue
        if skip is not None and skip(w):
            continue
        orbit = [power(w, k) for k in range(1, q)]
        oset = set(orbit)
        qi = 0
        while qi < len(orbit):
            x = orbit[qi]
            qi += 1
            for g in W.gens:
                y = conj(x, g)
                if y not in oset:
                    oset.add(y)
                    orbit.append(y)
        seen |= oset
        out.append(w)
    return out


def subgroup_classes_search(G: PermGroup, *,
                            quotient_cap: int = 300_000) -> list[Subgroup]:
    """Transversal of the subgroup classes via prime-cyclic extensions.

    Grows every class upward inside normalizer quotients, one prime at
    a time, starting from the trivial subgroup; the whole group is
    appended at the end.  This reaches every subgroup with a normal
    subgroup of prime index, hence is complete whenever every proper
    subgroup of G is solvable (the intended use: groups like L2(32)
    whose lattice is far beyond the brute cap).
    """
    triv = trivial_subgroup(G)
    reps = [triv]
    known = {subgroup_class_id(G, triv)}
    qi = 0
    while qi < len(reps):
        H = reps[qi]
        qi += 1
        if H.order == G.order:
            continue
        N = normalizer(G, H)
        index = N.order // H.order
        if index == 1:
            continue
        if H.order == 1:
            W: PermGroup = N.as_group()
            lift = lambda w: w  # noqa: E731
        else:
            if index > quotient_cap:
                raise CapExceededError(
                    f"normalizer quotient of order {index} over the cap")
            W, lift = quotient_group(N.as_group(), rewrap(N.as_group(), H))
        primes = sorted({p for p in _prime_divisors(W.order)})
        for q in primes:
            for w in _rational_prime_reps(W, q):
                t = lift(w)
                if H.order * q <= SET_CAP:
                    elems = join_normalizing(H.elements(), H.gens, t)
                    assert elems is not None
                    K = Subgroup(G, H.gens + (t,), elems=elems)
                else:
                    K = Subgroup(G, H.gens + (t,))
                assert K.order == q * H.order
                cid = subgroup_class_id(G, K)
                if cid not in known:
                    known.add(cid)
                    reps.append(K)
    if all(h.order != G.order for h in reps):
        whole = whole_subgroup(G)
        known.add(subgroup_class_id(G, whole))
        reps.append(whole)
    reps.sort(key=lambda h: h.order)
    return reps


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


# ---------------------------------------------------------------------------
# pattern comparison


@dataclass
class MatchReport:
    matched: bool
    permutation: list[int] | None
    detail: str

    def __bool__(self) -> bool:
        return self.matched


def compare_patterns(a: SubgroupPattern, b: SubgroupPattern) -> MatchReport:
    """Match two patterns up to a permutation of classes.

    Succeeds when some permutation of b's classes makes the tables
    equal cell by cell with matched representatives conjugate in the
    common ambient group.  Candidates are pruned by (order, class
    length, diagonal, first column); conjugacy then pins the match.
    """
    G = a.group
    if a.n != b.n:
        return MatchReport(False, None, f"class counts differ: {a.n} != {b.n}")
    if a.group.order != b.group.order or a.group.degree != b.group.degree:
        return MatchReport(False, None, "ambient groups differ")
    if not all(G.contains(g) for g in b.group.gens):
        return MatchReport(False, None, "ambient groups differ as sets")

    def key(p: SubgroupPattern, i: int):
        c = p.classes[i]
        return (c.order, c.length, p.rows[i][i], p.rows[i][0])

    buckets: dict = {}
    for j in range(b.n):
        buckets.setdefault(key(b, j), []).append(j)
    perm: list[int | None] = [None] * a.n
    used: set[int] = set()
    from .groups import are_conjugate_subgroups
    for i in range(a.n):
        found = None
        for j in buckets.get(key(a, i), []):
            if j in used:
                continue
            if are_conjugate_subgroups(
                    G, rewrap(G, a.classes[i].rep),
                    rewrap(G, b.classes[j].rep)) is not None:
                found = j
                break
        if found is None:
            return MatchReport(False, None,
                               f"no conjugate partner for class {i}")
        perm[i] = found
        used.add(found)
    for i in range(a.n):
        for j in range(i + 1):
            if a.rows[i][j] != b.cell(perm[i], perm[j]):
                return MatchReport(
                    False, None,
                    f"cell ({i},{j}): {a.rows[i][j]} != "
                    f"{b.cell(perm[i], perm[j])}")
    return MatchReport(True, [int(x) for x in perm], "match")
