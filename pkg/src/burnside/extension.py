"""Conjugacy classes of subgroups of a group S from those of a normal
subgroup A of prime index p.

Subgroups of S split into the *inner* ones (contained in A) and the
*outer* ones (not contained in A).  Inner S-classes are unions of one
or p A-classes, decided by whether the S-normalizer leaves A; outer
classes correspond to classes of order-p subgroups of normalizer
quotients N_S(H)/H not contained in N_A(H)/H, one for each rational
class of order-p elements outside the A-part.

Iterating the step along a composition series enumerates the classes
of any solvable group starting from the trivial one.
"""

from __future__ import annotations

from dataclasses import dataclass

from .groups import (
    CapExceededError,
    PermGroup,
    Subgroup,
    composition_series,
    join_normalizing,
    normalizer,
    quotient_group,
    subgroup_class_id,
    trivial_subgroup,
    SET_CAP,
)
from .perms import conj, mul, order_of, power

# largest normalizer quotient we are willing to enumerate element-wise
QUOTIENT_CAP = 200_000


@dataclass
class ExtensionContext:
    """The pair A normal-in S of prime index p, with a coset element t."""

    S: PermGroup
    A: PermGroup
    p: int
    t: tuple[int, ...]

    @classmethod
    def create(cls, S: PermGroup, A: PermGroup) -> "ExtensionContext":
        if S.degree != A.degree:
            raise ValueError("ambient and normal subgroup degrees differ")
        if S.order % A.order:
            raise ValueError("subgroup order does not divide the group order")
        p = S.order // A.order
        if p == 1 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
            raise ValueError(f"index {p} is not prime")
        for a in A.gens:
            if not S.contains(a):
                raise ValueError("normal subgroup not inside the group")
        asub = _big_subgroup(S, A)
        if not asub.is_normal_in(S):
            raise ValueError("subgroup is not normal")
        t = next((g for g in S.gens if not A.contains(g)), None)
        assert t is not None
        return cls(S=S, A=A, p=p, t=t)

    def in_A(self, x) -> bool:
        return self.A.contains(x)


def _big_subgroup(S: PermGroup, G: PermGroup) -> Subgroup:
    """Wrap a PermGroup as a subgroup handle of S without re-deriving it."""
    sub = Subgroup.__new__(Subgroup)
    sub.ambient = S
    sub.gens = G.gens
    sub.order = G.order
    sub._elems = frozenset(G.elements()) if G.order <= SET_CAP else None
    sub._group = G
    sub._fp = None
    sub._profile = None
    return sub


def rewrap(G: PermGroup, H: Subgroup) -> Subgroup:
    """The same subgroup as a handle of a different ambient group."""
    if H.ambient is G:
        return H
    if H.order <= SET_CAP:
        return Subgroup(G, H.gens, elems=H.elements())
    sub = Subgroup.__new__(Subgroup)
    sub.ambient = G
    sub.gens = H.gens
    sub.order = H.order
    sub._elems = H._elems
    sub._group = H._group if H._group is not None else None
    sub._fp = None
    sub._profile = None
    return sub


@dataclass
class InnerClass:
    """One S-class of subgroups of A."""

    rep: Subgroup                 # ambient S
    a_indices: tuple[int, ...]    # merged A-class indices (1 or p of them)
    normalizer_order: int         # |N_S(rep)|

    @property
    def stable(self) -> bool:
        return len(self.a_indices) == 1


@dataclass
class InnerSplit:
    classes: list[InnerClass]
    raw_fused_count: int          # number of A-classes sitting in merged classes

    @property
    def stable_classes(self) -> list[InnerClass]:
        return [c for c in self.classes if c.stable]

    @property
    def merged_classes(self) -> list[InnerClass]:
        return [c for c in self.classes if not c.stable]


def split_inner_classes(a_classes: list[Subgroup],
                        ctx: ExtensionContext) -> InnerSplit:
    """Fuse the A-classes into S-classes.

    A class is stable (kept as-is) when the S-normalizer of its
    representative is not contained in A; otherwise exactly p A-classes
    merge into one S-class, conjugate under powers of t.
    """
    S, A, p = ctx.S, ctx.A, ctx.p
    handles = []
    for H in a_classes:
        hs = rewrap(S, H)
        if not all(S.contains(g) for g in hs.gens):
            raise ValueError("input class representative outside the group")
        if not all(A.contains(g) for g in hs.gens):
            raise ValueError("input class representative not inside A")
        handles.append(hs)
    norms = [normalizer(S, hs) for hs in handles]
    stable = [any(not A.contains(g) for g in n.gens) for n in norms]

    # resolve merged classes by conjugating with powers of t
    unstable_idx = [i for i, s in enumerate(stable) if not s]
    a_cid_of = {}
    for i in unstable_idx:
        a_cid_of[subgroup_class_id(A, rewrap(A, a_classes[i]))] = i
    assigned: set[int] = set()
    classes: list[InnerClass] = []
    raw_fused = 0
    for i, hs in enumerate(handles):
        if stable[i]:
            classes.append(InnerClass(
                rep=hs, a_indices=(i,), normalizer_order=norms[i].order))
            continue
        if i in assigned:
            continue
        partners = [i]
        g = ctx.t
        for _ in range(p - 1):
            conj_h = rewrap(A, handles[i].conjugated(g))
            cid = subgroup_class_id(A, conj_h)
            j = a_cid_of.get(cid)
            if j is None or j in assigned or j in partners:
                raise RuntimeError("inconsistent class fusion")
            partners.append(j)
            g = mul(g, ctx.t)
        assigned.update(partners)
        raw_fused += p
        classes.append(InnerClass(
            rep=hs, a_indices=tuple(partners),
            normalizer_order=norms[i].order))
    assert raw_fused == p * sum(1 for c in classes if not c.stable)
    return InnerSplit(classes=classes, raw_fused_count=raw_fused)


@dataclass
class OuterClass:
    """One S-class of subgroups not contained in A."""

    rep: Subgroup               # ambient S, of order p * |base|
    base_index: int             # A-class index of rep's intersection with A
    gen_element: tuple[int, ...]  # coset element of p-power order
    normalizer_order: int


def extension_elements(ctx: ExtensionContext, H: Subgroup):
    """Coset elements t generating the index-p extensions of H.

    Each returned t normalizes H, has p-power order, lies outside A,
    and the subgroups <H, t> form a transversal of the S-classes of
    subgroups K with K intersect A equal to H (pairwise non-conjugate).
    Empty when N_S(H) is contained in A.
    """
    S, A, p = ctx.S, ctx.A, ctx.p
    hs = rewrap(S, H)
    if not all(A.contains(g) for g in hs.gens):
        raise ValueError("subgroup not inside A")
    N = normalizer(S, hs)
    if all(A.contains(g) for g in N.gens):
        return []
    if hs.order == 1:
        if A.order % p:
            # Sylow case: the only order-p class; any p-element works
            return [_find_p_element(ctx)]
        W = N.as_group()
        lift = lambda w: w  # noqa: E731
    else:
        Ngrp = N.as_group()
        if Ngrp.order // hs.order > QUOTIENT_CAP:
            raise CapExceededError(
                f"normalizer quotient of order {Ngrp.order // hs.order} "
                "is over the enumeration cap")
        W, lift = quotient_group(Ngrp, hs)
    if W.order > QUOTIENT_CAP:
        raise CapExceededError(
            f"quotient of order {W.order} is over the enumeration cap")

    targets = [w for w in W.sorted_elements()
               if order_of(w) == p and not A.contains(lift(w))]
    seen: set = set()
    out = []
    for w in targets:
        if w in seen:
            continue
        # rational class: close under W-conjugacy and prime-to-p powers
        orbit = [w]
        oset = {w}
        qi = 0
        while qi < len(orbit):
            x = orbit[qi]
            qi += 1
            for g in W.gens:
                y = conj(x, g)
                if y not in oset:
                    oset.add(y)
                    orbit.append(y)
            for k in range(2, p):
                y = power(x, k)
                if y not in oset:
                    oset.add(y)
                    orbit.append(y)
        seen |= oset
        t0 = lift(w)
        n = order_of(t0)
        q = n
        while q % p == 0:
            q //= p
        t = power(t0, q)
        assert not A.contains(t)
        out.append(t)
    out.sort(key=lambda t: order_of(t))
    return out


def _find_p_element(ctx: ExtensionContext) -> tuple[int, ...]:
    """Deterministic element of order p of S (p prime to |A|)."""
    p = ctx.p
    frontier = [ctx.S.identity]
    seen = {ctx.S.identity}
    while frontier:
        new = []
        for x in frontier:
            for g in ctx.S.gens:
                y = mul(x, g)
                if y in seen:
                    continue
                n = order_of(y)
                if n % p == 0:
                    return power(y, n // p)
                seen.add(y)
                new.append(y)
        frontier = new
    raise RuntimeError("no element of the required order")  # pragma: no cover


def _extend_subgroup(ctx: ExtensionContext, H: Subgroup,
                     t: tuple[int, ...]) -> Subgroup:
    S, p = ctx.S, ctx.p
    if H.order <= SET_CAP and H.order * p <= SET_CAP:
        elems = join_normalizing(H.elements(), H.gens, t)
        assert elems is not None, "extension element does not normalize"
        K = Subgroup(S, H.gens + (t,), elems=elems)
    else:
        K = Subgroup(S, H.gens + (t,))
    assert K.order == p * H.order
    return K


def outer_classes(a_classes: list[Subgroup],
                  ctx: ExtensionContext) -> list[OuterClass]:
    """One representative per S-class of subgroups not contained in A."""
    out: list[OuterClass] = []
    for i, H in enumerate(a_classes):
        hs = rewrap(ctx.S, H)
        for t in extension_elements(ctx, hs):
            K = _extend_subgroup(ctx, hs, t)
            out.append(OuterClass(
                rep=K, base_index=i, gen_element=t,
                normalizer_order=normalizer(ctx.S, K).order))
    out.sort(key=lambda c: c.rep.order)  # stable: keeps construction order
    return out


@dataclass
class StepClasses:
    """All S-classes produced by one extension step, inner block first."""

    ctx: ExtensionContext
    a_classes: list[Subgroup]
    inner: InnerSplit
    outer: list[OuterClass]

    @property
    def reps(self) -> list[Subgroup]:
        return ([c.rep for c in self.inner.classes]
                + [c.rep for c in self.outer])

    @property
    def normalizer_orders(self) -> list[int]:
        return ([c.normalizer_order for c in self.inner.classes]
                + [c.normalizer_order for c in self.outer])


def extend_classes(a_classes: list[Subgroup],
                   ctx: ExtensionContext) -> StepClasses:
    """Classes of S from a transversal of the classes of A.

    The result lists the inner block first (in the order of the input
    classes, merged classes represented by their first member), then
    the outer block sorted by subgroup order with first-construction
    ties.
    """
    inner = split_inner_classes(a_classes, ctx)
    outer = outer_classes(a_classes, ctx)
    expected = len(inner.classes) + len(outer)
    reps = [c.rep for c in inner.classes] + [c.rep for c in outer]
    assert len({id(r) for r in reps}) == expected
    return StepClasses(ctx=ctx, a_classes=[rewrap(ctx.S, h) for h in a_classes],
                       inner=inner, outer=outer)


def sort_class_reps(reps: list[Subgroup]) -> list[Subgroup]:
    """Stable sort by subgroup order (first-seen ties preserved)."""
    return sorted(reps, key=lambda h: h.order)


def subgroup_classes_solvable(G: PermGroup) -> list[Subgroup]:
    """Transversal of the subgroup classes of a solvable group.

    Runs the extension step along a composition series, starting from
    the trivial group.  Raises NotSolvableError otherwise.
    """
    series = composition_series(G)
    classes: list[Subgroup] = [trivial_subgroup(G)]
    prev_group: PermGroup | None = None
    for i in range(1, len(series.terms)):
        term = series.terms[i]
        S = G if term.order == G.order else term.as_group()
        A = prev_group if prev_group is not None else \
            series.terms[i - 1].as_group()
        ctx = ExtensionContext.create(S, A)
        step = extend_classes(sort_class_reps(classes), ctx)
        classes = step.reps
        prev_group = S
    return sort_class_reps([rewrap(G, h) for h in classes])
