"""Tables of marks and subgroup patterns.

The mark of a subgroup H on the coset space G/K is the number of
cosets fixed by H; the square lower-triangular matrix of all marks
over a transversal of subgroup classes, together with the transversal,
is the *subgroup pattern* of G.

This module assembles the pattern of S from the pattern of a normal
subgroup A of prime index p.  Rows and columns split into the inner
block (classes of subgroups inside A) and the outer block:

* inner-by-inner marks come from the A-table (row sums over merged
  classes, or a p-multiple for stable ones);
* outer rows restricted to inner columns copy the A-row of the
  intersection with A;
* inner columns of outer subgroups are zero;
* outer-by-outer marks are decided by interval arithmetic on candidate
  sets: upper bounds from the inner part, congruences modulo p down
  each column pair, divisibility by the diagonal, transitivity bounds,
  congruence constraints from the rows of the Dress matrix, and, as a
  last resort, explicit counting of the conjugates of K containing a
  fixed element t (a union of centralizer orbits).

Everything is deterministic; per-row decisions are tagged for
diagnostics.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import product as iter_product

from .extension import (
    ExtensionContext,
    StepClasses,
    extend_classes,
    rewrap,
)
from .groups import (
    PermGroup,
    Subgroup,
    centralizer,
    composition_series,
    join_normalizing,
    normalizer,
    subgroup_class_id,
    trivial_subgroup,
)
from .perms import conj, inv, mul

# dress refinement skips a congruence when more than this many cells in
# its support are undecided (assignment enumeration is exponential)
DRESS_UNDECIDED_CAP = 12
DRESS_ASSIGNMENT_CAP = 50_000


class InconsistentTableError(RuntimeError):
    """A candidate set became empty: the input pattern is corrupt."""


# ---------------------------------------------------------------------------
# pattern containers


@dataclass
class PatternClass:
    rep: Subgroup
    order: int
    length: int
    normalizer_order: int
    kind: str | None = None          # "inner" / "outer" for extension output
    gamma_index: int | None = None   # column of rep∩A's class (outer only)
    probe_element: tuple | None = None  # coset element of p-power order


@dataclass
class PatternStats:
    probes: int = 0
    max_probe: int = 0
    millis: int = 0
    extension_p: int | None = None
    decided_by: dict = field(default_factory=dict)

    def merge(self, other: "PatternStats") -> None:
        self.probes += other.probes
        self.max_probe = max(self.max_probe, other.max_probe)
        self.millis += other.millis


@dataclass
class SubgroupPattern:
    """A class transversal with its lower-triangular table of marks."""

    group: PermGroup
    classes: list[PatternClass]
    rows: list[list[int]]
    stats: PatternStats = field(default_factory=PatternStats)

    @property
    def n(self) -> int:
        return len(self.classes)

    def cell(self, i: int, j: int) -> int:
        return self.rows[i][j] if j <= i else 0

    def class_orders(self) -> list[int]:
        return [c.order for c in self.classes]

    def sorted_ascending(self) -> "SubgroupPattern":
        """Copy with classes stably re-sorted by subgroup order."""
        perm = sorted(range(self.n), key=lambda i: self.classes[i].order)
        if perm == list(range(self.n)):
            return self
        pos = {old: new for new, old in enumerate(perm)}
        classes = []
        for old in perm:
            c = self.classes[old]
            gi = pos[c.gamma_index] if c.gamma_index is not None else None
            classes.append(PatternClass(
                rep=c.rep, order=c.order, length=c.length,
                normalizer_order=c.normalizer_order, kind=c.kind,
                gamma_index=gi, probe_element=c.probe_element))
        rows = [[self.cell(perm[i], perm[j]) for j in range(i + 1)]
                for i in range(self.n)]
        return SubgroupPattern(group=self.group, classes=classes,
                               rows=rows, stats=self.stats)


def trivial_pattern(degree: int = 1) -> SubgroupPattern:
    G = PermGroup([], degree)
    cls = PatternClass(rep=trivial_subgroup(G), order=1, length=1,
                       normalizer_order=1, kind=None)
    return SubgroupPattern(group=G, classes=[cls], rows=[[1]])


# ---------------------------------------------------------------------------
# the defining mark computation (the oracle side uses only this)


def mark_fixed_cosets(G: PermGroup, K: Subgroup, H: Subgroup, *,
                      k_normal: bool | None = None) -> int:
    """Number of cosets of K fixed by H in the action of G on G/K.

    Counted over an explicit coset transversal; a coset Kg is fixed
    exactly when g H g^-1 lies inside K.  For normal K every conjugate
    condition degenerates to plain containment, so the count is either
    the full index or zero.  ``k_normal`` may be passed by callers that
    already know it (e.g. from the class length).
    """
    if K.order % H.order:
        return 0
    if k_normal is None:
        k_normal = K.is_normal_in(G)
    if k_normal:
        return (G.order // K.order) if H.is_subset_of(K) else 0
    from .groups import coset_transversal
    count = 0
    for g in coset_transversal(G, K):
        gi = inv(g)
        if all(conj(h, gi) in K for h in H.gens):
            count += 1
    return count


# ---------------------------------------------------------------------------
# identification of subgroups against a fixed transversal


class ClassIdentifier:
    """Maps subgroups of S to their index in a fixed class transversal."""

    def __init__(self, S: PermGroup, reps: list[Subgroup]):
        self.S = S
        self.index_of_cid = {}
        for i, rep in enumerate(reps):
            cid = subgroup_class_id(S, rewrap(S, rep))
            if cid in self.index_of_cid:
                raise ValueError("transversal contains conjugate duplicates")
            self.index_of_cid[cid] = i

    def index_of(self, K: Subgroup) -> int:
        cid = subgroup_class_id(self.S, K)
        idx = self.index_of_cid.get(cid)
        if idx is None:
            raise InconsistentTableError(
                "generated subgroup matches no class of the transversal")
        return idx


# ---------------------------------------------------------------------------
# Dress congruence rows


@dataclass
class DressRow:
    """Coefficients n(U, -): cosets Ua of U in its normalizer, counted by
    the class of <U, a>; the row congruence is sum(n * y) = 0 mod |N(U):U|.

    For inner U the congruence refines into the orbit-count split: the
    inner part determines o_B and the outer part must realize a count
    o_R with o_R = -o_B (mod p) and o_R <= (p-1) o_B.
    """

    u_index: int
    coeffs: dict[int, int]
    modulus: int
    inner_size: int | None = None   # |N_A(U):U| when U is inner


def dress_row(S: PermGroup, ident: ClassIdentifier, u_index: int,
              U: Subgroup, *, inner_size: int | None = None) -> DressRow:
    N = normalizer(S, U)
    modulus = N.order // U.order
    coeffs: dict[int, int] = {}
    from .groups import coset_transversal
    for a in coset_transversal(N.as_group(), rewrap(N.as_group(), U)):
        elems = join_normalizing(U.elements(), U.gens, a)
        K = Subgroup(S, U.gens + (a,), elems=elems)
        idx = ident.index_of(K)
        coeffs[idx] = coeffs.get(idx, 0) + 1
    assert sum(coeffs.values()) == modulus
    return DressRow(u_index=u_index, coeffs=coeffs, modulus=modulus,
                    inner_size=inner_size)


# ---------------------------------------------------------------------------
# explicit incidence counting


def incidence_probe(S: PermGroup, K: Subgroup, t: tuple[int, ...]):
    """Conjugates of K containing t, as a list of element sets.

    Computed as a disjoint union of centralizer orbits: the classes of
    elements of K lying in the S-class of t are merged into
    N_S(K)-orbits; each orbit contributes the C_S(t)-orbit of one
    conjugate K^s with the orbit representative mapped onto t.
    """
    if K.is_normal_in(S):
        return [K.elements()] if t in K else []
    tcid = S.class_of_element(t)
    T = sorted(x for x in K.elements()
               if x != S.identity and S.class_of_element(x) == tcid)
    if not T:
        return []
    N = normalizer(S, K)
    # N-orbits on T
    orbit_of: dict = {}
    orbits = []
    for x in T:
        if x in orbit_of:
            continue
        orb = [x]
        seen = {x}
        qi = 0
        while qi < len(orb):
            y = orb[qi]
            qi += 1
            for g in N.gens:
                z = conj(y, g)
                if z not in seen:
                    seen.add(z)
                    orb.append(z)
        oid = len(orbits)
        orbits.append(x)
        for y in orb:
            orbit_of[y] = oid
    C = centralizer(S, t)
    members: list[frozenset] = []
    seen_fp: set = set()
    kelems = K.elements()
    for a in orbits:
        s = _element_conjugator(S, a, t)
        ks = frozenset(conj(x, s) for x in kelems)
        queue = [ks]
        local = {ks}
        qi = 0
        while qi < len(queue):
            m = queue[qi]
            qi += 1
            for g in C.gens:
                m2 = frozenset(conj(x, g) for x in m)
                if m2 not in local:
                    local.add(m2)
                    queue.append(m2)
        assert not (local & seen_fp), "centralizer orbits are not disjoint"
        seen_fp |= local
        members.extend(queue)
    assert all(t in m for m in members)
    return members


def _element_conjugator(S: PermGroup, a: tuple, b: tuple) -> tuple:
    """Some s in S with a^s = b (a, b conjugate)."""
    if a == b:
        return S.identity
    reps = {a: S.identity}
    queue = [a]
    qi = 0
    while qi < len(queue):
        x = queue[qi]
        qi += 1
        u = reps[x]
        for g in S.gens:
            y = conj(x, g)
            if y not in reps:
                w = mul(u, g)
                if y == b:
                    return w
                reps[y] = w
                queue.append(y)
    raise ValueError("elements are not conjugate")


def explicit_mark(S: PermGroup, K: Subgroup, V: Subgroup,
                  t: tuple[int, ...], *, norm_K_order: int | None = None):
    """Exact mark of V on S/K by explicit incidence counting.

    t must be an element of V; returns (mark, probe_size).
    """
    if K.order % V.order:
        return 0, 0
    members = incidence_probe(S, K, t)
    hits = sum(1 for m in members if all(g in m for g in V.gens))
    if norm_K_order is None:
        norm_K_order = normalizer(S, K).order
    return (norm_K_order // K.order) * hits, len(members)


# ---------------------------------------------------------------------------
# the extension engine


class MarksExtender:
    """Assembles the pattern of S from the pattern of A (prime index p)."""

    def __init__(self, pattern_A: SubgroupPattern, S: PermGroup):
        pa = pattern_A.sorted_ascending()
        orders = pa.class_orders()
        assert orders == sorted(orders)
        self.pa = pa
        self.S = S
        self.ctx = ExtensionContext.create(S, pa.group)
        self.p = self.ctx.p
        self.step: StepClasses = extend_classes(
            [c.rep for c in pa.classes], self.ctx)
        self.inner = self.step.inner.classes
        self.outer = self.step.outer
        self.b = len(self.inner)
        self.n = self.b + len(self.outer)
        self.class_reps = self.step.reps
        # blue column of each A-class index
        self.col_of_a_index = {}
        for bi, c in enumerate(self.inner):
            for ai in c.a_indices:
                self.col_of_a_index[ai] = bi
        self.rows: list[list[int]] = []
        self.stats = PatternStats(extension_p=self.p)
        self._ident: ClassIdentifier | None = None
        self._dress: list[DressRow] | None = None
        self._supporters: dict[int, list[int]] | None = None
        # incremental subconjugacy data over completed rows
        self._below: list[set] = []   # class -> set of classes below it
        self._above: list[set] = []   # class -> set of completed classes above

    # -- quarters ---------------------------------------------------------

    def _a_cell(self, i: int, j: int) -> int:
        return self.pa.cell(i, j)

    def top_left_row(self, bi: int) -> list[int]:
        """Inner row: p-multiple of the A-row, or the merged-row sum."""
        c = self.inner[bi]
        factor = self.p // len(c.a_indices)
        row = []
        for bj in range(bi + 1):
            cj = self.inner[bj].a_indices[0]
            val = sum(self._a_cell(ai, cj) for ai in c.a_indices)
            row.append(factor * val)
        return row

    def bottom_left_row(self, ri: int) -> list[int]:
        """Inner columns of an outer row: copy of the A-row of rep∩A."""
        base = self.outer[ri].base_index
        return [self._a_cell(base, self.inner[bj].a_indices[0])
                for bj in range(self.b)]

    def assemble_inner(self) -> None:
        for bi in range(self.b):
            self.rows.append(self.top_left_row(bi))
            self._register_completed(bi)

    def _register_completed(self, i: int) -> None:
        row = self.rows[i]
        below = {j for j in range(i + 1) if row[j] > 0}
        assert len(self._below) == i
        self._below.append(below)
        while len(self._above) <= i:
            self._above.append(set())
        for j in below:
            if j != i:
                self._above[j].add(i)

    # -- lazily built engine tables ----------------------------------------

    def identifier(self) -> ClassIdentifier:
        if self._ident is None:
            self._ident = ClassIdentifier(self.S, self.step.reps)
        return self._ident

    def dress_rows(self) -> list[DressRow]:
        """Dress rows whose congruences involve outer columns.

        Stable inner classes contribute the refined orbit-count form;
        outer classes contribute plain congruences mod |N(U):U| (their
        coefficients live entirely on outer columns).  Merged inner
        classes have no outer cosets and are skipped.
        """
        if self._dress is None:
            ident = self.identifier()
            rows = []
            for bi, c in enumerate(self.inner):
                if not c.stable:
                    continue
                inner_size = c.normalizer_order // self.p // c.rep.order
                rows.append(dress_row(self.S, ident, bi, c.rep,
                                      inner_size=inner_size))
            for rj, oc in enumerate(self.outer):
                dr = dress_row(self.S, ident, self.b + rj, oc.rep)
                if dr.modulus > 1:
                    rows.append(dr)
            self._dress = rows
            self._supporters = {}
            for k, dr in enumerate(rows):
                for j in dr.coeffs:
                    if j >= self.b:
                        self._supporters.setdefault(j, []).append(k)
        return self._dress

    # -- row state ----------------------------------------------------------

    def init_row(self, ri: int) -> "RowState":
        """Bounds pass: bottom-left copy, diagonal, Lagrange zeros, and the
        candidate ranges (congruent to the inner bound mod p, divisible by
        the decided diagonal)."""
        oc = self.outer[ri]
        i = self.b + ri
        K = oc.rep
        diag = oc.normalizer_order // K.order
        values: list = self.bottom_left_row(ri) + [None] * (ri + 1)
        values[i] = diag
        cand: dict[int, tuple] = {}
        decided_by = {}
        kelems = K.elements() if K.order <= 5000 else None
        contained: set[int] = set()
        for rj in range(ri):
            j = self.b + rj
            V = self.outer[rj]
            if K.order % V.rep.order:
                values[j] = 0
                decided_by[j] = "lagrange"
                continue
            ub = values[self.col_of_a_index[V.base_index]]
            opts = tuple(m for m in range(ub % self.p, ub + 1, self.p)
                         if m % diag == 0)
            if not opts:
                raise InconsistentTableError(
                    f"no candidate for cell ({i},{j})")
            if kelems is not None and all(g in kelems for g in V.rep.gens):
                contained.add(j)
                opts = tuple(m for m in opts if m >= diag)
                if not opts:
                    raise InconsistentTableError(
                        f"contained subgroup got zero bound at ({i},{j})")
            if len(opts) == 1:
                values[j] = opts[0]
                decided_by[j] = "bounds"
            else:
                cand[j] = opts
        return RowState(index=i, ri=ri, values=values, cand=cand,
                        decided_by=decided_by, contained=contained,
                        diag=diag)

    # -- refinement passes ---------------------------------------------------

    def transitivity_pass(self, st: "RowState") -> bool:
        """Bound propagation along certified subconjugacy chains.

        Upper bounds flow up containment (a bigger subgroup fixes no
        more cosets); lower bounds flow down, including the quotient
        bound row(V)/|K:V| for classes V certified below the row class.
        """
        changed = False
        i = st.index
        lo: dict[int, int] = {}
        hi: dict[int, int] = {}
        for j in list(st.cand):
            opts = st.cand[j]
            lob, hib = opts[0], opts[-1]
            for v in self._below[j]:
                m = st.values[v] if v not in st.cand else st.cand[v][-1]
                if m is not None and m < hib:
                    hib = m
            for v in self._above[j]:
                if v >= i:
                    continue
                m = st.values[v] if v not in st.cand else st.cand[v][0]
                if m is not None and m > lob:
                    lob = m
            lo[j], hi[j] = lob, hib
        # quotient bound from certified contained classes
        K_order = self.outer[st.ri].rep.order
        certified = set(st.contained)
        for j in range(self.b, i):
            v = st.values[j]
            if v is not None and v > 0:
                certified.add(j)
        for v in certified:
            ratio = K_order // self.class_reps[v].order
            for j in st.cand:
                if j == v or j not in self._below[v]:
                    continue
                bound = -(-self.rows[v][j] // ratio)  # ceil division
                if bound > lo.get(j, 0):
                    lo[j] = bound
        for j in list(st.cand):
            opts = tuple(m for m in st.cand[j]
                         if lo.get(j, 0) <= m <= hi.get(j, m))
            if opts != st.cand[j]:
                changed = True
                if not opts:
                    raise InconsistentTableError(
                        f"transitivity emptied cell ({i},{j})")
                if len(opts) == 1:
                    st.decide(j, opts[0], "transitivity")
                else:
                    st.set_cand(j, opts)
        return changed

    def dress_pass(self, st: "RowState", only: int | None = None) -> bool:
        """Prune candidates by the congruence and bound each stable inner
        class U imposes on the outer part of the row, then by the plain
        congruences of outer classes.

        Only congruence rows touching an undecided cell are visited; on
        repeat passes only those whose support changed since the last
        visit."""
        rows = self.dress_rows()
        if only is not None:
            relevant = [k for k, dr in enumerate(rows) if dr.u_index == only]
        else:
            hit = set()
            if st.dress_fresh:
                source = list(st.cand.keys())
                st.dress_fresh = False
            else:
                source = list(st.changed)
            for j in source:
                hit.update(self._supporters.get(j, ()))
            st.changed.clear()
            relevant = sorted(hit)
        changed = False
        for k in relevant:
            if self._dress_single(st, rows[k]):
                changed = True
            if not st.cand:
                break
        return changed

    def _dress_single(self, st: "RowState", dr: DressRow) -> bool:
        i = st.index
        und = [j for j in dr.coeffs if j in st.cand]
        if not und:
            return False
        targets, fixed = self._dress_targets(st, dr, und)
        if targets is not None and not targets:
            raise InconsistentTableError(
                f"no admissible target sum for the congruence at class "
                f"{dr.u_index} in row {i}")
        too_big = len(und) > DRESS_UNDECIDED_CAP
        if not too_big:
            total = 1
            for j in und:
                total *= len(st.cand[j])
                if total > DRESS_ASSIGNMENT_CAP:
                    too_big = True
                    break
        if too_big:
            return self._dress_relax(st, dr, und, targets, fixed)
        feasible = self._dress_enumerate(st, dr, und, targets, fixed)
        if feasible is None:
            raise InconsistentTableError(
                f"no feasible assignment for the congruence at class "
                f"{dr.u_index} in row {i}")
        changed = False
        for k, j in enumerate(und):
            n = dr.coeffs[j]
            vals = tuple(v // n for v in sorted(feasible[k]))
            if vals != st.cand[j]:
                changed = True
                if len(vals) == 1:
                    st.decide(j, vals[0], f"dress:{dr.u_index}")
                else:
                    st.set_cand(j, vals)
        return changed

    def _dress_targets(self, st: "RowState", dr: DressRow, und: list[int]):
        """Admissible values of the outer coefficient sum, and the decided
        part of that sum.

        For inner U the sum must equal |B| * o_R for an orbit count o_R
        with o_R = -o_B (mod p), 0 <= o_R <= (p-1) o_B; for outer U any
        sum with total = 0 mod |N(U):U| is admissible (returned as None,
        meaning "all residues fixed+s = 0 mod modulus").
        """
        i = st.index
        fixed = 0
        inner_sum = 0
        for j, njj in dr.coeffs.items():
            if j in und:
                continue
            if j < self.b:
                inner_sum += njj * st.values[j]
            elif j <= i:
                v = st.values[j]
                assert v is not None
                fixed += njj * v
            # columns past the row contribute 0
        if dr.inner_size is None:
            if inner_sum:
                raise InconsistentTableError(
                    "outer congruence row has inner coefficients")
            return None, fixed
        bsize = dr.inner_size
        assert bsize > 0
        if inner_sum % bsize:
            raise InconsistentTableError(
                "inner orbit count is not integral: corrupt input pattern")
        o_b = inner_sum // bsize
        p = self.p
        targets = [bsize * o_r for o_r in range((p - 1) * o_b + 1)
                   if (o_r + o_b) % p == 0]
        return targets, fixed

    def _dress_enumerate(self, st: "RowState", dr: DressRow,
                         und: list[int], targets, fixed: int):
        """Per-cell sets of feasible scaled values (None if infeasible)."""
        scaled = [tuple(dr.coeffs[j] * y for y in st.cand[j]) for j in und]
        lo = fixed + sum(v[0] for v in scaled)
        hi = fixed + sum(v[-1] for v in scaled)
        mod = dr.modulus
        if targets is None:
            if (hi // mod) * mod < lo:
                return None
        else:
            tset = set(targets)
            if not any(lo <= t <= hi for t in targets):
                return None
        feas = [set() for _ in und]
        found = False
        for combo in iter_product(*scaled):
            s = fixed + sum(combo)
            if targets is None:
                if s % mod:
                    continue
            elif s not in tset:
                continue
            found = True
            for k, v in enumerate(combo):
                feas[k].add(v)
        return feas if found else None

    def _dress_relax(self, st: "RowState", dr: DressRow, und: list[int],
                     targets, fixed: int) -> bool:
        """Interval relaxation of the congruence for large supports.

        A candidate y survives when some admissible target sum remains
        reachable with the other cells anywhere between their current
        minima and maxima (sound, weaker than full enumeration).
        """
        lo = {j: dr.coeffs[j] * st.cand[j][0] for j in und}
        hi = {j: dr.coeffs[j] * st.cand[j][-1] for j in und}
        lo_all = fixed + sum(lo.values())
        hi_all = fixed + sum(hi.values())
        changed = False
        for j in und:
            n = dr.coeffs[j]
            rest_lo = lo_all - lo[j]
            rest_hi = hi_all - hi[j]
            keep = []
            for y in st.cand[j]:
                a, b = rest_lo + n * y, rest_hi + n * y
                if targets is None:
                    ok = (b // dr.modulus) * dr.modulus >= a
                else:
                    ok = any(a <= t <= b for t in targets)
                if ok:
                    keep.append(y)
            keep = tuple(keep)
            if keep == st.cand[j]:
                continue
            changed = True
            if not keep:
                raise InconsistentTableError(
                    f"congruence relaxation emptied cell ({st.index},{j})")
            if len(keep) == 1:
                st.decide(j, keep[0], f"dress:{dr.u_index}")
            else:
                st.set_cand(j, keep)
            lo_all += n * keep[0] - lo[j]
            hi_all += n * keep[-1] - hi[j]
            lo[j] = n * keep[0]
            hi[j] = n * keep[-1]
        return changed

    # -- explicit probes -----------------------------------------------------

    def probe_one(self, st: "RowState") -> None:
        """Explicit counting with a single t: one probe set decides every
        undecided cell whose class representative contains t.

        The t is taken from the cheapest candidate column (fewest
        elements of K in the class of its coset element).
        """
        i = st.index
        K = self.outer[st.ri].rep
        kelems = K.elements()
        kcls = [self.S.class_of_element(x) for x in kelems]
        best = None
        for j in sorted(st.cand):
            t = self.outer[j - self.b].gen_element
            tcls = self.S.class_of_element(t)
            est = sum(1 for c in kcls if c == tcls)
            if best is None or est < best[0]:
                best = (est, j, t)
        _, j0, t = best
        members = incidence_probe(self.S, K, t)
        self.stats.probes += 1
        self.stats.max_probe = max(self.stats.max_probe, len(members))
        diag = st.diag
        for j in sorted(st.cand):
            V = self.outer[j - self.b]
            if j != j0 and t not in V.rep.elements():
                continue
            val = diag * sum(
                1 for m in members if all(g in m for g in V.rep.gens))
            if val not in st.cand[j]:
                raise InconsistentTableError(
                    f"explicit mark {val} outside candidates at ({i},{j})")
            st.decide(j, val, "probe")

    # -- driver ----------------------------------------------------------------

    def solve_row(self, ri: int) -> "RowState":
        st = self.init_row(ri)
        while st.cand:
            progress = True
            while progress and st.cand:
                progress = self.transitivity_pass(st)
                if st.cand and self.dress_pass(st):
                    progress = True
            if st.cand:
                self.probe_one(st)
        return st

    def solve(self) -> SubgroupPattern:
        start = time.monotonic()
        self.assemble_inner()
        for ri in range(len(self.outer)):
            st = self.solve_row(ri)
            assert all(v is not None for v in st.values)
            self.rows.append([int(v) for v in st.values])
            self._register_completed(st.index)
            for j, tag in st.decided_by.items():
                self.stats.decided_by[(st.index, j)] = tag
        self.stats.millis = int((time.monotonic() - start) * 1000)
        return self._pattern()

    def _pattern(self) -> SubgroupPattern:
        classes = []
        for c in self.inner:
            classes.append(PatternClass(
                rep=c.rep, order=c.rep.order,
                length=self.S.order // c.normalizer_order,
                normalizer_order=c.normalizer_order, kind="inner"))
        for oc in self.outer:
            classes.append(PatternClass(
                rep=oc.rep, order=oc.rep.order,
                length=self.S.order // oc.normalizer_order,
                normalizer_order=oc.normalizer_order, kind="outer",
                gamma_index=self.col_of_a_index[oc.base_index],
                probe_element=oc.gen_element))
        return SubgroupPattern(group=self.S, classes=classes,
                               rows=self.rows, stats=self.stats)


@dataclass
class RowState:
    """Mutable solving state of one outer row."""

    index: int
    ri: int
    values: list
    cand: dict[int, tuple]
    decided_by: dict[int, str]
    contained: set[int]
    diag: int
    changed: set = field(default_factory=set)
    dress_fresh: bool = True

    def decide(self, j: int, val: int, tag: str) -> None:
        self.values[j] = val
        self.decided_by[j] = tag
        self.changed.add(j)
        del self.cand[j]

    def set_cand(self, j: int, opts: tuple) -> None:
        self.cand[j] = opts
        self.changed.add(j)


def extend_table_of_marks(pattern_A: SubgroupPattern,
                          S: PermGroup) -> SubgroupPattern:
    """Subgroup pattern of S from the pattern of a normal prime-index A."""
    return MarksExtender(pattern_A, S).solve()


def solvable_pattern_chain(G: PermGroup) -> list[SubgroupPattern]:
    """Patterns of every term of a composition series of G, bottom up.

    The first entry is the trivial pattern; every later entry is the
    raw output of one extension step (inner block first).  Inputs of
    each step are re-sorted by ascending subgroup order.
    """
    series = composition_series(G)
    chain = [trivial_pattern(G.degree)]
    for i in range(1, len(series.terms)):
        term = series.terms[i]
        S = G if term.order == G.order else term.as_group()
        chain.append(extend_table_of_marks(chain[-1], S))
    return chain


def table_of_marks_solvable(G: PermGroup) -> SubgroupPattern:
    """Subgroup pattern of a solvable group, iterated along a
    composition series starting from the trivial pattern.

    Statistics aggregate all steps; the recorded extension prime (used
    by the column-congruence validation) is the final step's.
    """
    chain = solvable_pattern_chain(G)
    out = chain[-1]
    agg = PatternStats(extension_p=out.stats.extension_p)
    for pat in chain[1:]:
        agg.merge(pat.stats)
    return SubgroupPattern(group=out.group, classes=out.classes,
                           rows=out.rows, stats=agg)


# ---------------------------------------------------------------------------
# verification


def dress_rows_full(pattern: SubgroupPattern) -> list[DressRow]:
    """Dress rows n(U, -) for every class U of the pattern."""
    S = pattern.group
    ident = ClassIdentifier(S, [c.rep for c in pattern.classes])
    out = []
    for u, c in enumerate(pattern.classes):
        out.append(dress_row(S, ident, u, rewrap(S, c.rep)))
    return out


def verify_dress(pattern: SubgroupPattern,
                 rows: list[DressRow] | None = None):
    """Check every row of the table against every Dress congruence.

    Returns (ok, violations); each violation names the class U whose
    congruence fails and the offending row.
    """
    if rows is None:
        rows = dress_rows_full(pattern)
    n = pattern.n
    violations = []
    if n >= 300:
        try:
            return _verify_dress_sparse(pattern, rows)
        except ImportError:  # pragma: no cover
            pass
    for dr in rows:
        for i in range(n):
            s = sum(njj * pattern.cell(i, j) for j, njj in dr.coeffs.items())
            if s % dr.modulus:
                violations.append(
                    f"row {i}: congruence of class {dr.u_index} fails "
                    f"(sum {s} mod {dr.modulus})")
    return not violations, violations


def _verify_dress_sparse(pattern: SubgroupPattern, rows: list[DressRow]):
    import numpy as np
    from scipy import sparse

    n = pattern.n
    M = np.zeros((n, n), dtype=np.int64)
    for i, row in enumerate(pattern.rows):
        M[i, :len(row)] = row
    data, ri, ci = [], [], []
    mods = np.ones(n, dtype=np.int64)
    for dr in rows:
        mods[dr.u_index] = dr.modulus
        for j, njj in dr.coeffs.items():
            ri.append(dr.u_index)
            ci.append(j)
            data.append(njj)
    D = sparse.csr_matrix((data, (ri, ci)), shape=(n, n), dtype=np.int64)
    R = np.asarray((D @ M.T))  # R[u, i] = sum_j n(u,j) M[i, j]
    bad = np.argwhere(R % mods[:, None] != 0)
    violations = [
        f"row {i}: congruence of class {u} fails"
        for u, i in bad.tolist()]
    return not violations, violations


def validate_pattern(pattern: SubgroupPattern, *,
                     check_dress: bool = True) -> list[str]:
    """Structural invariant suite; returns a list of violations.

    Checks triangular shape, order divisibility at nonzero cells,
    diagonal = normalizer index, first column = group index, last row
    of ones, row divisibility by the diagonal, the mod-p column
    congruence for recorded (rep∩A, rep) pairs, and (optionally) the
    Dress congruences.
    """
    out = []
    n = pattern.n
    G = pattern.group
    for i, row in enumerate(pattern.rows):
        if len(row) != i + 1:
            out.append(f"row {i} has length {len(row)}")
    orders = pattern.class_orders()
    for i in range(n):
        ci = pattern.classes[i]
        if pattern.rows[i][i] != ci.normalizer_order // ci.order:
            out.append(f"diagonal {i} is not the normalizer index")
        if pattern.rows[i][0] != G.order // ci.order:
            out.append(f"first column of row {i} is not the group index")
        diag = pattern.rows[i][i]
        for j in range(i + 1):
            v = pattern.rows[i][j]
            if v < 0:
                out.append(f"negative mark at ({i},{j})")
            if v and orders[i] % orders[j]:
                out.append(f"nonzero mark at ({i},{j}) violates Lagrange")
            if diag and v % diag:
                out.append(f"mark at ({i},{j}) not divisible by diagonal")
    if orders[-1] != G.order or any(v != 1 for v in pattern.rows[-1]):
        out.append("last row is not the all-ones row of the whole group")
    p = pattern.stats.extension_p
    if p:
        for j, c in enumerate(pattern.classes):
            if c.gamma_index is None:
                continue
            g = c.gamma_index
            for i in range(n):
                if (pattern.cell(i, j) - pattern.cell(i, g)) % p:
                    out.append(
                        f"column congruence mod {p} fails at row {i}, "
                        f"columns ({g},{j})")
    if check_dress:
        ok, viol = verify_dress(pattern)
        out.extend(viol)
    return out
