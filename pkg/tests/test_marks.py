"""Marks engine: the defining count, quarters, candidate propagation,
Dress machinery, incidence probes, and the assembled tables."""

import pytest

from fixtures import FIG_A5, FIG_S5, GL23_PANELS

from burnside.catalog import CATALOG, cyclic_group
from burnside.groups import Subgroup, normalizer, trivial_subgroup
from burnside.lattice import (
    all_subgroup_classes_brute,
    compare_patterns,
    table_of_marks_brute,
)
from burnside.marks import (
    InconsistentTableError,
    MarksExtender,
    SubgroupPattern,
    dress_rows_full,
    explicit_mark,
    extend_table_of_marks,
    incidence_probe,
    mark_fixed_cosets,
    solvable_pattern_chain,
    table_of_marks_solvable,
    trivial_pattern,
    validate_pattern,
    verify_dress,
)
from burnside.perms import parse_cycles


def _sub(G, *cycles):
    return Subgroup(G, [parse_cycles(c, G.degree) for c in cycles])


# ---------------------------------------------------------------------------
# the defining mark


def test_mark_whole_group(s4):
    whole = Subgroup(s4, s4.gens)
    for H in all_subgroup_classes_brute(s4):
        assert mark_fixed_cosets(s4, whole, H) == 1


def test_mark_regular(s4):
    triv = trivial_subgroup(s4)
    assert mark_fixed_cosets(s4, triv, triv) == 24


def test_mark_a5_d10_c5(a5):
    d10 = _sub(a5, "(1,2,3,4,5)", "(2,5)(3,4)")
    c5 = _sub(a5, "(1,2,3,4,5)")
    assert d10.order == 10 and c5.order == 5
    assert mark_fixed_cosets(a5, d10, c5) == 1


def test_mark_against_incidence_formula(s4):
    # |N(K):K| * #conjugates of K containing H, counted by brute force
    reps = all_subgroup_classes_brute(s4)
    from burnside.perms import conj
    for K in reps:
        conjugates = {frozenset(conj(x, g) for x in K.elements())
                      for g in s4.elements()}
        nk = normalizer(s4, K).order // K.order
        for H in reps:
            cnt = sum(1 for c in conjugates
                      if all(g in c for g in H.gens))
            assert mark_fixed_cosets(s4, K, H) == nk * cnt


# ---------------------------------------------------------------------------
# quarters


@pytest.fixture(scope="module")
def s5_ext(a5_pattern, s5):
    ext = MarksExtender(a5_pattern, s5)
    ext.assemble_inner()
    return ext


def test_top_left_doubles_a5(s5_ext):
    # no fusion for A5 < S5, so the inner block is exactly twice M(A5)
    for i in range(9):
        assert s5_ext.rows[i] == [2 * v for v in FIG_A5[i]]


def test_top_left_merged_rows():
    # SL2(3) over Q8 fuses the three C4 classes: merged row sums A-rows
    sl = CATALOG.group("SL2(3)")
    q8 = None
    for rep in all_subgroup_classes_brute(sl):
        if rep.order == 8:
            q8 = rep.as_group()
    pq8 = table_of_marks_brute(q8)
    ext = MarksExtender(pq8, sl)
    ext.assemble_inner()
    merged_rows = [ext.top_left_row(bi)
                   for bi, c in enumerate(ext.inner) if not c.stable]
    assert merged_rows == [[6, 6, 2]]


def test_bottom_left_copies(s5_ext):
    # outer row of the order-2 class copies the A-row of the trivial group
    assert s5_ext.bottom_left_row(0) == [60, 0, 0, 0, 0, 0, 0, 0, 0]
    # D12 (order 12) copies the S3-row of M(A5)
    ri = next(i for i, oc in enumerate(s5_ext.outer) if oc.rep.order == 12)
    assert s5_ext.bottom_left_row(ri) == [10, 2, 1, 0, 0, 1, 0, 0, 0]
    # the top class copies the all-ones A5 row
    ri = next(i for i, oc in enumerate(s5_ext.outer) if oc.rep.order == 120)
    assert s5_ext.bottom_left_row(ri) == [1] * 9


def test_trivial_extension_quarters():
    # S = C_p over the trivial group: table [[p], [1, 1]]
    for p in (2, 3, 5):
        pat = extend_table_of_marks(trivial_pattern(p), cyclic_group(p))
        assert pat.rows == [[p], [1, 1]]


# ---------------------------------------------------------------------------
# candidate initialization and refinement


def _row_index(ext, order):
    return next(i for i, oc in enumerate(ext.outer) if oc.rep.order == order)


def _outer_col(ext, order, cyclic):
    for rj, oc in enumerate(ext.outer):
        if oc.rep.order != order:
            continue
        prof = dict(oc.rep.order_profile())
        if cyclic == bool(prof.get(order)):
            return ext.b + rj
    raise AssertionError("no such outer class")


def test_init_candidates_d12(s5_ext):
    ri = _row_index(s5_ext, 12)
    for rj in range(ri):
        st = s5_ext.solve_row(rj)
        s5_ext.rows.append([int(v) for v in st.values])
        s5_ext._register_completed(st.index)
    st = s5_ext.init_row(ri)
    c4 = _outer_col(s5_ext, 4, True)
    v4 = _outer_col(s5_ext, 4, False)
    assert st.cand[c4] == (0, 2)
    assert st.cand[v4] == (0, 2)
    # ub = 0 cells are decided immediately
    d8 = _outer_col(s5_ext, 8, False)
    assert st.values[d8] == 0
    # ub = 1 cells are decided immediately (below the congruence modulus)
    c6_col = _outer_col(s5_ext, 6, True)
    assert st.values[c6_col] == 1


def test_dress_worked_example(s5_ext):
    """Row S5/D12, congruence of the inner involution class: the two
    undecided order-4 cells keep candidates {0, 2} but must sum to 2."""
    ext = MarksExtender(s5_ext.pa, s5_ext.S)
    ext.assemble_inner()
    ri = _row_index(ext, 12)
    for rj in range(ri):
        st = ext.solve_row(rj)
        ext.rows.append([int(v) for v in st.values])
        ext._register_completed(st.index)
    st = ext.init_row(ri)
    c4 = _outer_col(ext, 4, True)
    v4 = _outer_col(ext, 4, False)
    dr = next(d for d in ext.dress_rows() if d.u_index == 1)
    assert dr.inner_size == 2 and dr.modulus == 4
    und = [j for j in dr.coeffs if j in st.cand]
    assert set(und) == {c4, v4}
    targets, fixed = ext._dress_targets(st, dr, und)
    # o_B = 1, so o_R = 1 and the two cells must sum to exactly 2
    assert targets == [2] and fixed == 0
    feas = ext._dress_enumerate(st, dr, und, targets, fixed)
    assert feas is not None
    assert ext.dress_pass(st, only=1) is False  # nothing prunable yet
    assert st.cand[c4] == (0, 2) and st.cand[v4] == (0, 2)
    # finish the row: the engine must resolve to (0, 2) without probing
    while st.cand:
        progress = ext.transitivity_pass(st)
        if st.cand and ext.dress_pass(st):
            progress = True
        if not progress and st.cand:
            ext.probe_one(st)
    assert st.values[c4] == 0 and st.values[v4] == 2
    assert ext.stats.probes == 0


def test_dress_zero_inner_forces_zero(s5_ext):
    """o_B = 0 forces the supported outer cells to zero (row D12 at the
    elementary-abelian inner class)."""
    ext = MarksExtender(s5_ext.pa, s5_ext.S)
    pat = ext.solve()
    i = next(k for k in range(pat.n)
             if pat.classes[k].order == 12 and pat.classes[k].kind == "outer")
    d8 = next(k for k in range(pat.n)
              if pat.classes[k].order == 8 and pat.classes[k].kind == "outer")
    assert pat.cell(i, d8) == 0


def test_transitivity_noop(s5_ext):
    ext = MarksExtender(s5_ext.pa, s5_ext.S)
    ext.assemble_inner()
    st = ext.init_row(0)
    assert not st.cand  # first outer row has no undecided cells
    assert ext.transitivity_pass(st) is False


# ---------------------------------------------------------------------------
# dress coefficient rows


def test_dress_matrix_s5_first_rows(s5_ext, s5):
    ext = MarksExtender(s5_ext.pa, s5_ext.S)
    ext.assemble_inner()
    rows = ext.dress_rows()
    by_index = {dr.u_index: dr for dr in rows}
    # U = 1: coefficients on cyclic classes, modulus |S5| = 120
    dr1 = by_index[0]
    assert dr1.modulus == 120
    c2r = _outer_col(ext, 2, True)
    c4 = _outer_col(ext, 4, True)
    c6 = _outer_col(ext, 6, True)
    assert dr1.coeffs == {0: 1, 1: 15, 2: 20, 4: 24,
                          c2r: 10, c4: 30, c6: 20}
    # U = C2 (inner): coefficients 1,1,1,1 with modulus 4
    dr2 = by_index[1]
    v4r = _outer_col(ext, 4, False)
    assert dr2.modulus == 4
    assert dr2.coeffs == {1: 1, 3: 1, c4: 1, v4r: 1}


def test_dress_row_whole_group(s5_ext):
    ext = MarksExtender(s5_ext.pa, s5_ext.S)
    pat = ext.solve()
    rows = dress_rows_full(pat)
    top = rows[-1]
    assert top.modulus == 1 and top.coeffs == {pat.n - 1: 1}


# ---------------------------------------------------------------------------
# incidence probes


def test_incidence_probe_self(s5):
    k = _sub(s5, "(1,2)")
    t = parse_cycles("(1,2)", 5)
    members = incidence_probe(s5, k, t)
    assert members == [k.elements()]


def test_incidence_probe_d8_s4(s4):
    d8 = _sub(s4, "(1,2,3,4)", "(1,3)")
    t = parse_cycles("(1,3)", 4)
    members = incidence_probe(s4, d8, t)
    assert len(members) == 1
    assert all(t in m for m in members)


def test_incidence_probe_empty(s5):
    s4sub = _sub(s5, "(1,2)", "(1,2,3,4)")
    t = parse_cycles("(1,2,3,4,5)", 5)
    assert incidence_probe(s5, s4sub, t) == []


def test_explicit_mark_values(s5, s4):
    d8 = _sub(s5, "(1,2,3,4)", "(1,3)")
    c4 = _sub(s5, "(1,2,3,4)")
    mark, size = explicit_mark(s5, d8, c4, parse_cycles("(1,2,3,4)", 5))
    assert mark == 1
    d12 = _sub(s5, "(1,2,3)", "(4,5)", "(1,2)")
    assert d12.order == 12
    v4red = _sub(s5, "(1,2)", "(3,4)")
    mark2, _ = explicit_mark(s5, d12, v4red, parse_cycles("(1,2)", 5))
    assert mark2 == 2
    c4red = _sub(s5, "(1,2,3,4)")
    mark3, _ = explicit_mark(s5, d12, c4red, parse_cycles("(1,2,3,4)", 5))
    assert mark3 == 0
    # Lagrange short-circuit
    c5 = _sub(s4, "(1,2,3)")
    mark4, size4 = explicit_mark(s4, _sub(s4, "(1,2)"), c5,
                                 parse_cycles("(1,2,3)", 4))
    assert (mark4, size4) == (0, 0)


# ---------------------------------------------------------------------------
# assembled tables


def s5_paper_permutation(pat):
    """Map paper positions of the S5 table onto the pattern's classes.

    Paper layout: inner block 1, C2, C3, 2^2, C5, S3, D10, A4, A5, then
    outer C2, C4, 2^2, S3, C6, D8, D12, 5:4, S4, S5.  Equal-order pairs
    are told apart by cyclicity.
    """
    spec = [(1, None, "inner"), (2, None, "inner"), (3, None, "inner"),
            (4, None, "inner"), (5, None, "inner"), (6, None, "inner"),
            (10, None, "inner"), (12, None, "inner"), (60, None, "inner"),
            (2, None, "outer"), (4, True, "outer"), (4, False, "outer"),
            (6, False, "outer"), (6, True, "outer"), (8, None, "outer"),
            (12, None, "outer"), (20, None, "outer"), (24, None, "outer"),
            (120, None, "outer")]
    perm = []
    for order, cyclic, kind in spec:
        for k, c in enumerate(pat.classes):
            if c.order != order or c.kind != kind or k in perm:
                continue
            if cyclic is not None:
                prof = dict(c.rep.order_profile())
                if bool(prof.get(order)) != cyclic:
                    continue
            perm.append(k)
            break
        else:
            raise AssertionError(f"no class for {order}, {cyclic}, {kind}")
    return perm


def test_s5_table_matches_figure(a5_pattern, s5):
    pat = extend_table_of_marks(a5_pattern, s5)
    assert pat.stats.probes == 0
    assert compare_patterns(pat, table_of_marks_brute(s5)).matched
    # rearrange into the published layout and compare cell by cell
    perm = s5_paper_permutation(pat)
    rearranged = [[pat.cell(perm[i], perm[j]) for j in range(i + 1)]
                  for i in range(pat.n)]
    assert rearranged == FIG_S5


def test_gl23_chain_panels(gl23):
    chain = solvable_pattern_chain(gl23)
    assert [p.rows for p in chain] == GL23_PANELS


def test_s4_solvable_matches_oracle(s4):
    pe = table_of_marks_solvable(s4)
    po = table_of_marks_brute(s4)
    assert compare_patterns(pe, po).matched
    assert not validate_pattern(pe)


def test_pattern_sorted_ascending(a5_pattern, s5):
    pat = extend_table_of_marks(a5_pattern, s5)
    srt = pat.sorted_ascending()
    orders = srt.class_orders()
    assert orders == sorted(orders)
    assert not validate_pattern(srt, check_dress=False)
    # gamma links survive the sort
    for j, c in enumerate(srt.classes):
        if c.gamma_index is not None:
            assert srt.classes[c.gamma_index].order * 2 == c.order


# ---------------------------------------------------------------------------
# verification


def test_verify_dress_passes(a5_pattern):
    ok, violations = verify_dress(a5_pattern)
    assert ok and not violations


def test_verify_dress_catches_perturbation(a5_pattern, s5):
    pat = extend_table_of_marks(a5_pattern, s5)
    ok, _ = verify_dress(pat)
    assert ok
    # perturb the D12-row entry in the cyclic order-4 column by +1
    i = next(k for k in range(pat.n)
             if pat.classes[k].order == 12 and pat.classes[k].kind == "outer")
    ext = MarksExtender(a5_pattern, s5)
    j = _outer_col(ext, 4, True)
    rows = [list(r) for r in pat.rows]
    rows[i][j] += 1
    bad = SubgroupPattern(group=pat.group, classes=pat.classes, rows=rows,
                          stats=pat.stats)
    ok2, violations = verify_dress(bad)
    assert not ok2
    assert any(f"row {i}" in v for v in violations)


def test_verify_trivial_pattern():
    ok, violations = verify_dress(trivial_pattern())
    assert ok and not violations


def test_validate_pattern_catches_bad_diag(a5_pattern):
    rows = [list(r) for r in a5_pattern.rows]
    rows[3][3] += 1
    bad = SubgroupPattern(group=a5_pattern.group, classes=a5_pattern.classes,
                          rows=rows, stats=a5_pattern.stats)
    problems = validate_pattern(bad, check_dress=False)
    assert problems


def test_inconsistent_input_detected(a5_pattern, s5):
    # corrupt one mark of the base pattern; the engine must notice
    rows = [list(r) for r in a5_pattern.rows]
    rows[5][1] += 2  # S3-row, C2-column
    bad = SubgroupPattern(group=a5_pattern.group, classes=a5_pattern.classes,
                          rows=rows, stats=a5_pattern.stats)
    with pytest.raises((InconsistentTableError, AssertionError)):
        extend_table_of_marks(bad, s5)
