"""Executable acceptance checklist.

Nine numbered criteria pin the package to known ground truth: structure
identities of the smallest cross-ratio graphs, the parameter law across
a field sweep, the self-paired gate of the twisted family, the worked
small examples, flag graph shapes, stabilizer orbit tables, the cross
valencies of the t >= 2 constructions, a closed classification loop,
and a bundle of algebraic properties.  Each criterion reports a list of
failure strings and carries a wall-clock budget.

``run_all`` drives every criterion in order.  The command line selftest
verb and the acceptance test module both call into this file, so there
is exactly one definition of what a working build means.
"""

from __future__ import annotations

import time
from functools import lru_cache
from typing import Callable, NamedTuple

from .classify import (
    _cr_expected,
    census,
    classify_triple,
    compute_params,
    orbit_length_check,
)
from .constructions import (
    AFFINE_PLANE,
    ALL_DISTINCT,
    COMMON_TWO_POINTS,
    DISJOINT_BLOCKS,
    M22_DISJOINT,
    M22_MEET_TWO,
    SAME_BLOCK,
    Triple,
    cross_ratio_graph,
    design_in,
    design_out,
    flag_graph,
    pair_graph,
    star_transform,
    twisted_cross_ratio_graph,
)
from .designs import ag_design, design_3_12_6_2, steiner_3_22_6
from .errors import (
    ClassificationError,
    ConstructionError,
    NotSelfPairedError,
)
from .graphs import (
    StructureTag,
    bipartite_between,
    connected_components,
    quotient_graph,
    recognize_structure,
)
from .groups_catalog import _field_for, agl, mathieu, sym_alt, z24_a7

BUDGET_SECONDS = {
    1: 1.0,
    2: 60.0,
    3: 300.0,
    4: 5.0,
    5: 120.0,
    6: 120.0,
    7: 180.0,
    8: 600.0,
    9: 300.0,
}

TITLES = {
    1: "small cross-ratio identities",
    2: "cross-ratio parameter law",
    3: "twisted self-paired gate",
    4: "worked small examples",
    5: "flag graph shapes",
    6: "stabilizer orbit tables",
    7: "cross valencies for t >= 2",
    8: "closed-loop classification",
    9: "property suites",
}

CR_FIELD_SIZES = (3, 4, 5, 7, 8, 9, 11, 13, 16)


class CriterionResult(NamedTuple):
    number: int
    passed: bool
    elapsed: float
    detail: str


@lru_cache(maxsize=None)
def _group(name: str):
    builders = {
        "s5": lambda: sym_alt(5, False),
        "agl3": lambda: agl(3, 2),
        "agl4": lambda: agl(4, 2),
        "m22": lambda: mathieu("M22"),
        "m11_12": lambda: mathieu("M11on12"),
    }
    return builders[name]()


@lru_cache(maxsize=None)
def _design(name: str):
    builders = {
        "ag3": lambda: ag_design(3, 2),
        "ag4": lambda: ag_design(4, 3),
        "s22": steiner_3_22_6,
        "h12": design_3_12_6_2,
    }
    return builders[name]()


_BUILDERS: dict[str, Callable[[], Triple]] = {
    "cr3": lambda: cross_ratio_graph(3, 2, 1),
    "cr5": lambda: cross_ratio_graph(5, 4, 1),
    "tcr81": lambda: twisted_cross_ratio_graph(81, 3, 2),
    "pair_plane_d3": lambda: pair_graph(_group("agl3"), AFFINE_PLANE),
    "pair_distinct_s5": lambda: pair_graph(_group("s5"), ALL_DISTINCT),
    "pair_out_22": lambda: pair_graph(_group("m22"), design_out(_design("s22"))),
    "pair_in_22": lambda: pair_graph(_group("m22"), design_in(_design("s22"))),
    "pair_out_12": lambda: pair_graph(_group("m11_12"), design_out(_design("h12"))),
    "pair_in_12": lambda: pair_graph(_group("m11_12"), design_in(_design("h12"))),
    "flag_same_d3": lambda: flag_graph(_design("ag3"), _group("agl3"), SAME_BLOCK),
    "flag_same_d4": lambda: flag_graph(_design("ag4"), _group("agl4"), SAME_BLOCK),
    "flag_disjoint_d3": lambda: flag_graph(
        _design("ag3"), _group("agl3"), DISJOINT_BLOCKS
    ),
    "flag_disjoint_d4": lambda: flag_graph(
        _design("ag4"), _group("agl4"), DISJOINT_BLOCKS
    ),
    "flag_common_d3": lambda: flag_graph(
        _design("ag3"), _group("agl3"), COMMON_TWO_POINTS
    ),
    "flag_common_d4": lambda: flag_graph(
        _design("ag4"), _group("agl4"), COMMON_TWO_POINTS
    ),
    "flag_same_22": lambda: flag_graph(_design("s22"), _group("m22"), SAME_BLOCK),
    "flag_far_22": lambda: flag_graph(_design("s22"), _group("m22"), M22_DISJOINT),
    "flag_meet_two_22": lambda: flag_graph(
        _design("s22"), _group("m22"), M22_MEET_TWO
    ),
    "flag_same_12": lambda: flag_graph(_design("h12"), _group("m11_12"), SAME_BLOCK),
    "flag_disjoint_12": lambda: flag_graph(
        _design("h12"), _group("m11_12"), DISJOINT_BLOCKS
    ),
}

# Verdict each named fixture's constructor declares; the closed loop in
# criterion 8 replays every one through the classifier.
_DECLARED = {
    "cr3": _cr_expected(3, 1),
    "cr5": _cr_expected(5, 1),
    "tcr81": _cr_expected(81, 2),
    "pair_plane_d3": ("1.1(b)(iv)",),
    "pair_distinct_s5": ("1.2(b)(i)",),
    "pair_out_22": ("1.2(b)(iii.1)",),
    "pair_in_22": ("1.2(b)(iii.2)",),
    "pair_out_12": ("1.2(b)(iii.1)",),
    "pair_in_12": ("1.2(b)(iii.2)",),
    "flag_same_d3": ("1.1(c)(i)",),
    "flag_same_d4": ("1.1(c)(i)",),
    "flag_disjoint_d3": ("1.1(d)",),
    "flag_disjoint_d4": ("1.1(d)",),
    "flag_common_d3": ("1.2(c)(i)",),
    "flag_common_d4": ("1.2(c)(i)",),
    "flag_same_22": ("1.1(c)(ii)",),
    "flag_far_22": ("1.2(c)(iii)",),
    "flag_meet_two_22": ("1.2(c)(iii)",),
    "flag_same_12": ("1.1(c)(iii)",),
    "flag_disjoint_12": ("1.1(d)",),
}

_CACHE: dict[str, Triple] = {}


def _triple(name: str) -> Triple:
    if name not in _CACHE:
        _CACHE[name] = _BUILDERS[name]()
    return _CACHE[name]


def _shape(T: Triple):
    """(v, b, k, t, c, complete) measured off the first quotient edge."""
    g, P = T.graph, T.partition
    v = P.uniform_block_size()
    quot = quotient_graph(g, P)
    b = quot.valency()
    c = quot.n
    complete = quot.edge_count == c * (c - 1) // 2
    k = t = None
    for j in range(1, c):
        if not quot.has_edge(0, j):
            continue
        cross = bipartite_between(g, P.blocks[0], P.blocks[j])
        if len(cross) == 1:
            t = next(iter(cross))
            mask = P.block_mask(j)
            k = sum(1 for x in P.blocks[0] if g.adj[x] & mask)
        break
    return v, b, k, t, c, complete


@lru_cache(maxsize=None)
def _cr_sweep() -> tuple:
    out = []
    for q in CR_FIELD_SIZES:
        F = _field_for(q)
        for idx in range(2, q):
            sd = F.subfield_degree(F.element(idx))
            for s in range(1, sd + 1):
                if sd % s == 0:
                    out.append((q, idx, sd, s, cross_ratio_graph(q, idx, s)))
    return tuple(out)


@lru_cache(maxsize=None)
def _tcr9_cases() -> tuple:
    """(index, square?, triple-or-None) for every even-closure shift over
    the nine-element field."""
    F = _field_for(9)
    one = F.element(1)
    squares = {F.element(i) * F.element(i) for i in range(9)}
    out = []
    for idx in range(2, 9):
        el = F.element(idx)
        if F.subfield_degree(el) % 2:
            continue
        if el - one in squares:
            out.append((idx, True, twisted_cross_ratio_graph(9, idx, 2)))
        else:
            out.append((idx, False, None))
    return tuple(out)


def _criterion_1() -> list[str]:
    fails = []
    for name, want in (
        ("cr3", StructureTag("DisjointCycles", (3, 4))),
        ("cr5", StructureTag("DisjointCompleteMultipartite", (5, 3, 2))),
    ):
        got = recognize_structure(_triple(name).graph)
        if got != want:
            fails.append(f"{name} has structure {got}, not {want}")
    return fails


def _criterion_2() -> list[str]:
    fails = []
    for q, idx, sd, s, T in _cr_sweep():
        v, b, k, t, c, complete = _shape(T)
        tag = f"cr:q={q}:d={idx}:s={s}"
        if (v, b, k, t) != (q, q, q - 1, sd // s):
            fails.append(
                f"{tag} measured (v,b,k,t)=({v},{b},{k},{t}), "
                f"wanted ({q},{q},{q - 1},{sd // s})"
            )
        if c != q + 1 or not complete:
            fails.append(f"{tag} quotient is not complete on {q + 1} blocks")
    return fails


def _criterion_3() -> list[str]:
    fails = []
    for idx, is_square, T in _tcr9_cases():
        tag = f"tcr:q=9:d={idx}:s=2"
        if is_square:
            v, b, k, t, c, complete = _shape(T)
            if (k, t) != (8, 1) or not complete:
                fails.append(f"{tag} measured (k,t)=({k},{t}), wanted (8,1)")
        else:
            try:
                twisted_cross_ratio_graph(9, idx, 2)
                fails.append(f"{tag} built; a non-square shift must be rejected")
            except NotSelfPairedError:
                pass
    F = _field_for(81)
    if F.subfield_degree(F.element(3)) != 4:
        fails.append("shift index 3 over the 81-element field should close at 4")
    big = _triple("tcr81")
    v, b, k, t, c, complete = _shape(big)
    if big.graph.n != 6642 or t != 2 or not complete:
        fails.append(
            f"tcr:q=81:d=3:s=2 gives n={big.graph.n}, t={t}; wanted n=6642, t=2"
        )
    return fails


def _criterion_4() -> list[str]:
    fails = []

    T = _triple("pair_plane_d3")
    P = compute_params(T)
    if (P.v, P.b, P.r, P.k, P.t) != (7, 7, 6, 6, 1):
        fails.append(f"pair_plane_d3 params {P}, wanted (7,7,6,6,1)")
    got = recognize_structure(T.graph)
    if got != StructureTag("DisjointCompleteMultipartite", (7, 4, 2)):
        fails.append(f"pair_plane_d3 structure {got}")

    T = _triple("pair_distinct_s5")
    P = compute_params(T)
    if (P.v, P.b, P.r, P.k, P.t) != (4, 4, 3, 3, 2):
        fails.append(f"pair_distinct_s5 params {P}, wanted (4,4,3,3,2)")
    if T.graph.valency() != 6:
        fails.append(f"pair_distinct_s5 valency {T.graph.valency()}, wanted 6")
    if len(connected_components(T.graph)) != 1:
        fails.append("pair_distinct_s5 is not connected")
    _, _, _, _, c, complete = _shape(T)
    if c != 5 or not complete:
        fails.append("pair_distinct_s5 quotient is not complete on 5 blocks")
    star = recognize_structure(star_transform(T).graph)
    if star != StructureTag("DisjointComplete", (5, 4)):
        fails.append(f"pair_distinct_s5 star structure {star}")

    T = _triple("flag_common_d3")
    P = compute_params(T)
    if (P.v, P.k, P.t) != (7, 3, 2):
        fails.append(f"flag_common_d3 (v,k,t)=({P.v},{P.k},{P.t}), wanted (7,3,2)")
    _, _, _, _, c, complete = _shape(T)
    if c != 8 or not complete:
        fails.append("flag_common_d3 quotient is not complete on 8 blocks")
    star = recognize_structure(star_transform(T).graph)
    if star != StructureTag("DisjointComplete", (14, 4)):
        fails.append(f"flag_common_d3 star structure {star}")
    return fails


def _criterion_5() -> list[str]:
    fails = []
    for name, want in (
        ("flag_same_d3", StructureTag("DisjointComplete", (14, 4))),
        ("flag_same_d4", StructureTag("DisjointComplete", (30, 8))),
        ("flag_disjoint_d3", StructureTag("DisjointCompleteBipartite", (7, 4))),
        ("flag_disjoint_d4", StructureTag("DisjointCompleteBipartite", (15, 8))),
        ("flag_same_22", StructureTag("DisjointComplete", (77, 6))),
        ("flag_same_12", StructureTag("DisjointComplete", (22, 6))),
        ("flag_disjoint_12", StructureTag("DisjointCompleteBipartite", (11, 6))),
    ):
        got = recognize_structure(_triple(name).graph)
        if got != want:
            fails.append(f"{name} has structure {got}, not {want}")
    return fails


def _criterion_6() -> list[str]:
    tables = {
        "flag_same_d3": ((1, 2, 4), (1, 3, 3)),
        "flag_same_d4": ((1, 6, 8), (1, 7, 7)),
        "flag_same_22": ((1, 4, 16), (5, 6, 10)),
        "flag_same_12": ((1, 4, 6), (1, 5, 5)),
    }
    fails = []
    for name, (inc, non) in tables.items():
        res = orbit_length_check(_triple(name))
        got_inc = tuple(res["incident"]["orbit_lengths"])
        got_non = tuple(res["non_incident"]["orbit_lengths"])
        if got_inc != inc or got_non != non:
            fails.append(
                f"{name} orbit lengths {got_inc}/{got_non}, wanted {inc}/{non}"
            )
        if not res["match"]:
            fails.append(f"{name} orbit table mismatch: {res}")
    return fails


def _criterion_7() -> list[str]:
    wanted = {
        "pair_out_22": 16,
        "pair_in_22": 3,
        "pair_out_12": 3,
        "pair_in_12": 6,
        "flag_far_22": 6,
        "flag_meet_two_22": 10,
        "flag_common_d3": 2,
        "flag_common_d4": 6,
    }
    fails = []
    for name, t_want in wanted.items():
        _, _, _, t, _, _ = _shape(_triple(name))
        if t != t_want:
            fails.append(f"{name} has cross valency {t}, wanted {t_want}")
    return fails


def _criterion_8() -> list[str]:
    fails = []
    for q, idx, sd, s, T in _cr_sweep():
        want = _cr_expected(q, sd // s)
        verdict = classify_triple(T).theorem_case
        if verdict not in want:
            fails.append(f"cr:q={q}:d={idx}:s={s} classified {verdict}, not {want}")
    for idx, is_square, T in _tcr9_cases():
        if not is_square:
            continue
        verdict = classify_triple(T).theorem_case
        if verdict not in _cr_expected(9, 1):
            fails.append(f"tcr:q=9:d={idx}:s=2 classified {verdict}")
    for name, want in _DECLARED.items():
        verdict = classify_triple(_triple(name)).theorem_case
        if verdict not in want:
            fails.append(f"{name} classified {verdict}, declared {want}")
    try:
        rows = census(9, 3)
    except ClassificationError as exc:
        return fails + [f"census(9, 3) reported escapes: {exc}"]
    bad = [r.tag for r in rows if r.verdict.theorem_case not in r.expected]
    if bad:
        fails.append(f"census rows off their declared lists: {bad}")
    return fails


def _criterion_9() -> list[str]:
    fails = []

    counted = [T for _, _, _, _, T in _cr_sweep()]
    counted += [T for _, sq, T in _tcr9_cases() if sq]
    counted += [_triple(name) for name in _BUILDERS]
    for T in counted:
        P = compute_params(T)
        if P.v * P.s != P.b * P.m or P.v * P.r != P.b * P.k:
            fails.append(f"{T.provenance.tag} breaks vs = bm or vr = bk: {P}")

    involution = (
        "pair_plane_d3",
        "pair_distinct_s5",
        "pair_out_12",
        "pair_in_12",
        "flag_same_d3",
        "flag_disjoint_d3",
        "flag_common_d3",
        "flag_same_12",
        "flag_disjoint_12",
        "flag_same_22",
    )
    for name in involution:
        T = _triple(name)
        try:
            back = star_transform(star_transform(T))
        except ConstructionError:
            continue
        if back.graph.adj != T.graph.adj:
            fails.append(f"{name} star transform applied twice moved edges")

    for label, got, want in (
        ("22-point Mathieu group", _group("m22").order(), 443520),
        ("11-point Mathieu group on 12 points", _group("m11_12").order(), 7920),
        ("rank-4 binary affine group", _group("agl4").order(), 322560),
        ("binary translation extension", z24_a7().order(), 40320),
    ):
        if got != want:
            fails.append(f"{label} has order {got}, not {want}")

    D = _design("s22")
    dp = D.params()
    if D.b != 77 or dp.lambda_t(3) != 1:
        fails.append(f"22-point design has b={D.b}, lambda_3={dp.lambdas}")
    beta = set(D.blocks[0])
    meets_two = sum(
        1 for blk in D.blocks[1:] if len(beta.intersection(blk)) == 2
    )
    if meets_two != 60:
        fails.append(f"{meets_two} blocks meet a fixed block in two points, not 60")
    outside = [p for p in range(D.v) if p not in beta]
    for P0 in sorted(beta):
        for P1 in outside:
            both = on_new = disj = 0
            for blk in D.blocks:
                if P1 not in blk:
                    continue
                hits = len(beta.intersection(blk))
                if hits == 0:
                    disj += 1
                elif hits == 2:
                    if P0 in blk:
                        both += 1
                    else:
                        on_new += 1
            if (both, on_new, disj) != (5, 10, 6):
                fails.append(
                    f"point split ({both},{on_new},{disj}) at ({P0},{P1}), "
                    "wanted (5,10,6)"
                )
                break
        else:
            continue
        break

    H = _design("h12")
    hp = H.params()
    blocks = set(H.blocks)
    closed = all(
        tuple(sorted(set(range(12)) - set(blk))) in blocks for blk in blocks
    )
    if H.b != 22 or not closed or hp.lambda_t(3) != 2:
        fails.append(
            f"12-point design has b={H.b}, complement-closed={closed}, "
            f"lambda_3={hp.lambdas}"
        )
    return fails


_CRITERIA: dict[int, Callable[[], list[str]]] = {
    1: _criterion_1,
    2: _criterion_2,
    3: _criterion_3,
    4: _criterion_4,
    5: _criterion_5,
    6: _criterion_6,
    7: _criterion_7,
    8: _criterion_8,
    9: _criterion_9,
}


def run_criterion(number: int) -> CriterionResult:
    if number not in _CRITERIA:
        raise ValueError(f"criterion number must be 1..9, got {number}")
    start = time.perf_counter()
    fails = _CRITERIA[number]()
    elapsed = time.perf_counter() - start
    budget = BUDGET_SECONDS[number]
    if elapsed > budget:
        fails = fails + [f"overran the {budget:.0f}s budget at {elapsed:.1f}s"]
    if len(fails) > 6:
        fails = fails[:6] + [f"... {len(fails) - 6} more"]
    detail = "ok" if not fails else "; ".join(fails)
    return CriterionResult(number, not fails, elapsed, detail)


def run_all() -> list[CriterionResult]:
    return [run_criterion(n) for n in sorted(_CRITERIA)]
