"""Builders for the symmetric-graph families the classifier recognizes.

Each builder returns a Triple: the graph, a permutation group acting on its
vertices, and the vertex partition the quotient collapses.  Vertices of the
pair families are ordered distinct pairs of an underlying point set, in the
lexicographic numbering of graphs.pair_index; flag families use the
point-major flag order of designs.flags.  Builders verify the parameters
they advertise (cross valency t and cross support k) on a sample block pair
before returning.
"""

from __future__ import annotations

from typing import NamedTuple, Optional

from .designs import IncidenceStructure
from .errors import ConstructionError
from .ffield import FieldElement, FiniteField
from .graphs import (
    Graph,
    Partition,
    bipartite_between,
    orbital_graph,
    pair_index,
    quotient_graph,
)
from .groups_catalog import _field_for, m_group, pgammal_subgroup
from .permgroup import Permutation, PermutationGroup


class Provenance(NamedTuple):
    """Construction identity: kind, ordered parameters, nested source."""

    kind: str
    params: tuple[tuple[str, str], ...] = ()
    inner: Optional["Provenance"] = None

    @property
    def tag(self) -> str:
        if self.inner is not None:
            return f"{self.kind}:{self.inner.tag}"
        if not self.params:
            return self.kind
        joined = ":".join(f"{k}={v}" for k, v in self.params)
        return f"{self.kind}:{joined}"


class Triple:
    """A graph with the group and block partition it is symmetric over."""

    __slots__ = ("graph", "group", "partition", "provenance")

    def __init__(
        self,
        graph: Graph,
        group: PermutationGroup,
        partition: Partition,
        provenance: Provenance,
    ):
        if group.degree != graph.n:
            raise ConstructionError("group degree does not match the graph")
        if partition.n != graph.n:
            raise ConstructionError("partition does not match the graph")
        self.graph = graph
        self.group = group
        self.partition = partition
        self.provenance = provenance

    def __repr__(self) -> str:
        return f"Triple({self.provenance.tag}, n={self.graph.n})"


class PairRule(NamedTuple):
    tag: str
    design: IncidenceStructure | None = None


SAME_SECOND = PairRule("same_second")
ALL_DISTINCT = PairRule("all_distinct")
AFFINE_PLANE = PairRule("affine_plane")
AFFINE_NON_PLANE = PairRule("affine_non_plane")


def design_in(D: IncidenceStructure) -> PairRule:
    return PairRule("design_in", D)


def design_out(D: IncidenceStructure) -> PairRule:
    return PairRule("design_out", D)


class FlagRule(NamedTuple):
    tag: str


SAME_BLOCK = FlagRule("same_block")
DISJOINT_BLOCKS = FlagRule("disjoint_blocks")
COMMON_TWO_POINTS = FlagRule("common_two_points")
OPPOSITE_NON_COMPLEMENT = FlagRule("opposite_non_complement")
M22_DISJOINT = FlagRule("m22_disjoint")
M22_MEET_TWO = FlagRule("m22_meet_two")


# ---------------------------------------------------------------------------
# Shared plumbing.

def pair_action(G: PermutationGroup) -> PermutationGroup:
    """The coordinate-wise action on ordered distinct pairs of the domain."""
    m = G.degree
    if m < 3:
        raise ConstructionError("pair domain needs at least three points")
    npairs = m * (m - 1)
    gens = []
    for g in G.generators:
        im = g.images
        images = [0] * npairs
        for i in range(m):
            for j in range(m):
                if i != j:
                    images[pair_index(m, i, j)] = pair_index(m, im[i], im[j])
        gens.append(Permutation(images))
    return PermutationGroup(npairs, gens)


def pair_partition(m: int) -> Partition:
    """Pairs grouped by first coordinate; pair_index keeps each group
    contiguous."""
    width = m - 1
    return Partition(
        [tuple(range(i * width, (i + 1) * width)) for i in range(m)]
    )


def _assert_pair_params(
    triple: Triple, k: int, t: int, what: str
) -> None:
    """Measure cross support and cross valency on one adjacent block pair."""
    g, P = triple.graph, triple.partition
    quot = quotient_graph(g, P)
    pair = next(((i, j) for i, j in quot.edges()), None)
    if pair is None:
        raise ConstructionError(f"{what}: no adjacent blocks to verify against")
    i, j = pair
    tvals = bipartite_between(g, P.blocks[i], P.blocks[j])
    if tvals != {t}:
        raise ConstructionError(f"{what}: cross valencies {tvals}, expected {{{t}}}")
    mask_j = P.block_mask(j)
    support = sum(1 for x in P.blocks[i] if g.adj[x] & mask_j)
    if support != k:
        raise ConstructionError(f"{what}: cross support {support}, expected {k}")


# ---------------------------------------------------------------------------
# Cross-ratio families.

def _check_d(F: FiniteField, d: FieldElement | int) -> FieldElement:
    el = F.element(d) if isinstance(d, int) else d
    if el.field is not F:
        raise ConstructionError("d must come from the field of order q")
    if el.index in (0, 1):
        raise ConstructionError("d must avoid 0 and 1")
    return el


def cross_ratio_graph(q: int, d: FieldElement | int, s: int) -> Triple:
    """Orbital graph on ordered pairs of the projective line over GF(q),
    for the semilinear subgroup indexed by s and base pair (inf 0, 1 d)."""
    if q < 3:
        raise ConstructionError("need q >= 3")
    F = _field_for(q)
    el = _check_d(F, d)
    sd = F.subfield_degree(el)
    if s < 1 or sd % s:
        raise ConstructionError(
            f"s={s} must divide s(d)={sd} for d of index {el.index}"
        )
    G = pgammal_subgroup(q, s)
    big = pair_action(G)
    m = q + 1
    x = pair_index(m, 0, 1)  # (inf, 0)
    y = pair_index(m, 2, 1 + el.index)  # (1, d)
    graph = orbital_graph(big, x, y)
    prov = Provenance(
        "cr", (("q", str(q)), ("d", str(el.index)), ("s", str(s)))
    )
    triple = Triple(graph, big, pair_partition(m), prov)
    _assert_pair_params(triple, q - 1, sd // s, prov.tag)
    return triple


def twisted_cross_ratio_graph(q: int, d: FieldElement | int, s: int) -> Triple:
    """The twisted variant: same pair domain and base pair, but the group is
    the half-semilinear subgroup twisted by the s/2 power of Frobenius.  When
    d - 1 is a non-square the base orbital is not self-paired and that error
    is allowed to surface."""
    F = _field_for(q)
    if F.p == 2:
        raise ConstructionError("twisted graphs need odd characteristic")
    if F.n % 2:
        raise ConstructionError("twisted graphs need even field degree")
    if q < 9:
        raise ConstructionError("need q >= 9")
    el = _check_d(F, d)
    sd = F.subfield_degree(el)
    if s % 2 or sd % 2:
        raise ConstructionError("both s and s(d) must be even")
    if s < 2 or sd % s:
        raise ConstructionError(f"s={s} must divide s(d)={sd}")
    G = m_group(s // 2, q)
    big = pair_action(G)
    m = q + 1
    x = pair_index(m, 0, 1)
    y = pair_index(m, 2, 1 + el.index)
    graph = orbital_graph(big, x, y)
    prov = Provenance(
        "tcr", (("q", str(q)), ("d", str(el.index)), ("s", str(s)))
    )
    triple = Triple(graph, big, pair_partition(m), prov)
    _assert_pair_params(triple, q - 1, sd // s, prov.tag)
    return triple


# ---------------------------------------------------------------------------
# Pair-labeled graphs.

def _design_foursets(D: IncidenceStructure) -> set[frozenset[int]]:
    out: set[frozenset[int]] = set()
    for blk in D.blocks:
        n = len(blk)
        for a in range(n):
            for b in range(a + 1, n):
                for c in range(b + 1, n):
                    for e in range(c + 1, n):
                        out.add(frozenset((blk[a], blk[b], blk[c], blk[e])))
    return out


def pair_graph(
    G: PermutationGroup, rule: PairRule, group_label: str | None = None
) -> Triple:
    m = G.degree
    if m < 3:
        raise ConstructionError("need at least three points")
    if not G.is_transitive():
        raise ConstructionError("group must be transitive")

    fourset: set[frozenset[int]] | None = None
    if rule.tag in ("affine_plane", "affine_non_plane"):
        if m < 4 or m & (m - 1):
            raise ConstructionError(
                f"{rule.tag} needs a power-of-two point count, got {m}"
            )
    elif rule.tag in ("design_in", "design_out"):
        D = rule.design
        if D is None:
            raise ConstructionError(f"{rule.tag} needs an attached design")
        if D.v != m:
            raise ConstructionError(
                f"design has {D.v} points but the group moves {m}"
            )
        p = D.params()
        if p.max_t < 3 or p.lambda_t(3) < 1:
            raise ConstructionError("design must cover every point triple")
        fourset = _design_foursets(D)
    elif rule.tag not in ("same_second", "all_distinct"):
        raise ConstructionError(f"unknown pair rule {rule.tag!r}")
    elif rule.design is not None:
        raise ConstructionError(f"{rule.tag} takes no design")

    def adjacent(i: int, j: int, i2: int, j2: int) -> bool:
        if rule.tag == "same_second":
            return j == j2 and i != i2
        distinct = len({i, j, i2, j2}) == 4
        if rule.tag == "all_distinct":
            return distinct
        if rule.tag == "affine_plane":
            return distinct and i ^ j ^ i2 ^ j2 == 0
        if rule.tag == "affine_non_plane":
            return distinct and i ^ j ^ i2 ^ j2 != 0
        if not distinct:
            return False
        inside = frozenset((i, j, i2, j2)) in fourset
        return inside if rule.tag == "design_in" else not inside

    npairs = m * (m - 1)
    edges = []
    for a in range(npairs):
        i, j = divmod(a, m - 1)
        j = j + 1 if j >= i else j
        for b in range(a + 1, npairs):
            i2, j2 = divmod(b, m - 1)
            j2 = j2 + 1 if j2 >= i2 else j2
            if adjacent(i, j, i2, j2):
                edges.append((a, b))
    graph = Graph.from_edges(npairs, edges)
    params = []
    if group_label:
        params.append(("group", group_label))
    if rule.design is not None:
        params.append(("design", f"v{rule.design.v}b{rule.design.b}"))
    params.append(("rule", rule.tag))
    prov = Provenance("pair", tuple(params))
    return Triple(graph, pair_action(G), pair_partition(m), prov)


# ---------------------------------------------------------------------------
# Flag graphs.

def flag_graph(
    D: IncidenceStructure,
    G: PermutationGroup,
    rule: FlagRule,
    design_label: str | None = None,
    group_label: str | None = None,
) -> Triple:
    if G.degree != D.v:
        raise ConstructionError("group degree does not match the design")
    if len(set(D.blocks)) != len(D.blocks):
        raise ConstructionError("flag graphs need distinct blocks")
    if not all(D.preserves(g) for g in G.generators):
        raise ConstructionError("group does not preserve the design")

    block_sets = [frozenset(b) for b in D.blocks]
    if rule.tag == "opposite_non_complement":
        full = frozenset(range(D.v))
        complement_of = {}
        lookup = {fs: i for i, fs in enumerate(block_sets)}
        for i, fs in enumerate(block_sets):
            other = lookup.get(full - fs)
            if other is None:
                raise ConstructionError(
                    "rule needs a complement-closed block set"
                )
            complement_of[i] = other
    elif rule.tag in ("m22_disjoint", "m22_meet_two"):
        p = D.params()
        if (D.v, D.b, p.k) != (22, 77, 6) or p.lambda_t(3) != 1:
            raise ConstructionError(
                f"{rule.tag} is specific to the 22-point triple system"
            )
    elif rule.tag not in (
        "same_block", "disjoint_blocks", "common_two_points"
    ):
        raise ConstructionError(f"unknown flag rule {rule.tag!r}")

    flag_list = [
        (p, bi)
        for p in range(D.v)
        for bi in range(D.b)
        if p in block_sets[bi]
    ]
    flag_of = {f: i for i, f in enumerate(flag_list)}

    def adjacent(p: int, bi: int, p2: int, bi2: int) -> bool:
        if p == p2:
            return False
        b1, b2 = block_sets[bi], block_sets[bi2]
        if rule.tag == "same_block":
            return bi == bi2
        if rule.tag == "disjoint_blocks":
            return not b1 & b2
        if rule.tag == "common_two_points":
            return bi != bi2 and p in b2 and p2 in b1
        if p in b2 or p2 in b1:
            return False
        if rule.tag == "opposite_non_complement":
            return bi2 != complement_of[bi]
        meet = len(b1 & b2)
        return meet == 0 if rule.tag == "m22_disjoint" else meet == 2

    nf = len(flag_list)
    edges = []
    for a in range(nf):
        p, bi = flag_list[a]
        for b in range(a + 1, nf):
            p2, bi2 = flag_list[b]
            if adjacent(p, bi, p2, bi2):
                edges.append((a, b))
    graph = Graph.from_edges(nf, edges)

    block_index = {blk: i for i, blk in enumerate(D.blocks)}
    gens = []
    for g in G.generators:
        images = [0] * nf
        for a, (p, bi) in enumerate(flag_list):
            target = tuple(sorted(g(x) for x in D.blocks[bi]))
            images[a] = flag_of[(g(p), block_index[target])]
        gens.append(Permutation(images))
    flag_group = PermutationGroup(nf, gens)

    blocks = []
    start = 0
    for p in range(D.v):
        count = sum(1 for f in flag_list if f[0] == p)
        blocks.append(tuple(range(start, start + count)))
        start += count
    partition = Partition(blocks)

    params = []
    if design_label:
        params.append(("design", design_label))
    if group_label:
        params.append(("group", group_label))
    params.append(("rule", rule.tag))
    prov = Provenance("flag", tuple(params))
    return Triple(graph, flag_group, partition, prov)


# ---------------------------------------------------------------------------
# The *-transform.

def star_transform(T: Triple) -> Triple:
    """Complement the cross edges inside each adjacent block pair's support
    rectangle, keeping group and partition."""
    g, P = T.graph, T.partition
    quot = quotient_graph(g, P)
    qedges = quot.edges()
    if not qedges:
        raise ConstructionError("no adjacent blocks to transform")
    i, j = qedges[0]
    mask_i, mask_j = P.block_mask(i), P.block_mask(j)
    x_ij = [x for x in P.blocks[i] if g.adj[x] & mask_j]
    x_ji = [x for x in P.blocks[j] if g.adj[x] & mask_i]
    k = len(x_ij)
    if k < 2 or len(x_ji) != k:
        raise ConstructionError(
            f"cross support must be >= 2 on both sides, got {k}/{len(x_ji)}"
        )
    non_edges = [
        (x, y) for x in x_ij for y in x_ji if not g.has_edge(x, y)
    ]
    if not non_edges:
        raise ConstructionError("support rectangle is complete; nothing to swap")

    # one group orbit must cover the rectangle's non-edges (pairs that leave
    # the rectangle land in other block pairs and do not matter here)
    n = g.n
    x0, y0 = non_edges[0]
    code0 = min(x0, y0) * n + max(x0, y0)
    seen = {code0}
    queue = [code0]
    qi = 0
    gen_images = [p.images for p in T.group.generators]
    while qi < len(queue):
        a, b = divmod(queue[qi], n)
        qi += 1
        for im in gen_images:
            p2, q2 = im[a], im[b]
            if p2 > q2:
                p2, q2 = q2, p2
            nxt = p2 * n + q2
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    for x, y in non_edges:
        if min(x, y) * n + max(x, y) not in seen:
            raise ConstructionError(
                "non-edges of the support rectangle split into several orbits"
            )

    rows = list(g.adj)
    for bi, bj in qedges:
        mi, mj = P.block_mask(bi), P.block_mask(bj)
        sup_i = [x for x in P.blocks[bi] if rows[x] & mj]
        sup_j = [y for y in P.blocks[bj] if rows[y] & mi]
        sup_j_mask = 0
        for y in sup_j:
            sup_j_mask |= 1 << y
        sup_i_mask = 0
        for x in sup_i:
            sup_i_mask |= 1 << x
        for x in sup_i:
            rows[x] = (rows[x] & ~sup_j_mask) | (sup_j_mask & ~g.adj[x])
        for y in sup_j:
            rows[y] = (rows[y] & ~sup_i_mask) | (sup_i_mask & ~g.adj[y])
    star = Graph(g.n, rows)

    prov = Provenance("star", (), T.provenance)
    out = Triple(star, T.group, P, prov)
    tvals = bipartite_between(g, P.blocks[i], P.blocks[j])
    if len(tvals) == 1:
        t = tvals.pop()
        _assert_pair_params(out, k, k - t, prov.tag)
    return out


# ---------------------------------------------------------------------------
# Matchings on pair labels.

def matching_graph(
    G: PermutationGroup, group_label: str | None = None
) -> Triple:
    m = G.degree
    if G.transitivity_degree() < 3:
        raise ConstructionError("matching construction needs 3-transitivity")
    npairs = m * (m - 1)
    edges = [
        (pair_index(m, i, j), pair_index(m, j, i))
        for i in range(m)
        for j in range(i + 1, m)
    ]
    graph = Graph.from_edges(npairs, edges)
    params = []
    if group_label:
        params.append(("group", group_label))
    prov = Provenance("match", tuple(params))
    return Triple(graph, pair_action(G), pair_partition(m), prov)
