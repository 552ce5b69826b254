"""Bitset graphs, quotients by vertex partitions, and shape recognition.

A graph stores one integer per vertex whose set bits are the neighbour set,
so adjacency tests, cross-valency counts, and complement tricks are single
mask operations.  The recognizers decompose a graph into connected
components and name the shape when every component is the same complete,
complete bipartite, complete multipartite, or cycle graph; everything else
is tagged Other rather than guessed at.
"""

from __future__ import annotations

from typing import Iterable, NamedTuple, Sequence

from .errors import GraphError, NotSelfPairedError
from .permgroup import PermutationGroup

ISO_CAP = 256


class Graph:
    """Undirected loop-free graph on vertices 0..n-1 with bitset rows."""

    __slots__ = ("n", "adj")

    def __init__(self, n: int, adj: Sequence[int]):
        if n < 1:
            raise GraphError("graph needs at least one vertex")
        if len(adj) != n:
            raise GraphError(f"adjacency has {len(adj)} rows for {n} vertices")
        rows = tuple(int(r) for r in adj)
        full = (1 << n) - 1
        for u, row in enumerate(rows):
            if row < 0 or row & ~full:
                raise GraphError(f"row {u} has bits outside 0..{n - 1}")
            if row >> u & 1:
                raise GraphError(f"loop at vertex {u}")
        for u, row in enumerate(rows):
            rest = row
            while rest:
                v = (rest & -rest).bit_length() - 1
                rest &= rest - 1
                if not rows[v] >> u & 1:
                    raise GraphError(f"edge {u}-{v} missing its reverse")
        self.n = n
        self.adj = rows

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge {u}-{v} out of range")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, rows)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, u: int) -> int:
        return self.adj[u].bit_count()

    @property
    def edge_count(self) -> int:
        return sum(r.bit_count() for r in self.adj) // 2

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for u, row in enumerate(self.adj):
            rest = row >> (u + 1) << (u + 1)
            while rest:
                v = (rest & -rest).bit_length() - 1
                rest &= rest - 1
                out.append((u, v))
        return out

    def valency(self) -> int:
        """Common vertex degree; raises when the graph is not regular."""
        degrees = {r.bit_count() for r in self.adj}
        if len(degrees) != 1:
            raise GraphError("graph is not regular")
        return degrees.pop()

    def is_regular(self) -> bool:
        return len({r.bit_count() for r in self.adj}) == 1

    def neighbors(self, u: int) -> list[int]:
        return _bits(self.adj[u])

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Graph) and other.n == self.n and other.adj == self.adj
        )

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edge_count})"


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        out.append((mask & -mask).bit_length() - 1)
        mask &= mask - 1
    return out


class Partition:
    """Disjoint nonempty vertex blocks covering 0..n-1."""

    __slots__ = ("n", "blocks", "block_of", "_masks")

    def __init__(self, blocks: Sequence[Sequence[int]], n: int | None = None):
        frozen = []
        seen: set[int] = set()
        for blk in blocks:
            t = tuple(sorted(blk))
            if not t:
                raise GraphError("empty block")
            if len(set(t)) != len(t) or seen & set(t):
                raise GraphError("blocks overlap")
            seen |= set(t)
            frozen.append(t)
        if not frozen:
            raise GraphError("partition needs at least one block")
        count = n if n is not None else max(seen) + 1
        if seen != set(range(count)):
            raise GraphError("blocks do not cover the vertex set")
        self.n = count
        self.blocks: tuple[tuple[int, ...], ...] = tuple(frozen)
        block_of = [0] * count
        for bi, blk in enumerate(frozen):
            for x in blk:
                block_of[x] = bi
        self.block_of: tuple[int, ...] = tuple(block_of)
        masks = []
        for blk in frozen:
            m = 0
            for x in blk:
                m |= 1 << x
            masks.append(m)
        self._masks: tuple[int, ...] = tuple(masks)

    def block_mask(self, j: int) -> int:
        return self._masks[j]

    @property
    def block_count(self) -> int:
        return len(self.blocks)

    def uniform_block_size(self) -> int | None:
        sizes = {len(b) for b in self.blocks}
        return sizes.pop() if len(sizes) == 1 else None

    def __repr__(self) -> str:
        return f"Partition(n={self.n}, blocks={len(self.blocks)})"


class StructureTag(NamedTuple):
    """Recognition result: a shape name plus its multiplicities."""

    kind: str
    params: tuple[int, ...] = ()

    def __str__(self) -> str:
        if not self.params:
            return self.kind
        return f"{self.kind}{self.params!r}".replace(" ", "")


OTHER = StructureTag("Other")


def disjoint_complete(c: int, m: int) -> StructureTag:
    return StructureTag("DisjointComplete", (c, m))


def disjoint_complete_bipartite(c: int, m: int) -> StructureTag:
    return StructureTag("DisjointCompleteBipartite", (c, m))


def disjoint_complete_multipartite(c: int, a: int, b: int) -> StructureTag:
    return StructureTag("DisjointCompleteMultipartite", (c, a, b))


def disjoint_cycles(c: int, m: int) -> StructureTag:
    return StructureTag("DisjointCycles", (c, m))


# ---------------------------------------------------------------------------
# Construction helpers.

def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, [full ^ (1 << u) for u in range(n)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycles need at least three vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_multipartite_graph(parts: Sequence[int]) -> Graph:
    """Complete multipartite graph with the given part sizes, parts laid out
    consecutively from vertex 0."""
    if not parts or any(p < 1 for p in parts):
        raise GraphError("part sizes must be positive")
    n = sum(parts)
    rows = []
    start = 0
    full = (1 << n) - 1
    for size in parts:
        mask = ((1 << size) - 1) << start
        rows.extend(full ^ mask for _ in range(size))
        start += size
    return Graph(n, rows)


def disjoint_union(graphs: Sequence[Graph]) -> Graph:
    if not graphs:
        raise GraphError("need at least one graph")
    n = sum(g.n for g in graphs)
    rows = []
    shift = 0
    for g in graphs:
        rows.extend(r << shift for r in g.adj)
        shift += g.n
    return Graph(n, rows)


def structure_graph(tag: StructureTag) -> Graph:
    """A concrete graph with the tagged shape (Other has none)."""
    kind = tag.kind
    if kind == "DisjointComplete":
        c, m = tag.params
        return disjoint_union([complete_graph(m)] * c)
    if kind == "DisjointCompleteBipartite":
        c, m = tag.params
        return disjoint_union([complete_multipartite_graph([m, m])] * c)
    if kind == "DisjointCompleteMultipartite":
        c, a, b = tag.params
        return disjoint_union([complete_multipartite_graph([b] * a)] * c)
    if kind == "DisjointCycles":
        c, m = tag.params
        return disjoint_union([cycle_graph(m)] * c)
    raise GraphError(f"no concrete graph for tag {tag}")


# ---------------------------------------------------------------------------
# Pair-domain vertex numbering: ordered pairs (i, j), i != j, of an m-point
# domain in lexicographic order with the diagonal compressed out.

def pair_index(m: int, i: int, j: int) -> int:
    if i == j or not (0 <= i < m and 0 <= j < m):
        raise GraphError(f"({i},{j}) is not an ordered pair of distinct points")
    return i * (m - 1) + j - (1 if j > i else 0)


def pair_from_index(m: int, idx: int) -> tuple[int, int]:
    if not 0 <= idx < m * (m - 1):
        raise GraphError(f"pair index {idx} out of range")
    i, r = divmod(idx, m - 1)
    return i, r + 1 if r >= i else r


# ---------------------------------------------------------------------------
# Group-derived graphs.

def orbital_graph(G: PermutationGroup, x: int, y: int) -> Graph:
    """Graph whose edge set is the orbit of {x, y} under the group."""
    if not G.is_self_paired(x, y):
        raise NotSelfPairedError(
            f"the orbital of ({x},{y}) is not self-paired; "
            "its orbital graph would be directed"
        )
    n = G.degree
    a, b = min(x, y), max(x, y)
    start = a * n + b
    seen = {start}
    queue = [start]
    qi = 0
    while qi < len(queue):
        code = queue[qi]
        qi += 1
        u, v = divmod(code, n)
        for im in (g.images for g in G.generators):
            p, q = im[u], im[v]
            if p > q:
                p, q = q, p
            nxt = p * n + q
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return Graph.from_edges(n, [divmod(code, n) for code in seen])


def quotient_graph(g: Graph, P: Partition) -> Graph:
    """Blocks as vertices, adjacent when any cross edge exists.  Intra-block
    edges never become loops; has_intra_block_edges reports them."""
    if P.n != g.n:
        raise GraphError("partition does not match the graph")
    nb = len(P.blocks)
    rows = [0] * nb
    for i in range(nb):
        hit = 0
        for x in P.blocks[i]:
            hit |= g.adj[x]
        for j in range(nb):
            if j != i and hit & P.block_mask(j):
                rows[i] |= 1 << j
    return Graph(nb, rows)


def has_intra_block_edges(g: Graph, P: Partition) -> bool:
    if P.n != g.n:
        raise GraphError("partition does not match the graph")
    for j, blk in enumerate(P.blocks):
        mask = P.block_mask(j)
        if any(g.adj[x] & mask for x in blk):
            return True
    return False


def connected_components(g: Graph) -> list[tuple[int, ...]]:
    """Components as sorted vertex tuples, ordered by least vertex."""
    unvisited = (1 << g.n) - 1
    out = []
    while unvisited:
        start = (unvisited & -unvisited).bit_length() - 1
        comp = 1 << start
        frontier = comp
        while frontier:
            grown = comp
            rest = frontier
            while rest:
                v = (rest & -rest).bit_length() - 1
                rest &= rest - 1
                grown |= g.adj[v]
            frontier = grown & ~comp
            comp = grown
        out.append(tuple(_bits(comp)))
        unvisited &= ~comp
    return out


def bipartite_between(g: Graph, A: Iterable[int], B: Iterable[int]) -> set[int]:
    """Distinct nonzero cross-valencies between the two vertex sets."""
    mask_a = 0
    for x in A:
        mask_a |= 1 << x
    mask_b = 0
    for x in B:
        mask_b |= 1 << x
    if mask_a & mask_b:
        raise GraphError("vertex sets overlap")
    out = set()
    for x in _bits(mask_a):
        d = (g.adj[x] & mask_b).bit_count()
        if d:
            out.add(d)
    for x in _bits(mask_b):
        d = (g.adj[x] & mask_a).bit_count()
        if d:
            out.add(d)
    return out


# ---------------------------------------------------------------------------
# Shape recognition.

def _component_shape(g: Graph, comp: tuple[int, ...]) -> tuple | None:
    m = len(comp)
    mask = 0
    for v in comp:
        mask |= 1 << v
    if all(g.adj[v] & mask == mask ^ (1 << v) for v in comp):
        return ("DisjointComplete", m)
    if m >= 4 and all((g.adj[v] & mask).bit_count() == 2 for v in comp):
        return ("DisjointCycles", m)

    # 2-color from the least vertex; bipartite followed by biclique check
    color = {comp[0]: 0}
    queue = [comp[0]]
    ok = True
    while queue and ok:
        u = queue.pop()
        for v in _bits(g.adj[u] & mask):
            if v not in color:
                color[v] = 1 - color[u]
                queue.append(v)
            elif color[v] == color[u]:
                ok = False
                break
    if ok:
        side = [v for v in comp if color[v] == 1]
        half = 0
        for v in side:
            half |= 1 << v
        if len(side) * 2 == m and all(
            g.adj[v] & mask == (half if color[v] == 0 else mask ^ half)
            for v in comp
        ):
            return ("DisjointCompleteBipartite", m // 2)

    # complete multipartite iff the complement is a union of equal cliques
    parts = {}
    for v in comp:
        cell = (mask & ~g.adj[v]) | (1 << v)
        parts[v] = cell
    cells = set(parts.values())
    covered = 0
    for cell in cells:
        if any(parts[v] != cell for v in _bits(cell)):
            return None
        covered |= cell
    sizes = {cell.bit_count() for cell in cells}
    if covered == mask and len(sizes) == 1:
        b = sizes.pop()
        a = len(cells)
        if a >= 2 and b >= 1:
            return ("DisjointCompleteMultipartite", a, b)
    return None


def recognize_structure(g: Graph) -> StructureTag:
    comps = connected_components(g)
    shapes = {_component_shape(g, comp) for comp in comps}
    if len(shapes) != 1:
        return OTHER
    shape = shapes.pop()
    if shape is None:
        return OTHER
    return StructureTag(shape[0], (len(comps),) + shape[1:])


# ---------------------------------------------------------------------------
# Isomorphism for small graphs.

def _refine_colors(g: Graph) -> list[int]:
    colors = [g.degree(u) for u in range(g.n)]
    while True:
        sigs = [
            (colors[u], tuple(sorted(colors[v] for v in _bits(g.adj[u]))))
            for u in range(g.n)
        ]
        canon = {s: i for i, s in enumerate(sorted(set(sigs)))}
        fresh = [canon[s] for s in sigs]
        if fresh == colors:
            return colors
        colors = fresh


def is_isomorphic(g1: Graph, g2: Graph) -> bool:
    if g1.n > ISO_CAP or g2.n > ISO_CAP:
        raise GraphError(f"isomorphism test capped at {ISO_CAP} vertices")
    if g1.n != g2.n or g1.edge_count != g2.edge_count:
        return False
    c1, c2 = _refine_colors(g1), _refine_colors(g2)
    if sorted(c1) != sorted(c2):
        return False
    n = g1.n
    order = sorted(range(n), key=lambda u: (c1.count(c1[u]), u))
    image = [-1] * n
    used = [False] * n

    def extend(k: int) -> bool:
        if k == n:
            return True
        u = order[k]
        for v in range(n):
            if used[v] or c2[v] != c1[u]:
                continue
            fine = True
            for w in order[:k]:
                if g1.has_edge(u, w) != g2.has_edge(v, image[w]):
                    fine = False
                    break
            if fine:
                image[u] = v
                used[v] = True
                if extend(k + 1):
                    return True
                used[v] = False
                image[u] = -1
        return False

    return extend(0)


def is_g_symmetric(g: Graph, G: PermutationGroup) -> bool:
    """True when the group preserves adjacency and is transitive on both
    vertices and ordered adjacent pairs."""
    if G.degree != g.n:
        raise GraphError("group degree does not match the graph")
    for p in G.generators:
        for u in range(g.n):
            pu = p(u)
            mapped = 0
            for v in _bits(g.adj[u]):
                mapped |= 1 << p(v)
            if mapped != g.adj[pu]:
                return False
    if not G.is_transitive():
        return False
    arcs = 2 * g.edge_count
    if arcs == 0:
        return True
    edges = g.edges()
    u0, v0 = edges[0]
    n = g.n
    seen = {u0 * n + v0}
    queue = [u0 * n + v0]
    qi = 0
    gen_images = [p.images for p in G.generators]
    while qi < len(queue):
        code = queue[qi]
        qi += 1
        a, b = divmod(code, n)
        for im in gen_images:
            nxt = im[a] * n + im[b]
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return len(seen) == arcs


# ---------------------------------------------------------------------------
# Serialization.

def graph_to_graph6(g: Graph) -> str:
    n = g.n
    if n <= 62:
        head = chr(n + 63)
    elif n <= 258047:
        head = "~" + "".join(
            chr(63 + (n >> shift & 63)) for shift in (12, 6, 0)
        )
    else:
        raise GraphError("graph too large for this graph6 writer")
    bits = []
    for j in range(1, n):
        for i in range(j):
            bits.append(g.adj[i] >> j & 1)
    while len(bits) % 6:
        bits.append(0)
    chars = []
    for k in range(0, len(bits), 6):
        val = 0
        for bit in bits[k : k + 6]:
            val = val << 1 | bit
        chars.append(chr(val + 63))
    return head + "".join(chars)


def graph_from_graph6(text: str) -> Graph:
    s = text.strip()
    if not s:
        raise GraphError("empty graph6 text")
    if any(not 63 <= ord(ch) <= 126 for ch in s):
        raise GraphError("graph6 text has characters outside the printable range")
    if s[0] == "~":
        if len(s) < 4 or s[1] == "~":
            raise GraphError("unsupported graph6 length header")
        n = 0
        for ch in s[1:4]:
            n = n << 6 | (ord(ch) - 63)
        body = s[4:]
    else:
        n = ord(s[0]) - 63
        body = s[1:]
    if n < 1:
        raise GraphError("graph6 vertex count must be positive")
    need = (n * (n - 1) // 2 + 5) // 6
    if len(body) != need:
        raise GraphError(f"graph6 body has {len(body)} chars, expected {need}")
    bits = []
    for ch in body:
        val = ord(ch) - 63
        bits.extend(val >> shift & 1 for shift in (5, 4, 3, 2, 1, 0))
    rows = [0] * n
    pos = 0
    for j in range(1, n):
        for i in range(j):
            if bits[pos]:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            pos += 1
    return Graph(n, rows)


def graph_to_dimacs(g: Graph) -> str:
    lines = [f"p edge {g.n} {g.edge_count}"]
    lines.extend(f"e {u + 1} {v + 1}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def graph_from_dimacs(text: str) -> Graph:
    n = None
    declared = None
    edges = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        fields = line.split()
        if fields[0] == "p":
            if n is not None:
                raise GraphError("duplicate problem line")
            if len(fields) != 4 or fields[1] != "edge":
                raise GraphError(f"bad problem line: {line!r}")
            n, declared = int(fields[2]), int(fields[3])
        elif fields[0] == "e":
            if n is None:
                raise GraphError("edge before problem line")
            if len(fields) != 3:
                raise GraphError(f"bad edge line: {line!r}")
            u, v = int(fields[1]) - 1, int(fields[2]) - 1
            edges.append((u, v))
        else:
            raise GraphError(f"unrecognized line: {line!r}")
    if n is None:
        raise GraphError("missing problem line")
    if declared != len(edges):
        raise GraphError(f"problem line declares {declared} edges, found {len(edges)}")
    return Graph.from_edges(n, edges)


def graph_to_json(g: Graph) -> dict:
    return {"n": g.n, "adj": [_bits(row) for row in g.adj]}


def graph_from_json(data: dict) -> Graph:
    n = data["n"]
    rows = [0] * n
    for u, nbrs in enumerate(data["adj"]):
        for v in nbrs:
            rows[u] |= 1 << v
    return Graph(n, rows)
