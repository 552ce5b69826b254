"""Permutation groups with deterministic stabilizer chains.

Everything is exact and deterministic: no randomized sifting, no hash-order
dependence.  Base points are chosen as least moved points (or prescribed by
the caller for stabilizer and transporter computations), so identical input
always produces the identical chain.

Internally a chain element is a pair (main, aux) of image tuples.  The aux
coordinate is empty for ordinary groups; induced_action uses it to drag
preimage permutations through the sifting of the block-action chain, which
yields an exact kernel-triviality certificate without a stabilizer chain on
the (possibly much larger) original domain.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence

from .errors import GroupError

DEGREE_CAP = 10 ** 4
PAIR_BFS_CAP = 10 ** 7


def _mul(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    """Compose image tuples: apply a first, then b."""
    return tuple(b[x] for x in a)


def _inv(a: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


class Permutation:
    """A permutation of {0, ..., n-1}, stored as its image sequence."""

    __slots__ = ("images",)

    def __init__(self, images: Sequence[int]):
        images = tuple(images)
        n = len(images)
        seen = [False] * n
        for x in images:
            if not 0 <= x < n or seen[x]:
                raise GroupError(f"not a bijection on 0..{n - 1}: {images}")
            seen[x] = True
        self.images = images

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(n))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        images = list(range(n))
        for cyc in cycles:
            for i, x in enumerate(cyc):
                images[x] = cyc[(i + 1) % len(cyc)]
        return cls(images)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: "Permutation") -> "Permutation":
        """self then other."""
        if other.degree != self.degree:
            raise GroupError("degree mismatch")
        return Permutation(_mul(self.images, other.images))

    def inverse(self) -> "Permutation":
        return Permutation(_inv(self.images))

    def __pow__(self, k: int) -> "Permutation":
        if k < 0:
            return self.inverse() ** (-k)
        out = Permutation.identity(self.degree)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def order(self) -> int:
        k = 1
        acc = self.images
        ident = tuple(range(self.degree))
        while acc != ident:
            acc = _mul(acc, self.images)
            k += 1
        return k

    def sign(self) -> int:
        """+1 for even, -1 for odd."""
        seen = [False] * self.degree
        sign = 1
        for i in range(self.degree):
            if seen[i]:
                continue
            length = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = self.images[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
        return sign

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, least element first, sorted by least element."""
        seen = [False] * self.degree
        out = []
        for i in range(self.degree):
            if seen[i] or self.images[i] == i:
                seen[i] = True
                continue
            cyc = []
            j = i
            while not seen[j]:
                seen[j] = True
                cyc.append(j)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Permutation) and other.images == self.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        cycs = self.cycles()
        if not cycs:
            return f"Perm(id/{self.degree})"
        return "Perm(" + "".join("(" + " ".join(map(str, c)) + ")" for c in cycs) + ")"


_Elem = tuple[tuple[int, ...], tuple[int, ...]]  # (main images, aux images)


def _emul(a: _Elem, b: _Elem) -> _Elem:
    return (_mul(a[0], b[0]), _mul(a[1], b[1]) if a[1] else ())


def _einv(a: _Elem) -> _Elem:
    return (_inv(a[0]), _inv(a[1]) if a[1] else ())


class _Level:
    __slots__ = ("point", "gens", "transversal", "orbit", "done")

    def __init__(self, point: int, ident: _Elem):
        self.point = point
        self.gens: list[_Elem] = []  # strong generators fixing all earlier base points
        self.transversal: dict[int, _Elem] = {point: ident}
        self.orbit: list[int] = [point]
        # done[gi] = how many orbit positions have had their Schreier product
        # with gens[gi] verified.  Orbit and gens only ever append, so the
        # counters survive growth of either list.
        self.done: dict[int, int] = {}


class _Chain:
    """Deterministic incremental Schreier-Sims over paired elements.

    Levels are verified bottom-up in the classic way: when a Schreier
    residue survives sifting it becomes a strong generator of every level
    whose base prefix it fixes, and verification restarts at the deepest
    level it joined.
    """

    def __init__(
        self,
        degree: int,
        gens: Sequence[_Elem],
        base_prefix: Sequence[int] = (),
        aux_degree: int = 0,
    ):
        self.degree = degree
        ident_aux = tuple(range(aux_degree)) if aux_degree else ()
        self.ident: _Elem = (tuple(range(degree)), ident_aux)
        self.levels: list[_Level] = [_Level(b, self.ident) for b in base_prefix]
        self.kernel_witness: tuple[int, ...] | None = None
        for g in gens:
            self._add_elem(g)

    def _is_ident_main(self, e: _Elem) -> bool:
        return all(i == x for i, x in enumerate(e[0]))

    def sift(self, e: _Elem, start: int = 0) -> tuple[_Elem, int]:
        for i in range(start, len(self.levels)):
            lvl = self.levels[i]
            img = e[0][lvl.point]
            rep = lvl.transversal.get(img)
            if rep is None:
                return e, i
            e = _emul(e, _einv(rep))
        return e, len(self.levels)

    def _note_kernel(self, e: _Elem) -> None:
        if e[1] and self.kernel_witness is None and any(i != x for i, x in enumerate(e[1])):
            self.kernel_witness = e[1]

    def _place(self, e: _Elem, floor: int) -> int:
        """Install a genuinely new strong generator at levels floor..f, where
        f is the length of the base prefix e fixes.  A residue produced while
        verifying level i already lies in the group generated at every level
        <= i, so its floor is i + 1; input generators get floor 0."""
        f = 0
        while f < len(self.levels) and e[0][self.levels[f].point] == self.levels[f].point:
            f += 1
        if f == len(self.levels):
            moved = min(x for x in range(self.degree) if e[0][x] != x)
            self.levels.append(_Level(moved, self.ident))
        for lvl in self.levels[floor : f + 1]:
            lvl.gens.append(e)
        return f

    def _extend_orbit(self, i: int) -> None:
        lvl = self.levels[i]
        qi = 0
        while qi < len(lvl.orbit):
            pt = lvl.orbit[qi]
            qi += 1
            rep = lvl.transversal[pt]
            for g in lvl.gens:
                img = g[0][pt]
                if img not in lvl.transversal:
                    lvl.transversal[img] = _emul(rep, g)
                    lvl.orbit.append(img)

    def _verify_level(self, i: int) -> int | None:
        """Process outstanding Schreier pairs at level i.  Returns None when
        the level is complete, else the deepest level that gained a strong
        generator (verification must resume there)."""
        lvl = self.levels[i]
        self._extend_orbit(i)
        for gi, g in enumerate(lvl.gens):
            pos = lvl.done.get(gi, 0)
            while pos < len(lvl.orbit):
                pt = lvl.orbit[pos]
                pos += 1
                lvl.done[gi] = pos
                rep = lvl.transversal[pt]
                target = lvl.transversal[g[0][pt]]
                schreier = _emul(_emul(rep, g), _einv(target))
                res, _ = self.sift(schreier, i + 1)
                if self._is_ident_main(res):
                    self._note_kernel(res)
                    continue
                return self._place(res, i + 1)
        return None

    def _run(self, start: int) -> None:
        i = start
        while i >= 0:
            nxt = self._verify_level(i)
            if nxt is None:
                i -= 1
            else:
                i = nxt

    def _add_elem(self, e: _Elem) -> None:
        res, _ = self.sift(e)
        if self._is_ident_main(res):
            self._note_kernel(res)
            return
        self._run(self._place(res, 0))

    def order(self) -> int:
        n = 1
        for lvl in self.levels:
            n *= len(lvl.transversal)
        return n

    def contains(self, images: tuple[int, ...]) -> bool:
        res, _ = self.sift((images, ()))
        return self._is_ident_main(res)


class PermutationGroup:
    """A permutation group given by generators, with a stabilizer chain."""

    def __init__(self, degree: int, generators: Sequence[Permutation]):
        if degree > DEGREE_CAP:
            raise GroupError(f"degree {degree} exceeds cap {DEGREE_CAP}")
        for g in generators:
            if g.degree != degree:
                raise GroupError("generator degree mismatch")
        self.degree = degree
        self.generators = [g for g in generators if not g.is_identity()]
        self._chain: _Chain | None = None
        self._gen_images = [g.images for g in self.generators]

    @property
    def chain(self) -> _Chain:
        if self._chain is None:
            self._chain = _Chain(self.degree, [(im, ()) for im in self._gen_images])
        return self._chain

    def order(self) -> int:
        return self.chain.order()

    def __contains__(self, g: Permutation) -> bool:
        if g.degree != self.degree:
            return False
        return self.chain.contains(g.images)

    def orbit(self, x: int) -> list[int]:
        """Orbit of x in breadth-first discovery order."""
        if not 0 <= x < self.degree:
            raise GroupError("point out of range")
        out = [x]
        seen = {x}
        qi = 0
        while qi < len(out):
            pt = out[qi]
            qi += 1
            for im in self._gen_images:
                y = im[pt]
                if y not in seen:
                    seen.add(y)
                    out.append(y)
        return out

    def orbits(self) -> list[list[int]]:
        seen = [False] * self.degree
        out = []
        for x in range(self.degree):
            if not seen[x]:
                orb = self.orbit(x)
                for y in orb:
                    seen[y] = True
                out.append(orb)
        return out

    def is_transitive(self) -> bool:
        return self.degree == 0 or len(self.orbit(0)) == self.degree

    def stabilizer(self, points: Sequence[int]) -> "PermutationGroup":
        """Pointwise stabilizer of the given distinct points."""
        points = tuple(points)
        if len(set(points)) != len(points):
            raise GroupError("stabilizer points must be distinct")
        ch = _Chain(self.degree, [(im, ()) for im in self._gen_images], base_prefix=points)
        k = len(points)
        gens = []
        seen = set()
        for lvl in ch.levels[k:]:
            for e in lvl.gens:
                if e[0] not in seen:
                    seen.add(e[0])
                    gens.append(Permutation(e[0]))
        return PermutationGroup(self.degree, gens)

    def transitivity_degree(self) -> int:
        """Largest k with the iterated point stabilizers transitive on what
        remains at each of the first k levels (0 for an intransitive group)."""
        fixed: list[int] = []
        G = self
        while len(fixed) < self.degree:
            rest = [x for x in range(self.degree) if x not in fixed]
            if len(G.orbit(rest[0])) != len(rest):
                break
            fixed.append(rest[0])
            if len(fixed) == self.degree:
                break
            G = self.stabilizer(fixed)
        return len(fixed)

    def _check_blocks(self, blocks: Sequence[Sequence[int]]) -> list[list[int]]:
        cover = [-1] * self.degree
        out = []
        for bi, blk in enumerate(blocks):
            blk = sorted(blk)
            if not blk:
                raise GroupError("empty block")
            for x in blk:
                if not 0 <= x < self.degree or cover[x] != -1:
                    raise GroupError("not a partition of the domain")
                cover[x] = bi
            out.append(blk)
        if any(c == -1 for c in cover):
            raise GroupError("partition misses points")
        return out

    def is_block_system(self, blocks: Sequence[Sequence[int]]) -> bool:
        blks = self._check_blocks(blocks)
        block_of = [0] * self.degree
        for bi, blk in enumerate(blks):
            for x in blk:
                block_of[x] = bi
        for im in self._gen_images:
            for blk in blks:
                target = block_of[im[blk[0]]]
                if any(block_of[im[x]] != target for x in blk):
                    return False
        return True

    def induced_action(
        self, blocks: Sequence[Sequence[int]]
    ) -> tuple["PermutationGroup", bool]:
        """Action on block indices, plus True iff its kernel is trivial.

        The kernel certificate comes from sifting shadow copies of the
        original permutations through the block-action chain: a relation
        that is trivial on blocks but not on points is a kernel witness.
        """
        blks = self._check_blocks(blocks)
        if not self.is_block_system(blks):
            raise GroupError("partition is not a block system for this group")
        block_of = [0] * self.degree
        for bi, blk in enumerate(blks):
            for x in blk:
                block_of[x] = bi
        img_gens = []
        for im in self._gen_images:
            img_gens.append(tuple(block_of[im[blk[0]]] for blk in blks))
        paired = [(img, im) for img, im in zip(img_gens, self._gen_images)]
        ch = _Chain(len(blks), paired, aux_degree=self.degree)
        distinct = list(dict.fromkeys(img_gens))
        image = PermutationGroup(len(blks), [Permutation(t) for t in distinct])
        return image, ch.kernel_witness is None

    def _point_stabilizer_gens(self, x: int) -> list[tuple[int, ...]]:
        """Schreier generators for the stabilizer of x (no chain needed)."""
        orbit = [x]
        reps: dict[int, tuple[int, ...]] = {x: tuple(range(self.degree))}
        qi = 0
        while qi < len(orbit):
            pt = orbit[qi]
            qi += 1
            rep = reps[pt]
            for im in self._gen_images:
                y = im[pt]
                if y not in reps:
                    reps[y] = _mul(rep, im)
                    orbit.append(y)
        ident = tuple(range(self.degree))
        out: list[tuple[int, ...]] = []
        seen = {ident}
        for pt in orbit:
            rep = reps[pt]
            for im in self._gen_images:
                sch = _mul(_mul(rep, im), _inv(reps[im[pt]]))
                if sch not in seen:
                    seen.add(sch)
                    out.append(sch)
        return out

    def suborbits(self, x: int) -> list[list[int]]:
        """Orbits of the stabilizer of x on all points; {x} first, the rest
        in discovery order over increasing least point."""
        if not self.is_transitive():
            raise GroupError("suborbits require a transitive group")
        stab = self._point_stabilizer_gens(x)
        seen = [False] * self.degree
        seen[x] = True
        out = [[x]]
        for start in range(self.degree):
            if seen[start]:
                continue
            orb = [start]
            seen[start] = True
            qi = 0
            while qi < len(orb):
                pt = orb[qi]
                qi += 1
                for im in stab:
                    y = im[pt]
                    if not seen[y]:
                        seen[y] = True
                        orb.append(y)
            out.append(orb)
        return out

    def is_self_paired(self, x: int, y: int) -> bool:
        """True iff some group element swaps x and y, by BFS over the orbit
        of the ordered pair (x, y)."""
        if x == y:
            raise GroupError("points must differ")
        if y not in set(self.orbit(x)):
            raise GroupError("points lie in different orbits")
        n = self.degree
        start = x * n + y
        goal = y * n + x
        seen = {start}
        queue = [start]
        qi = 0
        while qi < len(queue):
            code = queue[qi]
            qi += 1
            a, b = divmod(code, n)
            for im in self._gen_images:
                nxt = im[a] * n + im[b]
                if nxt == goal:
                    return True
                if nxt not in seen:
                    if len(seen) >= PAIR_BFS_CAP:
                        raise GroupError("pair-orbit search exceeded state cap")
                    seen.add(nxt)
                    queue.append(nxt)
        return False

    def transporter(
        self, src: Sequence[int], dst: Sequence[int]
    ) -> Permutation | None:
        """Some g with src[i]^g = dst[i] for all i, or None if there is none."""
        src, dst = tuple(src), tuple(dst)
        if len(src) != len(dst) or len(set(src)) != len(src):
            raise GroupError("transporter arguments must be equal-length, distinct")
        ch = _Chain(self.degree, [(im, ()) for im in self._gen_images], base_prefix=src)

        # Level i fixes src[:i]; pick a coset rep sending src[i] to the
        # current target, then pull the deeper targets back through it.
        def rec(i: int, targets: list[int]) -> tuple[int, ...] | None:
            if i == len(src):
                return tuple(range(self.degree))
            rep = ch.levels[i].transversal.get(targets[0])
            if rep is None:
                return None
            inv = _inv(rep[0])
            sub = rec(i + 1, [inv[t] for t in targets[1:]])
            if sub is None:
                return None
            return _mul(sub, rep[0])

        images = rec(0, list(dst))
        if images is None:
            return None
        assert all(images[s] == d for s, d in zip(src, dst))
        return Permutation(images)

    def elements(self) -> Iterator[Permutation]:
        """All group elements (deterministic order); intended for small groups."""
        levels = self.chain.levels
        if not levels:
            yield Permutation.identity(self.degree)
            return

        def rec(i: int) -> Iterator[tuple[int, ...]]:
            if i == len(levels):
                yield tuple(range(self.degree))
                return
            for pt in sorted(levels[i].transversal):
                rep = levels[i].transversal[pt][0]
                for tail in rec(i + 1):
                    yield _mul(tail, rep)

        for images in rec(0):
            yield Permutation(images)

    def __repr__(self) -> str:
        return f"PermutationGroup(degree={self.degree}, gens={len(self.generators)})"


def group_from_generators(gens: Sequence[Permutation], degree: int | None = None) -> PermutationGroup:
    """Build a group; degree is taken from the generators unless given."""
    if degree is None:
        if not gens:
            raise GroupError("degree required for an empty generating set")
        degree = gens[0].degree
    return PermutationGroup(degree, list(gens))
