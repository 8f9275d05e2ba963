"""Constructors producing cover systems from standard order-theoretic data.

Each builder evaluates its defining formula literally over all pairs of
finite subsets and returns a CoverSystem; none of them enforce a
classification.  Negative instances (a non-distributive lattice, a
non-Kakutani convexity) are first-class outputs whose attached
classification records the failure.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .kernel import GroundSet, iter_bits, tables
from .relations import CoverSystem, Relation
from .spectrum import FiniteSpace, compact_contained


# ---------------------------------------------------------------------------
# order-theoretic input types
# ---------------------------------------------------------------------------

def _closure_pairs(n: int, pairs) -> list[int]:
    """Reflexive-transitive closure of index pairs, as row masks."""
    rows = [1 << i for i in range(n)]
    for a, b in pairs:
        rows[a] |= 1 << b
    changed = True
    while changed:
        changed = False
        for i in range(n):
            acc = rows[i]
            for j in iter_bits(rows[i]):
                acc |= rows[j]
            if acc != rows[i]:
                rows[i] = acc
                changed = True
    return rows


def _is_partial_order(rows) -> bool:
    n = len(rows)
    for i in range(n):
        if not rows[i] >> i & 1:
            return False
        for j in iter_bits(rows[i]):
            if i != j and rows[j] >> i & 1:
                return False
            if rows[j] & ~rows[i]:
                return False
    return True


@dataclass(frozen=True)
class FiniteLattice:
    """Labelled finite lattice given by its order; meet/join are computed
    as unique greatest lower / least upper bounds."""

    elements: tuple[str, ...]
    leq: tuple[int, ...]  # leq[i] = mask of j with i <= j

    def __post_init__(self):
        if not _is_partial_order(list(self.leq)):
            raise ValueError("leq is not a partial order")
        self.meet_table, self.join_table  # force existence checks

    @staticmethod
    def from_pairs(elements, pairs) -> "FiniteLattice":
        elements = tuple(elements)
        idx = {e: i for i, e in enumerate(elements)}
        rows = _closure_pairs(len(elements), [(idx[a], idx[b]) for a, b in pairs])
        if not _is_partial_order(rows):
            raise ValueError("pairs do not close to a partial order")
        return FiniteLattice(elements, tuple(rows))

    @property
    def size(self) -> int:
        return len(self.elements)

    def le(self, i: int, j: int) -> bool:
        return bool(self.leq[i] >> j & 1)

    @cached_property
    def downs(self) -> tuple[int, ...]:
        """downs[j] = mask of i with i <= j."""
        n = self.size
        return tuple(
            sum(1 << i for i in range(n) if self.le(i, j)) for j in range(n)
        )

    def _bound(self, i, j, upper: bool):
        cands = (self.leq[i] & self.leq[j]) if upper else (self.downs[i] & self.downs[j])
        best = None
        for c in iter_bits(cands):
            if best is None:
                best = c
            elif upper and self.le(c, best):
                best = c
            elif not upper and self.le(best, c):
                best = c
        if best is None:
            return None
        for c in iter_bits(cands):
            if upper and not self.le(best, c):
                return None
            if not upper and not self.le(c, best):
                return None
        return best

    @cached_property
    def meet_table(self):
        n = self.size
        out = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                m = self._bound(i, j, upper=False)
                if m is None:
                    raise ValueError(
                        f"no meet for {self.elements[i]},{self.elements[j]}"
                    )
                out[i][j] = m
        return out

    @cached_property
    def join_table(self):
        n = self.size
        out = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                m = self._bound(i, j, upper=True)
                if m is None:
                    raise ValueError(
                        f"no join for {self.elements[i]},{self.elements[j]}"
                    )
                out[i][j] = m
        return out

    @cached_property
    def bottom(self):
        for i in range(self.size):
            if all(self.le(i, j) for j in range(self.size)):
                return i
        return None

    @cached_property
    def top(self):
        for i in range(self.size):
            if all(self.le(j, i) for j in range(self.size)):
                return i
        return None

    def meet_of(self, idxs, empty=None):
        acc = empty
        for i in idxs:
            acc = i if acc is None else self.meet_table[acc][i]
        return acc

    def join_of(self, idxs, empty=None):
        acc = empty
        for i in idxs:
            acc = i if acc is None else self.join_table[acc][i]
        return acc

    def is_distributive(self) -> bool:
        n = self.size
        mt, jt = self.meet_table, self.join_table
        return all(
            mt[a][jt[b][c]] == jt[mt[a][b]][mt[a][c]]
            for a in range(n) for b in range(n) for c in range(n)
        )


@dataclass(frozen=True)
class JoinSemilattice:
    """Join-semilattice with a minimum, given by its order."""

    elements: tuple[str, ...]
    leq: tuple[int, ...]

    def __post_init__(self):
        if not _is_partial_order(list(self.leq)):
            raise ValueError("leq is not a partial order")
        if self.bottom is None:
            raise ValueError("semilattice must have a minimum")
        self.join_table  # force totality check

    @staticmethod
    def from_pairs(elements, pairs) -> "JoinSemilattice":
        elements = tuple(elements)
        idx = {e: i for i, e in enumerate(elements)}
        rows = _closure_pairs(len(elements), [(idx[a], idx[b]) for a, b in pairs])
        return JoinSemilattice(elements, tuple(rows))

    @property
    def size(self):
        return len(self.elements)

    def le(self, i, j):
        return bool(self.leq[i] >> j & 1)

    @cached_property
    def bottom(self):
        for i in range(self.size):
            if all(self.le(i, j) for j in range(self.size)):
                return i
        return None

    @cached_property
    def join_table(self):
        n = self.size
        out = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                ups = self.leq[i] & self.leq[j]
                best = None
                for c in iter_bits(ups):
                    if best is None or self.le(c, best):
                        best = c
                if best is None or any(not self.le(best, c) for c in iter_bits(ups)):
                    raise ValueError(
                        f"no join for {self.elements[i]},{self.elements[j]}"
                    )
                out[i][j] = best
        return out

    def join_of(self, idxs):
        acc = self.bottom
        for i in idxs:
            acc = self.join_table[acc][i]
        return acc


@dataclass(frozen=True)
class TransitiveRelation:
    """A transitive (not necessarily reflexive) relation on labelled points."""

    elements: tuple[str, ...]
    lt: tuple[int, ...]  # lt[i] = mask of j with i < j

    def __post_init__(self):
        n = len(self.elements)
        for i in range(n):
            for j in iter_bits(self.lt[i]):
                if self.lt[j] & ~self.lt[i]:
                    raise ValueError("relation is not transitive")

    @staticmethod
    def from_pairs(elements, pairs, transitive_close=False) -> "TransitiveRelation":
        elements = tuple(elements)
        idx = {e: i for i, e in enumerate(elements)}
        rows = [0] * len(elements)
        for a, b in pairs:
            rows[idx[a]] |= 1 << idx[b]
        if transitive_close:
            changed = True
            while changed:
                changed = False
                for i in range(len(elements)):
                    acc = rows[i]
                    for j in iter_bits(rows[i]):
                        acc |= rows[j]
                    if acc != rows[i]:
                        rows[i] = acc
                        changed = True
        return TransitiveRelation(elements, tuple(rows))

    @property
    def size(self):
        return len(self.elements)

    @cached_property
    def below(self) -> tuple[int, ...]:
        """below[j] = mask of i with i < j (strict predecessors)."""
        n = self.size
        return tuple(
            sum(1 << i for i in range(n) if self.lt[i] >> j & 1) for j in range(n)
        )

    @cached_property
    def rounded(self) -> bool:
        """Every element has a strict predecessor."""
        return all(self.below[j] for j in range(self.size))

    def is_idempotent(self) -> bool:
        n = self.size
        comp = [0] * n
        for i in range(n):
            for j in iter_bits(self.lt[i]):
                comp[i] |= self.lt[j]
        return tuple(comp) == tuple(self.lt)


@dataclass(frozen=True)
class Convexity:
    """An intersection-closed family of subsets containing the empty set
    and the whole point set."""

    elements: tuple[str, ...]
    convex_sets: tuple[int, ...]

    def __post_init__(self):
        full = (1 << len(self.elements)) - 1
        fam = set(self.convex_sets)
        if tuple(sorted(fam)) != self.convex_sets:
            raise ValueError("convex sets must be sorted and duplicate-free")
        if 0 not in fam or full not in fam:
            raise ValueError("convexity must contain the empty set and the whole set")
        for a in fam:
            for b in fam:
                if a & b not in fam:
                    raise ValueError("convexity must be intersection-closed")

    @property
    def size(self):
        return len(self.elements)

    @cached_property
    def hull(self) -> tuple[int, ...]:
        out = []
        for code in range(1 << self.size):
            h = (1 << self.size) - 1
            for c in self.convex_sets:
                if code & ~c == 0:
                    h &= c
            out.append(h)
        return tuple(out)

    @cached_property
    def kakutani(self) -> bool:
        fam = self.convex_sets
        full = (1 << self.size) - 1
        cset = set(fam)
        for c in fam:
            for d in fam:
                if c & d:
                    continue
                if not any(
                    c & ~h == 0 and d & h == 0 and (full & ~h) in cset for h in fam
                ):
                    return False
        return True


@dataclass(frozen=True)
class ProximityLattice:
    """An idempotent relation with a minimum whose derived order carries a
    lattice structure compatible with the relation."""

    elements: tuple[str, ...]
    prox: tuple[int, ...]  # prox[i] = mask of j with i < j

    def __post_init__(self):
        self.lattice  # forces all validation

    @property
    def size(self):
        return len(self.elements)

    @cached_property
    def below(self) -> tuple[int, ...]:
        n = self.size
        return tuple(
            sum(1 << i for i in range(n) if self.prox[i] >> j & 1) for j in range(n)
        )

    @cached_property
    def derived_leq(self) -> tuple[int, ...]:
        n = self.size
        return tuple(
            sum(1 << j for j in range(n) if self.below[i] & ~self.below[j] == 0)
            for i in range(n)
        )

    @cached_property
    def lattice(self) -> FiniteLattice:
        n = self.size
        # idempotence: < equals its composition with itself
        comp = [0] * n
        for i in range(n):
            for j in iter_bits(self.prox[i]):
                comp[i] |= self.prox[j]
        if tuple(comp) != self.prox:
            raise ValueError("proximity must be idempotent")
        if not any(self.prox[z] == (1 << n) - 1 for z in range(n)):
            raise ValueError("proximity must have a minimum related to everything")
        leq = self.derived_leq
        for i in range(n):
            for j in range(n):
                if leq[i] >> j & 1 and leq[j] >> i & 1 and i != j:
                    raise ValueError("derived order must be antisymmetric")
        lat = FiniteLattice(self.elements, leq)
        # both mixed chains must collapse into the proximity
        for p in range(n):
            for q in range(n):
                for r in range(n):
                    if leq[p] >> q & 1 and self.prox[q] >> r & 1:
                        if not self.prox[p] >> r & 1:
                            raise ValueError("order-then-proximity must be proximity")
                    if self.prox[p] >> q & 1 and leq[q] >> r & 1:
                        if not self.prox[p] >> r & 1:
                            raise ValueError("proximity-then-order must be proximity")
        mt, jt = lat.meet_table, lat.join_table
        for p in range(n):
            for q in iter_bits(self.prox[p]):
                for r in range(n):
                    for s in iter_bits(self.prox[r]):
                        if not self.prox[mt[p][r]] >> mt[q][s] & 1:
                            raise ValueError("proximity must respect meets")
                        if not self.prox[jt[p][r]] >> jt[q][s] & 1:
                            raise ValueError("proximity must respect joins")
        return lat


# ---------------------------------------------------------------------------
# cover-system builders
# ---------------------------------------------------------------------------

def _ground_of(elements) -> GroundSet:
    return GroundSet(tuple(elements))


def lattice_cover(lat: FiniteLattice, name: str = "") -> CoverSystem:
    """Meet-below-join relation on a lattice.

    The empty meet is the top when one exists; otherwise the empty-set row
    is all false.  The empty join is the bottom.
    """
    ground = _ground_of(lat.elements)
    top = lat.top
    size = ground.num_subsets
    rows = []
    for f in range(size):
        meet = lat.meet_of(iter_bits(f), empty=top)
        if meet is None:
            rows.append(0)
            continue
        m = 0
        for g in range(size):
            join = lat.join_of(iter_bits(g), empty=lat.bottom)
            if lat.le(meet, join):
                m |= 1 << g
        rows.append(m)
    return CoverSystem(ground, Relation(ground, ground, rows), name or "lattice")


def semilattice_cover(sl: JoinSemilattice, name: str = "") -> CoverSystem:
    """Join-semilattice cover: F entails G when every bound p <= f or q
    transfers to p <= (join of G) or q, quantified over all p, q."""
    ground = _ground_of(sl.elements)
    n = sl.size
    size = ground.num_subsets
    jt = sl.join_table
    rows = []
    for f in range(size):
        fl = list(iter_bits(f))
        m = 0
        for g in range(size):
            jg = sl.join_of(iter_bits(g))
            ok = True
            for p in range(n):
                for q in range(n):
                    if all(sl.le(p, jt[x][q]) for x in fl):
                        if not sl.le(p, jt[jg][q]):
                            ok = False
                            break
                if not ok:
                    break
            if ok:
                m |= 1 << g
        rows.append(m)
    return CoverSystem(ground, Relation(ground, ground, rows), name or "semilattice")


def semilattice_cover_distributive(sl: JoinSemilattice) -> Relation:
    """The reduced form valid on distributive semilattices: every common
    lower bound of F lies below the join of G."""
    ground = _ground_of(sl.elements)
    n = sl.size
    size = ground.num_subsets
    rows = []
    for f in range(size):
        lower = [p for p in range(n) if all(sl.le(p, x) for x in iter_bits(f))]
        m = 0
        for g in range(size):
            jg = sl.join_of(iter_bits(g))
            if all(sl.le(p, jg) for p in lower):
                m |= 1 << g
        rows.append(m)
    return Relation(ground, ground, rows)


def is_distributive_semilattice(sl: JoinSemilattice) -> bool:
    """Distributivity in the operative sense: the quantified cover
    coincides with its reduced form."""
    return semilattice_cover(sl).rel == semilattice_cover_distributive(sl)


def perp_cover(tr: TransitiveRelation, name: str = "") -> CoverSystem:
    """Orthogonality cover of a transitive relation: F entails G when no
    common predecessor of F is orthogonal to all of G."""
    ground = _ground_of(tr.elements)
    n = tr.size
    size = ground.num_subsets
    full_el = (1 << n) - 1
    # s perp t: no common strict predecessor
    perp = [
        sum(1 << t for t in range(n) if tr.below[s] & tr.below[t] == 0)
        for s in range(n)
    ]
    rows = []
    for f in range(size):
        fdown = full_el
        for x in iter_bits(f):
            fdown &= tr.below[x]
        m = 0
        for g in range(size):
            gperp = full_el
            for x in iter_bits(g):
                gperp &= perp[x]
            if fdown & gperp == 0:
                m |= 1 << g
        rows.append(m)
    return CoverSystem(ground, Relation(ground, ground, rows), name or "perp")


def scott_cover_conditions(base: CoverSystem, lt: TransitiveRelation) -> dict:
    """The three promises of the layered construction, each checked
    literally: single-element absorption, interpolation through the
    constructed relation, and descent from common predecessors."""
    sys = scott_cover_construct(base, lt)
    ground = base.ground
    n = ground.size
    size = ground.num_subsets
    rel = base.rel

    one_aux = True
    for f in range(size):
        row = rel.rows[f]
        for g in iter_bits(row):
            for s in range(n):
                target = (g & ~lt.below[s]) | (1 << s)
                if not row >> target & 1:
                    one_aux = False
                    break
            if not one_aux:
                break
        if not one_aux:
            break

    t = tables(n)
    interpolation = True
    for q in range(n):
        for r in iter_bits(lt.lt[q]):
            cand = sys.rel.rows[1 << q] & t.subsets[lt.below[r]]
            if not cand:
                interpolation = False
                break
        if not interpolation:
            break

    succ = True
    full_el = (1 << n) - 1
    for f in range(size):
        fdown = full_el
        for x in iter_bits(f):
            fdown &= lt.below[x]
        for g in range(size):
            if rel.rows[f] >> g & 1:
                continue
            if all(rel.rows[1 << p] >> g & 1 for p in iter_bits(fdown)):
                succ = False
                break
        if not succ:
            break

    return {"one_aux": one_aux, "interpolation": interpolation, "succ": succ}


def scott_cover_construct(base: CoverSystem, lt: TransitiveRelation,
                          name: str = "") -> CoverSystem:
    """Compose a base relation with elementwise refinement along lt:
    F entails G when F relates (in the base) to some H entirely refined
    by G (each h below some g)."""
    ground = base.ground
    if tuple(ground.names) != lt.elements:
        raise ValueError("base system and relation must share elements")
    n = ground.size
    size = ground.num_subsets
    t = tables(n)
    above = []
    for h in range(n):
        succs = sum(1 << g for g in range(n) if lt.lt[h] >> g & 1)
        above.append(t.meets[succs])
    full = (1 << size) - 1
    triangle = []
    for h_code in range(size):
        m = full
        for h in iter_bits(h_code):
            m &= above[h]
        triangle.append(m)
    rows = []
    for f in range(size):
        m = 0
        for h_code in iter_bits(base.rel.rows[f]):
            m |= triangle[h_code]
        rows.append(m)
    return CoverSystem(ground, Relation(ground, ground, rows), name or "layered")


def proximity_cover(pl: ProximityLattice, name: str = "") -> CoverSystem:
    """F entails G when the meet of F lies below the join of some finite
    set of proximal predecessors of members of G."""
    lat = pl.lattice
    ground = _ground_of(pl.elements)
    size = ground.num_subsets
    top = lat.top
    rows = []
    for f in range(size):
        meet = lat.meet_of(iter_bits(f), empty=top)
        if meet is None:
            rows.append(0)
            continue
        m = 0
        for g in range(size):
            gbelow = 0
            for x in iter_bits(g):
                gbelow |= pl.below[x]
            join = lat.join_of(iter_bits(gbelow), empty=lat.bottom)
            if lat.le(meet, join):
                m |= 1 << g
        rows.append(m)
    return CoverSystem(ground, Relation(ground, ground, rows), name or "proximity")


def convexity_entailment(cx: Convexity, name: str = "") -> CoverSystem:
    """F entails G when their convex hulls intersect; symmetric by
    construction, a cut relation exactly for Kakutani convexities."""
    ground = _ground_of(cx.elements)
    size = ground.num_subsets
    hull = cx.hull
    rows = []
    for f in range(size):
        m = 0
        for g in range(size):
            if hull[f] & hull[g]:
                m |= 1 << g
        rows.append(m)
    return CoverSystem(ground, Relation(ground, ground, rows), name or "convexity")


def topology_cover(space: FiniteSpace, subbasis=None, name: str = "") -> CoverSystem:
    """Compact-containment cover of a space's subbasis: the intersection
    of F compactly contained in the union of G."""
    if subbasis is not None:
        space = FiniteSpace(space.points, space.opens, tuple(sorted(set(subbasis))))
    sub = space.subbasis
    labels = tuple(
        "{" + ",".join(space.point_names(s)) + "}" for s in sub
    )
    ground = GroundSet(labels)
    size = ground.num_subsets
    full_pts = space.full_mask
    rows = []
    for f in range(size):
        inter = full_pts
        for i in iter_bits(f):
            inter &= sub[i]
        m = 0
        for g in range(size):
            union = 0
            for i in iter_bits(g):
                union |= sub[i]
            if compact_contained(space, inter, union):
                m |= 1 << g
        rows.append(m)
    return CoverSystem(ground, Relation(ground, ground, rows), name or "topology")


# ---------------------------------------------------------------------------
# canonical fixtures
# ---------------------------------------------------------------------------

def meet_system(n: int = 2, name: str = "") -> CoverSystem:
    """The meet relation: F entails G iff they intersect."""
    from .kernel import all_groundsets_named

    ground = all_groundsets_named(n)
    rel = Relation.from_predicate(ground, ground, lambda f, g: bool(f & g))
    return CoverSystem(ground, rel, name or f"meet{n}")


def diagonal_system(base_size: int = 2, name: str = "") -> CoverSystem:
    """The diagonal relation on non-empty subsets of a small base set."""
    from .kernel import all_groundsets_named, diagonal_masks

    base = all_groundsets_named(base_size)
    member_masks = list(range(1, 1 << base_size))
    labels = tuple(
        "".join(base.names[i] for i in iter_bits(m)) for m in member_masks
    )
    ground = GroundSet(labels)

    def fam_of(code):
        fam = 0
        for i in iter_bits(code):
            fam |= 1 << member_masks[i]
        return fam

    rel = Relation.from_predicate(
        ground, ground,
        lambda f, g: diagonal_masks(base_size, fam_of(f), fam_of(g)),
    )
    return CoverSystem(ground, rel, name or f"diagonal{base_size}")


def boolean4_lattice() -> FiniteLattice:
    return FiniteLattice.from_pairs(
        ("0", "a", "b", "1"),
        [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")],
    )


def chain_lattice(k: int) -> FiniteLattice:
    names = tuple(f"c{i}" for i in range(k)) if k > 3 else ("0", "m", "1")[:k]
    return FiniteLattice.from_pairs(
        names, [(names[i], names[i + 1]) for i in range(k - 1)]
    )


def m3_lattice() -> FiniteLattice:
    return FiniteLattice.from_pairs(
        ("0", "x", "y", "z", "1"),
        [("0", "x"), ("0", "y"), ("0", "z"), ("x", "1"), ("y", "1"), ("z", "1")],
    )


def sierpinski_space() -> FiniteSpace:
    return FiniteSpace.from_named_sets(
        ("x0", "x1"),
        [[], ["x1"], ["x0", "x1"]],
        [["x1"], ["x0", "x1"]],
    )


def empty_system(n: int = 2) -> CoverSystem:
    from .kernel import all_groundsets_named

    ground = all_groundsets_named(n)
    return CoverSystem(ground, Relation.empty(ground), f"empty{n}")


def full_system(n: int = 2) -> CoverSystem:
    from .kernel import all_groundsets_named

    ground = all_groundsets_named(n)
    return CoverSystem(ground, Relation.full(ground), f"full{n}")


def anchored_meet_system(n: int = 2) -> CoverSystem:
    """F entails G iff both contain the first element: a strong idempotent
    that is neither 1-reflexive nor a cover."""
    from .kernel import all_groundsets_named

    ground = all_groundsets_named(n)
    rel = Relation.from_predicate(
        ground, ground, lambda f, g: bool(f & 1) and bool(g & 1)
    )
    return CoverSystem(ground, rel, f"anchored{n}")


def interpolation_gap_system() -> CoverSystem:
    """Monotone and cut-idempotent but not divisible: the whole-space
    element entails the pair {p, q} with no single-target refinement."""
    ground = GroundSet.of("x", "p", "q")
    rel = Relation.from_predicate(
        ground, ground,
        lambda f, g: bool(f & 1) and (bool(g & 1) or (g & 6) == 6),
    )
    return CoverSystem(ground, rel, "interpolation_gap")


CANONICAL_EXPECTED: dict[str, dict] = {}  # filled below


def canonical_small_systems() -> list[tuple[str, CoverSystem, dict]]:
    """The golden corpus with its expected classifications."""
    systems = [
        ("meet2", meet_system(2)),
        ("diagonal2", diagonal_system(2)),
        ("boolean4", lattice_cover(boolean4_lattice(), "boolean4")),
        ("chain3", lattice_cover(chain_lattice(3), "chain3")),
        ("sierpinski", topology_cover(sierpinski_space(), name="sierpinski")),
        ("m3", lattice_cover(m3_lattice(), "m3")),
    ]
    return [(name, sys, CANONICAL_EXPECTED[name]) for name, sys in systems]


def extra_fixture_systems() -> list[tuple[str, CoverSystem, dict]]:
    """Negative and boundary fixtures used across the test corpus."""
    systems = [
        ("empty2", empty_system(2)),
        ("full2", full_system(2)),
        ("anchored2", anchored_meet_system(2)),
        ("interpolation_gap", interpolation_gap_system()),
    ]
    return [(name, sys, CANONICAL_EXPECTED[name]) for name, sys in systems]


def corpus() -> list[tuple[str, CoverSystem, dict]]:
    return canonical_small_systems() + extra_fixture_systems()


def _expected(scott=False, cover=False, entailment=False, monotone=True,
              upper=True, lower=True, cut=False, one_reflexive=False,
              cut_transitive=False, semicut=False, divisible=False,
              strong=False, antisymmetric=True):
    return {
        "is_upper": upper, "is_lower": lower, "is_monotone": monotone,
        "is_cut": cut, "is_one_reflexive": one_reflexive,
        "is_entailment": entailment, "is_scott": scott,
        "is_cut_transitive": cut_transitive, "is_semicut": semicut,
        "is_divisible": divisible, "is_strong_idempotent": strong,
        "is_cover": cover, "is_antisymmetric": antisymmetric,
    }


CANONICAL_EXPECTED.update({
    # Scott relations: every flag up to and including cover holds
    "meet2": _expected(scott=True, cover=True, entailment=True, cut=True,
                       one_reflexive=True, cut_transitive=True, semicut=True,
                       divisible=True, strong=True),
    "boolean4": _expected(scott=True, cover=True, entailment=True, cut=True,
                          one_reflexive=True, cut_transitive=True, semicut=True,
                          divisible=True, strong=True),
    "chain3": _expected(scott=True, cover=True, entailment=True, cut=True,
                        one_reflexive=True, cut_transitive=True, semicut=True,
                        divisible=True, strong=True),
    "sierpinski": _expected(scott=True, cover=True, entailment=True, cut=True,
                            one_reflexive=True, cut_transitive=True, semicut=True,
                            divisible=True, strong=True),
    # the diagonal relation: a strong idempotent entailment that is not
    # 1-reflexive, hence not a cover
    "diagonal2": _expected(entailment=True, cut=True, cut_transitive=True,
                           semicut=True, divisible=True, strong=True,
                           antisymmetric=True),
    # non-distributive: the cut rule fails
    "m3": _expected(one_reflexive=True, cut=False, cut_transitive=False,
                    semicut=False, divisible=True),
    # strong idempotents that are not covers
    "empty2": _expected(cut=True, cut_transitive=True, semicut=True,
                        divisible=True, strong=True, entailment=True,
                        antisymmetric=False),
    "full2": _expected(scott=True, cover=True, entailment=True, cut=True,
                       one_reflexive=True, cut_transitive=True, semicut=True,
                       divisible=True, strong=True, antisymmetric=False),
    "anchored2": _expected(cut=True, cut_transitive=True, semicut=True,
                           divisible=True, strong=True, entailment=True),
    "interpolation_gap": _expected(cut=True, entailment=True,
                                   cut_transitive=True, semicut=True,
                                   divisible=False, antisymmetric=False),
})
