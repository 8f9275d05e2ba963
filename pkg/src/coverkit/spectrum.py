"""Tight subsets, the tight spectrum, and finite topological spaces.

A subset T of the ground set is *round* when each of its elements is
entailed by a finite part of T, and *prime* when any entailment from
inside T lands back in T.  The non-empty subsets that are both form the
points of the spectrum, topologised by the sets T_p = {T : p in T}.

Finite spaces are represented explicitly: a point list, the full family
of open sets (as point bitmasks) and a distinguished subbasis generating
them.  Compact containment is evaluated by its covering definition
(every subbasic cover of the larger set admits a finite subcover of the
smaller one) rather than by the subset shortcut it reduces to on finite
spaces; the reduction is verified in the tests instead of assumed here.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations

from .kernel import (
    CapExceededError,
    Family,
    FinSubset,
    GroundSet,
    TheoremViolationError,
    iter_bits,
    selections_mask,
    tables,
)
from .relations import CoverSystem

log = logging.getLogger(__name__)

PATCH_POINT_CAP = 14
SUBBASIS_COVER_CAP = 16


# ---------------------------------------------------------------------------
# finite spaces
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FiniteSpace:
    """A finite point set with explicit opens and a generating subbasis.

    ``opens`` and ``subbasis`` hold point bitmasks.  The constructor
    checks the lattice closure of the opens, that the subbasis covers the
    space, and that the subbasis actually generates the opens.
    """

    points: tuple[str, ...]
    opens: tuple[int, ...]
    subbasis: tuple[int, ...]

    def __post_init__(self):
        if len(set(self.points)) != len(self.points):
            raise ValueError("point labels must be distinct")
        full = (1 << len(self.points)) - 1
        opens = set(self.opens)
        if tuple(sorted(opens)) != self.opens:
            raise ValueError("opens must be sorted and duplicate-free")
        if tuple(sorted(set(self.subbasis))) != self.subbasis:
            raise ValueError("subbasis must be sorted and duplicate-free")
        if 0 not in opens or full not in opens:
            raise ValueError("opens must contain the empty set and the whole space")
        for a in opens:
            for b in opens:
                if a | b not in opens or a & b not in opens:
                    raise ValueError("opens must be closed under union and intersection")
        if not set(self.subbasis) <= opens:
            raise ValueError("subbasis members must be open")
        cover = 0
        for s in self.subbasis:
            cover |= s
        if cover != full:
            raise ValueError("subbasis must cover the space")
        if generated_opens(len(self.points), self.subbasis) != opens:
            raise ValueError("subbasis does not generate the stated opens")

    @staticmethod
    def from_subbasis(points, subbasis_masks) -> "FiniteSpace":
        points = tuple(points)
        sub = tuple(sorted(set(subbasis_masks)))
        opens = tuple(sorted(generated_opens(len(points), sub)))
        return FiniteSpace(points, opens, sub)

    @staticmethod
    def from_named_sets(points, opens_names, subbasis_names) -> "FiniteSpace":
        points = tuple(points)
        index = {p: i for i, p in enumerate(points)}

        def mask(names):
            m = 0
            for nm in names:
                m |= 1 << index[nm]
            return m

        opens = tuple(sorted({mask(o) for o in opens_names}))
        sub = tuple(sorted({mask(o) for o in subbasis_names}))
        return FiniteSpace(points, opens, sub)

    @property
    def full_mask(self) -> int:
        return (1 << len(self.points)) - 1

    def point_names(self, mask: int) -> list[str]:
        return [self.points[i] for i in iter_bits(mask)]

    def __repr__(self):
        return f"FiniteSpace({len(self.points)} points, {len(self.opens)} opens)"


def generated_opens(npoints: int, subbasis) -> frozenset[int]:
    """All unions of non-empty finite intersections of subbasis members."""
    basics = set()
    for cmask in range(1, 1 << len(subbasis)):
        inter = (1 << npoints) - 1
        for i in iter_bits(cmask):
            inter &= subbasis[i]
        basics.add(inter)
    opens = {0} | basics
    frontier = set(opens)
    while frontier:
        new = set()
        for a in frontier:
            for b in basics:
                u = a | b
                if u not in opens:
                    new.add(u)
        opens |= new
        frontier = new
    return frozenset(opens)


class _SpaceCalc:
    """Cached derived data for one finite space."""

    def __init__(self, space: FiniteSpace):
        self.space = space
        self.open_set = frozenset(space.opens)
        n_sub = len(space.subbasis)
        if n_sub > SUBBASIS_COVER_CAP:
            raise CapExceededError("subbasis too large for covering computations")
        unions = []
        for cmask in range(1 << n_sub):
            u = 0
            for i in iter_bits(cmask):
                u |= space.subbasis[i]
            unions.append(u)
        self.cover_unions = unions
        self._covermask = {}
        # subbasis membership profile of each point
        self.profiles = [
            sum(1 << j for j, s in enumerate(space.subbasis) if s >> i & 1)
            for i in range(len(space.points))
        ]
        basis = set()
        for cmask in range(1, 1 << n_sub):
            inter = space.full_mask
            for i in iter_bits(cmask):
                inter &= space.subbasis[i]
            basis.add(inter)
        self.meet_basis = sorted(basis)

    def covermask(self, region: int) -> int:
        got = self._covermask.get(region)
        if got is None:
            got = 0
            for ci, u in enumerate(self.cover_unions):
                if region & ~u == 0:
                    got |= 1 << ci
            self._covermask[region] = got
        return got

    def arrow(self, x: int, y: int) -> bool:
        """x converges to y: every subbasic open around y contains x."""
        return self.profiles[y] & ~self.profiles[x] == 0


@lru_cache(maxsize=256)
def _calc(space: FiniteSpace) -> _SpaceCalc:
    return _SpaceCalc(space)


def compact_contained(space: FiniteSpace, smaller: int, larger: int) -> bool:
    """Covering-definition compact containment between two open sets."""
    calc = _calc(space)
    if smaller not in calc.open_set or larger not in calc.open_set:
        raise ValueError("compact containment applies to open sets")
    return calc.covermask(larger) & ~calc.covermask(smaller) == 0


def specialization_pairs(space: FiniteSpace) -> list[tuple[str, str]]:
    """All (x, y) with x converging to y, i.e. y in the closure of x."""
    calc = _calc(space)
    n = len(space.points)
    return [
        (space.points[x], space.points[y])
        for x in range(n)
        for y in range(n)
        if calc.arrow(x, y)
    ]


def saturation(space: FiniteSpace, region: int) -> int:
    """Intersection of all opens containing the region."""
    calc = _calc(space)
    out = 0
    n = len(space.points)
    for x in range(n):
        if any(region >> y & 1 and calc.arrow(x, y) for y in range(n)):
            out |= 1 << x
    return out


def saturated_sets(space: FiniteSpace) -> list[int]:
    """All saturated subsets: unions of point saturations."""
    n = len(space.points)
    if n > PATCH_POINT_CAP:
        raise CapExceededError("too many points for saturated-set enumeration")
    gens = [saturation(space, 1 << y) for y in range(n)]
    sats = {0}
    frontier = {0}
    while frontier:
        new = set()
        for a in frontier:
            for g in gens:
                u = a | g
                if u not in sats:
                    new.add(u)
        sats |= new
        frontier = new
    return sorted(sats)


def patch_opens(space: FiniteSpace) -> list[int]:
    """Opens of the patch topology: generated by the opens together with
    complements of (compact) saturated sets; finitely, every saturated
    set is compact."""
    full = space.full_mask
    gens = sorted(set(space.opens) | {full & ~s for s in saturated_sets(space)})
    family = {0, full}
    for g in gens:
        family.add(g)
    # close under unions and intersections
    changed = True
    while changed:
        changed = False
        items = sorted(family)
        for a in items:
            for b in items:
                for c in (a | b, a & b):
                    if c not in family:
                        family.add(c)
                        changed = True
    return sorted(family)


def patch_closure(space: FiniteSpace, region: int) -> int:
    out = space.full_mask
    for u in patch_opens(space):
        if u & region == 0:
            out &= ~u
    return out & space.full_mask


def is_very_dense(space: FiniteSpace, region: int) -> bool:
    """Dense in the patch topology and saturation-dense simultaneously."""
    full = space.full_mask
    return saturation(space, region) == full and patch_closure(space, region) == full


@dataclass(frozen=True)
class SpaceProperties:
    t0: bool
    sober: bool
    core_compact: bool
    core_coherent: bool
    stably_locally_compact: bool

    def to_dict(self):
        return {
            "t0": self.t0,
            "sober": self.sober,
            "core_compact": self.core_compact,
            "core_coherent": self.core_coherent,
            "stably_locally_compact": self.stably_locally_compact,
        }


def space_properties(space: FiniteSpace) -> SpaceProperties:
    """Literal checks of the separation/compactness properties."""
    calc = _calc(space)
    n = len(space.points)
    full = space.full_mask
    t0 = len({calc.profiles[i] for i in range(n)}) == n

    # soberness: every irreducible closed set has a unique generic point.
    # Irreducibility is tested against a meet-closed basis, which suffices.
    closure = [0] * n
    for x in range(n):
        for y in range(n):
            if calc.arrow(x, y):
                closure[x] |= 1 << y
    sober = True
    for o in space.opens:
        c = full & ~o
        if c == 0:
            continue
        irreducible = True
        basis = [b for b in calc.meet_basis if b & c]
        for i, a in enumerate(basis):
            for b in basis[i + 1:]:
                if a & b & c == 0:
                    irreducible = False
                    break
            if not irreducible:
                break
        if not irreducible:
            continue
        generic = [x for x in range(n) if closure[x] == c]
        if len(generic) != 1:
            sober = False
            break

    cm = calc.covermask
    core_compact = True
    for p in space.opens:
        approx = 0
        for q in space.opens:
            if cm(p) & ~cm(q) == 0:  # q compactly inside p
                approx |= q
        if approx != p:
            core_compact = False
            break

    # q is compactly inside p iff covermask(q) contains covermask(p), so
    # the triple implication only depends on covermask classes: for every
    # pair (q, r), the intersection must stay compactly inside every p
    # compactly containing both.  Group by covermask to avoid the cube.
    core_coherent = True
    opens = space.opens
    width = (1 << len(calc.cover_unions)) - 1
    common: dict = {}

    def common_of(msk):
        got = common.get(msk)
        if got is None:
            got = width
            for p in opens:
                cp = cm(p)
                if msk & ~cp == 0:
                    got &= cp
            common[msk] = got
        return got

    for i, q in enumerate(opens):
        cq = cm(q)
        for r in opens[i:]:
            if cm(q & r) & ~common_of(cq | cm(r)):
                core_coherent = False
                break
        if not core_coherent:
            break

    return SpaceProperties(
        t0=t0,
        sober=sober,
        core_compact=core_compact,
        core_coherent=core_coherent,
        stably_locally_compact=sober and core_compact and core_coherent,
    )


def homeomorphic(a: FiniteSpace, b: FiniteSpace) -> bool:
    """Exact homeomorphism test by canonical invariants plus backtracking."""
    if len(a.points) != len(b.points) or len(a.opens) != len(b.opens):
        return False
    if sorted(bin(o).count("1") for o in a.opens) != sorted(
        bin(o).count("1") for o in b.opens
    ):
        return False
    n = len(a.points)
    if n > 8:
        raise CapExceededError("homeomorphism search is gated to 8 points")

    def profile(space, i):
        return sorted(bin(o).count("1") for o in space.opens if o >> i & 1)

    prof_a = [profile(a, i) for i in range(n)]
    prof_b = [profile(b, i) for i in range(n)]
    if sorted(map(tuple, prof_a)) != sorted(map(tuple, prof_b)):
        return False
    bset = set(b.opens)
    for perm in permutations(range(n)):
        if any(prof_a[i] != prof_b[perm[i]] for i in range(n)):
            continue
        ok = True
        for o in a.opens:
            im = 0
            for i in iter_bits(o):
                im |= 1 << perm[i]
            if im not in bset:
                ok = False
                break
        if ok:
            return True
    return False


# ---------------------------------------------------------------------------
# tight subsets and the spectrum
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TightFlags:
    round: bool
    prime: bool

    @property
    def tight(self) -> bool:
        return self.round and self.prime

    def to_dict(self):
        return {"round": self.round, "prime": self.prime, "tight": self.tight}


def _code_of(sys: CoverSystem, t) -> int:
    if isinstance(t, FinSubset):
        if t.ground != sys.ground:
            raise ValueError("subset over a different ground set")
        return t.bits
    return int(t)


def is_round(sys: CoverSystem, t) -> bool:
    code = _code_of(sys, t)
    tt = tables(sys.ground.size)
    subs = tt.subsets[code]
    cols = sys.rel.cols()
    return all(subs & cols[1 << i] for i in iter_bits(code))


def is_prime(sys: CoverSystem, t) -> bool:
    code = _code_of(sys, t)
    tt = tables(sys.ground.size)
    meets_t = tt.meets[code]
    rows = sys.rel.rows
    return all(rows[f] & ~meets_t == 0 for f in iter_bits(tt.subsets[code]))


def tight_flags(sys: CoverSystem, t) -> TightFlags:
    """Roundness and primality of one candidate subset.

    For upper relations their conjunction coincides with the one-piece
    tightness biconditional; the split is what the search code uses.
    """
    return TightFlags(round=is_round(sys, t), prime=is_prime(sys, t))


def tight_codes(sys: CoverSystem) -> tuple[int, ...]:
    """Codes of the non-empty tight subsets, ascending."""
    out = []
    for code in range(sys.ground.num_subsets):
        if is_round(sys, code) and is_prime(sys, code):
            if code == 0:
                log.info("empty subset is tight for %r; excluded from the spectrum", sys)
                continue
            out.append(code)
    return tuple(out)


def tight_sets(sys: CoverSystem) -> tuple[FinSubset, ...]:
    return tuple(FinSubset(sys.ground, c) for c in tight_codes(sys))


def subset_label(ground: GroundSet, code: int) -> str:
    return "{" + ",".join(ground.names[i] for i in iter_bits(code)) + "}"


class Spectrum:
    """The space of non-empty tight subsets with its generating subbasis.

    Points are stored as the tight subset codes themselves, so the
    correspondences between ground elements and subbasic opens are direct
    bit tests.
    """

    def __init__(self, sys: CoverSystem):
        cls = sys.classification
        if not cls.is_strong_idempotent:
            log.warning("spectrum of a non-strong-idempotent system %r", sys)
        self.system = sys
        self.tights = tight_codes(sys)
        self.index = {code: i for i, code in enumerate(self.tights)}
        n = sys.ground.size
        self.point_open = [
            sum(1 << i for i, code in enumerate(self.tights) if code >> e & 1)
            for e in range(n)
        ]
        names = tuple(subset_label(sys.ground, c) for c in self.tights)
        sub = tuple(sorted(set(self.point_open)))
        if not self.tights:
            # empty spectrum: single empty space with empty subbasis
            self.space = FiniteSpace((), (0,), ())
        else:
            self.space = FiniteSpace.from_subbasis(names, sub)

    @property
    def full_mask(self) -> int:
        return (1 << len(self.tights)) - 1

    def basic_open(self, fcode: int) -> int:
        """Points containing every element of F (the whole space for F empty)."""
        out = self.full_mask
        for i in iter_bits(fcode):
            out &= self.point_open[i]
        return out

    def upper_open(self, gcode: int) -> int:
        """Points meeting G."""
        out = 0
        for i in iter_bits(gcode):
            out |= self.point_open[i]
        return out

    def __repr__(self):
        return f"Spectrum({self.system!r}, {len(self.tights)} points)"


def spectrum(sys: CoverSystem) -> Spectrum:
    return Spectrum(sys)


# ---------------------------------------------------------------------------
# theorems about the spectrum
# ---------------------------------------------------------------------------

@dataclass
class RepresentationReport:
    """Outcome of checking the spectrum representation of a system.

    ``derived_matches_subset``: the derived relation coincides with plain
    containment of basic opens in unions of subbasic ones.
    ``entail_implies_compact``: entailment forces compact containment.
    ``compact_implies_entail``: the converse; guaranteed exactly for
    cover relations, reported (with witness) otherwise.

    When the empty subset happens to be tight it is still excluded from
    the spectrum, which collapses the empty-premise row of the basic
    opens: the containment directions of the two correspondences are then
    stated for non-empty premises, and the empty-premise row is checked
    in its corrected form (the derived relation must relate the empty set
    to nothing at all).  ``empty_set_tight`` records that this corner was
    in effect.
    """

    strong_idempotent: bool
    is_cover: bool
    empty_set_tight: bool
    empty_corner_consistent: bool
    stably_locally_compact: bool
    derived_matches_subset: bool
    entail_implies_compact: bool
    compact_implies_entail: bool
    witnesses: dict

    def passed(self) -> bool:
        return (self.stably_locally_compact and self.derived_matches_subset
                and self.entail_implies_compact and self.empty_corner_consistent
                and (self.compact_implies_entail or not self.is_cover))

    def violations(self) -> list[str]:
        """Failures that contradict a guaranteed theorem (empty = healthy)."""
        if not self.strong_idempotent:
            return []
        out = []
        if not self.stably_locally_compact:
            out.append("spectrum not stably locally compact")
        if not self.derived_matches_subset:
            out.append("derived relation does not match subset containment")
        if not self.empty_corner_consistent:
            out.append("empty-premise corner inconsistent with tight empty set")
        if not self.entail_implies_compact:
            out.append("entailment does not imply compact containment")
        if self.is_cover and not self.compact_implies_entail:
            out.append("compact containment does not imply entailment on a cover")
        return out

    def to_dict(self):
        return {
            "strong_idempotent": self.strong_idempotent,
            "is_cover": self.is_cover,
            "empty_set_tight": self.empty_set_tight,
            "empty_corner_consistent": self.empty_corner_consistent,
            "stably_locally_compact": self.stably_locally_compact,
            "derived_matches_subset": self.derived_matches_subset,
            "entail_implies_compact": self.entail_implies_compact,
            "compact_implies_entail": self.compact_implies_entail,
            "witnesses": self.witnesses,
            "violations": self.violations(),
        }


def verify_representation(sys: CoverSystem) -> RepresentationReport:
    from .axioms import derive_vdash

    spec = Spectrum(sys)
    cls = sys.classification
    size = sys.ground.num_subsets
    vdash = derive_vdash(sys)
    witnesses: dict = {}

    props = space_properties(spec.space)
    empty_tight = is_round(sys, 0) and is_prime(sys, 0)

    # When the empty set is tight, the excluded empty point is the only
    # separator for empty premises, so those pairs are checked via the
    # corrected form instead of the containment of basic opens.
    def exempt(f):
        return empty_tight and f == 0

    corner_ok = True
    if empty_tight and vdash.rows[0] != 0:
        corner_ok = False
        witnesses["empty_corner"] = {
            "G": subset_label(sys.ground, (vdash.rows[0] & -vdash.rows[0]).bit_length() - 1)
        }

    derived_ok = True
    for f in range(size):
        if exempt(f):
            continue
        tf = spec.basic_open(f)
        for g in range(size):
            tg = spec.upper_open(g)
            if (vdash.rows[f] >> g & 1) != (tf & ~tg == 0):
                derived_ok = False
                witnesses.setdefault(
                    "derived_matches_subset",
                    {"F": subset_label(sys.ground, f), "G": subset_label(sys.ground, g)},
                )

    fwd_ok = True
    bwd_ok = True
    for f in range(size):
        tf = spec.basic_open(f)
        for g in range(size):
            tg = spec.upper_open(g)
            compact = compact_contained(spec.space, tf, tg)
            entails = bool(sys.rel.rows[f] >> g & 1)
            if entails and not compact:
                fwd_ok = False
                witnesses.setdefault(
                    "entail_implies_compact",
                    {"F": subset_label(sys.ground, f), "G": subset_label(sys.ground, g)},
                )
            if compact and not entails and not exempt(f):
                bwd_ok = False
                witnesses.setdefault(
                    "compact_implies_entail",
                    {"F": subset_label(sys.ground, f), "G": subset_label(sys.ground, g)},
                )

    return RepresentationReport(
        strong_idempotent=cls.is_strong_idempotent,
        is_cover=cls.is_cover,
        empty_set_tight=empty_tight,
        empty_corner_consistent=corner_ok,
        stably_locally_compact=props.stably_locally_compact,
        derived_matches_subset=derived_ok,
        entail_implies_compact=fwd_ok,
        compact_implies_entail=bwd_ok,
        witnesses=witnesses,
    )


def prime_to_tight(sys: CoverSystem, p) -> FinSubset:
    """Shrink a prime subset to the tight set of its finitely-entailed
    elements."""
    code = _code_of(sys, p)
    if not is_prime(sys, code):
        raise ValueError("input subset is not prime")
    tt = tables(sys.ground.size)
    cols = sys.rel.cols()
    subs = tt.subsets[code]
    out = 0
    for i in range(sys.ground.size):
        if subs & cols[1 << i]:
            out |= 1 << i
    result = FinSubset(sys.ground, out)
    flags = tight_flags(sys, out)
    if sys.classification.is_strong_idempotent and not flags.tight:
        raise TheoremViolationError(
            f"prime shrink of {subset_label(sys.ground, code)} is not tight"
        )
    return result


def _entails_between(sys: CoverSystem, rcode: int, qcode: int) -> bool:
    """Whether some finite part of R entails some finite part of Q."""
    tt = tables(sys.ground.size)
    q_parts = tt.subsets[qcode]
    rows = sys.rel.rows
    return any(rows[f] & q_parts for f in iter_bits(tt.subsets[rcode] | 1))


def birkhoff_stone(sys: CoverSystem, r, q):
    """Tight extension of a round set avoiding a forbidden set.

    Returns a tight T containing ``r`` and disjoint from ``q`` whenever no
    finite part of ``r`` entails a finite part of ``q``; returns None when
    such an entailment exists.  The search is exhaustive and existence is
    theorem-backed for strong idempotents, so a failed search raises.
    """
    rcode = _code_of(sys, r)
    qcode = _code_of(sys, q)
    if not sys.classification.is_strong_idempotent:
        raise ValueError("tight extension requires a strong idempotent system")
    if not is_round(sys, rcode):
        raise ValueError("the set to extend must be round")
    if _entails_between(sys, rcode, qcode):
        return None
    for code in range(sys.ground.num_subsets):
        if code & rcode == rcode and code & qcode == 0:
            if is_round(sys, code) and is_prime(sys, code):
                return FinSubset(sys.ground, code)
    raise TheoremViolationError(
        "no tight extension found although the hypothesis holds"
    )


def birkhoff_stone_families(sys: CoverSystem, r, fams: Family):
    """Family variant: extend a round set to a tight one containing no
    member of ``fams``; the hypothesis quantifies over selections of
    finite subfamilies."""
    rcode = _code_of(sys, r)
    if not sys.classification.is_strong_idempotent:
        raise ValueError("tight extension requires a strong idempotent system")
    if not is_round(sys, rcode):
        raise ValueError("the set to extend must be round")
    if fams.ground != sys.ground:
        raise ValueError("family over a different ground set")
    n = sys.ground.size
    tt = tables(n)
    rows = sys.rel.rows

    # The hypothesis fails iff some finite part F of R entails every
    # selection of some subfamily.  Subfamilies are enumerated literally
    # while small; selections only shrink as the subfamily grows, so for
    # large inputs the full family is the optimal witness.
    member_list = list(iter_bits(fams.mask))
    hypothesis = True
    if len(member_list) <= 12:
        from .kernel import iter_submasks

        sels = sorted({
            selections_mask(
                n,
                sum(1 << member_list[i] for i in iter_bits(sub)),
            )
            for sub in iter_submasks((1 << len(member_list)) - 1)
        })
    else:
        sels = [selections_mask(n, fams.mask)]
    for f in iter_bits(tt.subsets[rcode]):
        if any(sel & ~rows[f] == 0 for sel in sels):
            hypothesis = False
            break
    if not hypothesis:
        return None
    for code in range(sys.ground.num_subsets):
        if code & rcode != rcode:
            continue
        if any(code & h == h for h in iter_bits(fams.mask)):
            continue
        if is_round(sys, code) and is_prime(sys, code):
            return FinSubset(sys.ground, code)
    raise TheoremViolationError(
        "no tight extension found although the family hypothesis holds"
    )


# ---------------------------------------------------------------------------
# recovery of a space from its cover system
# ---------------------------------------------------------------------------

@dataclass
class RecoveryReport:
    injective: bool
    homeomorphism_onto_image: bool
    very_dense: bool
    surjective: bool
    sober: bool
    core_coherent: bool

    def passed(self):
        return (self.injective and self.homeomorphism_onto_image
                and self.very_dense
                and self.surjective == (self.sober and self.core_coherent))

    def to_dict(self):
        return {
            "injective": self.injective,
            "homeomorphism_onto_image": self.homeomorphism_onto_image,
            "very_dense": self.very_dense,
            "surjective": self.surjective,
            "sober": self.sober,
            "core_coherent": self.core_coherent,
        }


def recovery(space: FiniteSpace) -> RecoveryReport:
    """Represent a T0 space inside the spectrum of its own cover system.

    The point map sends x to the set of subbasis members containing x.
    For finite T0 inputs the map must be a surjective homeomorphism onto
    a very dense subspace; surjectivity failures are raised, not merely
    reported, because finite T0 spaces are sober and core coherent.
    """
    props = space_properties(space)
    if not props.t0:
        raise ValueError("recovery requires a T0 space")
    from .builders import topology_cover

    sys = topology_cover(space)
    spec = Spectrum(sys)
    n_sub = len(sys.ground.names)
    calc = _calc(space)

    images = []
    for x in range(len(space.points)):
        code = 0
        for j in range(n_sub):
            if calc.profiles[x] >> j & 1:
                code |= 1 << j
        images.append(code)
    injective = len(set(images)) == len(images)
    in_spectrum = all(code in spec.index for code in images)
    image_mask = 0
    for code in images:
        if code in spec.index:
            image_mask |= 1 << spec.index[code]

    homeo = in_spectrum and injective
    if homeo:
        sub_images = {
            u & image_mask for u in spec.space.opens
        }
        own_opens = set()
        for o in space.opens:
            m = 0
            for x in iter_bits(o):
                m |= 1 << spec.index[images[x]]
            own_opens.add(m)
        homeo = own_opens == sub_images

    dense = bool(spec.tights) and is_very_dense(spec.space, image_mask)
    surjective = in_spectrum and image_mask == spec.full_mask

    report = RecoveryReport(
        injective=injective,
        homeomorphism_onto_image=homeo,
        very_dense=dense,
        surjective=surjective,
        sober=props.sober,
        core_coherent=props.core_coherent,
    )
    if props.sober and props.core_coherent and not surjective:
        raise TheoremViolationError(
            "recovery of a sober core-coherent space must be surjective"
        )
    return report


# ---------------------------------------------------------------------------
# DOT exports
# ---------------------------------------------------------------------------

def specialization_dot(space: FiniteSpace, name: str = "specialization") -> str:
    """Specialization order as a digraph (transitive reduction, no loops)."""
    calc = _calc(space)
    n = len(space.points)
    arrow = [[calc.arrow(x, y) and x != y for y in range(n)] for x in range(n)]
    lines = [f"digraph {name} {{"]
    for p in space.points:
        lines.append(f'  "{p}";')
    for x in range(n):
        for y in range(n):
            if not arrow[x][y]:
                continue
            if any(arrow[x][z] and arrow[z][y] for z in range(n)):
                continue
            lines.append(f'  "{space.points[x]}" -> "{space.points[y]}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def opens_hasse_dot(space: FiniteSpace, name: str = "opens") -> str:
    """Open-set lattice as a Hasse diagram (edges point upward)."""
    opens = sorted(space.opens, key=lambda m: (bin(m).count("1"), m))
    lines = [f"graph {name} {{"]
    labels = {o: "{" + ",".join(space.point_names(o)) + "}" for o in opens}
    for o in opens:
        lines.append(f'  "{labels[o]}";')
    for a in opens:
        for b in opens:
            if a == b or a & ~b:
                continue
            if any(c != a and c != b and a & ~c == 0 and c & ~b == 0 for c in opens):
                continue
            lines.append(f'  "{labels[a]}" -- "{labels[b]}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
