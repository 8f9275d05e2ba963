"""Cover morphisms, the two functors between systems and spaces, and the
natural isomorphisms certifying the duality.

Direction bookkeeping (the error-prone part, so spelled out once): a
morphism holds a relation between F(source ground) and F(target ground),
where `source` and `target` name the induced map of spectra, which runs
Spectrum(source) -> Spectrum(target).  On the space side a map runs
source space -> target space and abstracts to a morphism whose relation
pairs source-subbasis subsets with target-subbasis subsets.  Composition
of morphisms is cut-composition of the relations in the same order as
the induced maps compose.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .kernel import (
    GroundMismatchError,
    TheoremViolationError,
    iter_bits,
    tables,
)
from .relations import CoverSystem, Relation, is_lower, is_upper, one_exists
from .composition import cut_compose
from .spectrum import (
    FiniteSpace,
    Spectrum,
    compact_contained,
    is_prime,
    is_round,
    subset_label,
)


# ---------------------------------------------------------------------------
# partial continuous maps between finite spaces
# ---------------------------------------------------------------------------

class SpaceMap:
    """A partial function between finite spaces with open domain whose
    preimages of opens are open."""

    __slots__ = ("source", "target", "mapping")

    def __init__(self, source: FiniteSpace, target: FiniteSpace, mapping: dict):
        self.source = source
        self.target = target
        self.mapping = dict(sorted(mapping.items()))
        dom = 0
        for i in self.mapping:
            dom |= 1 << i
        if dom not in set(source.opens):
            raise ValueError("domain of a space map must be open")
        for s in target.subbasis:
            if self.preimage(s) not in set(source.opens):
                raise ValueError("preimages of subbasic opens must be open")

    @property
    def domain_mask(self) -> int:
        dom = 0
        for i in self.mapping:
            dom |= 1 << i
        return dom

    def preimage(self, mask: int) -> int:
        out = 0
        for i, j in self.mapping.items():
            if mask >> j & 1:
                out |= 1 << i
        return out

    def compose(self, then: "SpaceMap") -> "SpaceMap":
        """The map `then after self` (self first, then `then`)."""
        if self.target != then.source:
            raise GroundMismatchError("maps do not compose")
        mapping = {
            i: then.mapping[j]
            for i, j in self.mapping.items()
            if j in then.mapping
        }
        return SpaceMap(self.source, then.target, mapping)

    @staticmethod
    def identity(space: FiniteSpace) -> "SpaceMap":
        return SpaceMap(space, space, {i: i for i in range(len(space.points))})

    @staticmethod
    def constant(source: FiniteSpace, target: FiniteSpace, point: int) -> "SpaceMap":
        return SpaceMap(source, target,
                        {i: point for i in range(len(source.points))})

    @staticmethod
    def inclusion(space: FiniteSpace, open_mask: int) -> "SpaceMap":
        return SpaceMap(space, space, {i: i for i in iter_bits(open_mask)})

    def is_total(self) -> bool:
        return len(self.mapping) == len(self.source.points)

    def is_surjective(self) -> bool:
        return set(self.mapping.values()) == set(range(len(self.target.points)))

    def is_injective(self) -> bool:
        vals = list(self.mapping.values())
        return len(set(vals)) == len(vals)

    def __eq__(self, other):
        return (isinstance(other, SpaceMap) and self.source == other.source
                and self.target == other.target and self.mapping == other.mapping)

    def __hash__(self):
        return hash((self.source, self.target, tuple(self.mapping.items())))

    def __repr__(self):
        return f"SpaceMap({len(self.mapping)}/{len(self.source.points)} pts -> {len(self.target.points)} pts)"


# ---------------------------------------------------------------------------
# cover morphisms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CoverMorphism:
    """A relation between the finite subsets of two cover systems.

    ``rel`` runs from F(source ground) to F(target ground); the induced
    spectrum map runs Spectrum(source) -> Spectrum(target).
    """

    source: CoverSystem
    target: CoverSystem
    rel: Relation

    def __post_init__(self):
        if self.rel.left != self.source.ground or self.rel.right != self.target.ground:
            raise GroundMismatchError("morphism relation has wrong coordinate grounds")

    @staticmethod
    def identity(sys: CoverSystem) -> "CoverMorphism":
        return CoverMorphism(sys, sys, sys.rel)

    def __repr__(self):
        return f"CoverMorphism({self.source!r} -> {self.target!r})"


def is_cover_morphism(m: CoverMorphism) -> bool:
    return cover_morphism_failure(m) is None


def cover_morphism_failure(m: CoverMorphism):
    """None when both defining equations hold, else a reason string.

    A relation satisfying the equations is automatically monotone, so a
    non-monotone candidate fails without any composition.
    """
    rel = m.rel
    if not (is_upper(rel) and is_lower(rel)):
        return "relation is not monotone"
    if not is_lower(m.target.rel):
        raise ValueError("target system relation must be lower")
    if cut_compose(rel, m.target.rel) != rel:
        return "composing with the target relation changes the morphism"
    strengthened = one_exists(rel)
    if cut_compose(m.source.rel, strengthened) != rel:
        return "the source relation does not reconstruct the morphism"
    return None


def is_karoubi(m: CoverMorphism) -> bool:
    return karoubi_failure(m) is None


def karoubi_failure(m: CoverMorphism):
    """The weaker absorption equations: composing with either system's
    relation leaves the morphism unchanged."""
    rel = m.rel
    if not is_lower(rel):
        return "relation is not lower"
    if cut_compose(rel, m.target.rel) != rel:
        return "target-side absorption fails"
    if cut_compose(m.source.rel, rel) != rel:
        return "source-side absorption fails"
    return None


def compose_morphisms(m1: CoverMorphism, m2: CoverMorphism) -> CoverMorphism:
    """Cut-compose two morphisms; spectra compose in the same order."""
    if m1.target != m2.source:
        raise GroundMismatchError("morphisms do not compose")
    return CoverMorphism(m1.source, m2.target, cut_compose(m1.rel, m2.rel))


def derive_proper(m: CoverMorphism):
    """The derived comparison relation of a morphism and the properness
    test: the target relation must factor through it."""
    size_t = m.target.ground.num_subsets
    size_s = m.source.ground.num_subsets
    full_s = (1 << size_s) - 1
    cols = m.rel.cols()
    single_cols = [cols[1 << i] for i in range(m.target.ground.size)]
    rows = []
    for f in range(size_t):
        deps = full_s
        for i in iter_bits(f):
            deps &= single_cols[i]
        out = full_s
        d = deps
        while d and out:
            low = d & -d
            out &= m.source.rel.rows[low.bit_length() - 1]
            d ^= low
        rows.append(out)
    sqsubseteq = Relation(m.target.ground, m.source.ground, rows)
    proper = m.target.rel.issubset(cut_compose(sqsubseteq, m.rel))
    return sqsubseteq, proper


# ---------------------------------------------------------------------------
# the abstraction functor: spaces -> systems
# ---------------------------------------------------------------------------

def ab_functor(phi: SpaceMap, source_sys: CoverSystem | None = None,
               target_sys: CoverSystem | None = None) -> CoverMorphism:
    """Abstract a partial continuous map to the morphism relating F to G
    when the intersection of F is compactly contained in the preimage of
    the union of G."""
    from .builders import topology_cover

    if source_sys is None:
        source_sys = topology_cover(phi.source)
    if target_sys is None:
        target_sys = topology_cover(phi.target)
    src_sub = phi.source.subbasis
    tgt_sub = phi.target.subbasis
    full_pts = phi.source.full_mask
    rows = []
    for f in range(source_sys.ground.num_subsets):
        inter = full_pts
        for i in iter_bits(f):
            inter &= src_sub[i]
        row = 0
        for g in range(target_sys.ground.num_subsets):
            union = 0
            for i in iter_bits(g):
                union |= tgt_sub[i]
            if compact_contained(phi.source, inter, phi.preimage(union)):
                row |= 1 << g
        rows.append(row)
    return CoverMorphism(source_sys, target_sys,
                         Relation(source_sys.ground, target_sys.ground, rows))


# ---------------------------------------------------------------------------
# the spectral functor: systems -> spaces
# ---------------------------------------------------------------------------

@lru_cache(maxsize=128)
def _spectrum_of(sys: CoverSystem) -> Spectrum:
    return Spectrum(sys)


def sp_functor(m: CoverMorphism, check: bool = True) -> SpaceMap:
    """The induced map of spectra: a tight set goes to the elements whose
    singletons are reached from inside it; the domain is where that image
    is non-empty.

    With ``check`` set, the input must satisfy the cover-morphism
    equations and the spectral characterisation is asserted.  Pass
    ``check=False`` to transport relations that only induce a continuous
    map, e.g. abstractions of strictly partial space maps, which on
    finite (hence compact) spaces never satisfy the morphism equations.
    """
    if check:
        failure = cover_morphism_failure(m)
        if failure is not None:
            raise ValueError(f"not a cover morphism: {failure}")
    spec_s = _spectrum_of(m.source)
    spec_t = _spectrum_of(m.target)
    tt = tables(m.source.ground.size)
    cols = m.rel.cols()
    single_cols = [cols[1 << i] for i in range(m.target.ground.size)]
    mapping = {}
    for i, tcode in enumerate(spec_s.tights):
        subs = tt.subsets[tcode]
        image = 0
        for r, col in enumerate(single_cols):
            if subs & col:
                image |= 1 << r
        if image == 0:
            continue
        if image not in spec_t.index:
            if not (is_round(m.target, image) and is_prime(m.target, image)):
                raise TheoremViolationError(
                    f"image {subset_label(m.target.ground, image)} of a tight set is not tight"
                )
            raise TheoremViolationError("tight image missing from the spectrum")
        mapping[i] = spec_t.index[image]
    phi = SpaceMap(spec_s.space, spec_t.space, mapping)
    if check:
        _check_spectral_characterisation(m, spec_s, spec_t, phi)
    return phi


def _check_spectral_characterisation(m, spec_s, spec_t, phi):
    if not spectral_square_holds(m, phi):
        raise TheoremViolationError(
            "morphism entailment does not match compact containment of spectra"
        )


def spectral_square_holds(m: CoverMorphism, phi: SpaceMap | None = None) -> bool:
    """Morphism entailment must coincide with compact containment of the
    basic open in the preimage of the union open.  The empty-premise row
    is exempt from the converse when the empty set is tight in the source
    system (its excluded point is the only separator there)."""
    if phi is None:
        phi = sp_functor(m, check=False)
    spec_s = _spectrum_of(m.source)
    spec_t = _spectrum_of(m.target)
    exempt_empty = is_round(m.source, 0) and is_prime(m.source, 0)
    for f in range(m.source.ground.num_subsets):
        tf = spec_s.basic_open(f)
        for g in range(m.target.ground.num_subsets):
            pre = phi.preimage(spec_t.upper_open(g))
            holds = bool(m.rel.rows[f] >> g & 1)
            compact = compact_contained(spec_s.space, tf, pre)
            if holds and not compact:
                return False
            if compact and not holds and not (f == 0 and exempt_empty):
                return False
    return True


# ---------------------------------------------------------------------------
# natural isomorphisms and duality verification
# ---------------------------------------------------------------------------

@lru_cache(maxsize=128)
def _abstracted_spectrum_system(sys: CoverSystem) -> CoverSystem:
    from .builders import topology_cover

    return topology_cover(_spectrum_of(sys).space)


def _subbasis_preimages(sys: CoverSystem):
    """For each dedup'd subbasic open of the spectrum, the least ground
    element whose basic open realises it."""
    spec = _spectrum_of(sys)
    reps = []
    for s in spec.space.subbasis:
        for e in range(sys.ground.size):
            if spec.point_open[e] == s:
                reps.append(e)
                break
    return spec, reps


def angle_well_defined(sys: CoverSystem):
    """Whether ground subsets with identical basic opens entail alike."""
    spec = _spectrum_of(sys)
    size = sys.ground.num_subsets
    seen = {}
    for f in range(size):
        key = spec.basic_open(f)
        if key in seen and sys.rel.rows[f] != sys.rel.rows[seen[key]]:
            return False, (seen[key], f)
        seen.setdefault(key, f)
    return True, None


def angle_morphism(sys: CoverSystem) -> CoverMorphism:
    """The comparison morphism from the re-abstracted spectrum system back
    to the original system: image families entail exactly as preimages do.

    Only well defined for cover relations; the construction checks this.
    """
    ok, wit = angle_well_defined(sys)
    if not ok:
        raise ValueError("comparison relation is not well defined for this system")
    ab_sys = _abstracted_spectrum_system(sys)
    spec, reps = _subbasis_preimages(sys)
    rows = []
    for u in range(ab_sys.ground.num_subsets):
        pre = 0
        for j in iter_bits(u):
            pre |= 1 << reps[j]
        rows.append(sys.rel.rows[pre])
    return CoverMorphism(ab_sys, sys,
                         Relation(ab_sys.ground, sys.ground, rows))


def angle_inverse_morphism(sys: CoverSystem) -> CoverMorphism:
    ab_sys = _abstracted_spectrum_system(sys)
    spec, reps = _subbasis_preimages(sys)
    sub_index = {s: j for j, s in enumerate(spec.space.subbasis)}
    size = sys.ground.num_subsets
    rows = []
    for f in range(size):
        row = 0
        for u in range(ab_sys.ground.num_subsets):
            pre = 0
            for j in iter_bits(u):
                pre |= 1 << reps[j]
            if sys.rel.rows[f] >> pre & 1:
                row |= 1 << u
        rows.append(row)
    return CoverMorphism(sys, ab_sys, Relation(sys.ground, ab_sys.ground, rows))


def lambda_map(space: FiniteSpace) -> SpaceMap:
    """The point map of a space into the spectrum of its cover system."""
    from .builders import topology_cover

    sys = topology_cover(space)
    spec = _spectrum_of(sys)
    from .spectrum import _calc

    calc = _calc(space)
    mapping = {}
    for x in range(len(space.points)):
        code = calc.profiles[x]
        mapping[x] = spec.index[code]
    return SpaceMap(space, spec.space, mapping)


@dataclass
class DualityReport:
    side: str
    lambda_iso: bool | None
    zigzag_space: bool | None
    angle_well_defined: bool | None
    angle_is_morphism: bool | None
    angle_iso: bool | None
    zigzag_system: bool | None
    naturality: dict
    empty_set_tight: bool = False

    def violations(self) -> list[str]:
        out = []
        for name in ("lambda_iso", "zigzag_space", "angle_well_defined",
                     "angle_is_morphism", "angle_iso", "zigzag_system"):
            val = getattr(self, name)
            if val is False:
                out.append(f"{name} failed")
        for key, ok in self.naturality.items():
            if not ok:
                out.append(f"naturality square {key} failed")
        return out

    def passed(self) -> bool:
        return not self.violations()

    def to_dict(self):
        return {
            "side": self.side,
            "lambda_iso": self.lambda_iso,
            "zigzag_space": self.zigzag_space,
            "angle_well_defined": self.angle_well_defined,
            "angle_is_morphism": self.angle_is_morphism,
            "angle_iso": self.angle_iso,
            "zigzag_system": self.zigzag_system,
            "naturality": self.naturality,
            "empty_set_tight": self.empty_set_tight,
            "violations": self.violations(),
        }


def verify_duality_system(sys: CoverSystem, test_morphisms=()) -> DualityReport:
    """The system-side duality data: the comparison morphism is a genuine
    isomorphism whose round trips are the identity morphisms, the spectrum
    zigzag collapses to the identity map, and the comparison square
    commutes for the supplied test morphisms.

    The comparison direction is only defined for cover relations, and
    systems whose empty set is tight cannot arise as subbasis
    abstractions of finite spaces (every finite space is compactly
    covered by its subbasis, so the abstraction always relates the empty
    premise to the full family); non-covers and empty-tight covers are
    recorded as out of scope rather than checked.
    """
    empty_tight = is_round(sys, 0) and is_prime(sys, 0)
    if empty_tight or not sys.classification.is_cover:
        return DualityReport(
            side="system",
            lambda_iso=None,
            zigzag_space=None,
            angle_well_defined=None,
            angle_is_morphism=None,
            angle_iso=None,
            zigzag_system=None,
            naturality={},
            empty_set_tight=empty_tight,
        )
    ok, _ = angle_well_defined(sys)
    angle_ok = None
    angle_iso = None
    zig = None
    naturality = {}
    if ok:
        fwd = angle_morphism(sys)
        bwd = angle_inverse_morphism(sys)
        angle_ok = is_cover_morphism(fwd)
        round_to_sys = compose_morphisms(bwd, fwd)
        round_to_ab = compose_morphisms(fwd, bwd)
        angle_iso = (round_to_sys.rel == sys.rel
                     and round_to_ab.rel == fwd.source.rel)
        phi = sp_functor(fwd, check=False)
        lam = lambda_map(_spectrum_of(sys).space)
        zig = lam.compose(phi) == SpaceMap.identity(_spectrum_of(sys).space)
        for k, m in enumerate(test_morphisms):
            lhs = compose_morphisms(angle_morphism(m.source), m)
            ab_of_sp = ab_functor(
                sp_functor(m),
                source_sys=_abstracted_spectrum_system(m.source),
                target_sys=_abstracted_spectrum_system(m.target),
            )
            rhs = compose_morphisms(ab_of_sp, angle_morphism(m.target))
            naturality[f"angle_square_{k}"] = lhs.rel == rhs.rel
    return DualityReport(
        side="system",
        lambda_iso=None,
        zigzag_space=None,
        angle_well_defined=ok,
        angle_is_morphism=angle_ok,
        angle_iso=angle_iso,
        zigzag_system=zig,
        naturality=naturality,
    )


def verify_duality_space(space: FiniteSpace, test_maps=()) -> DualityReport:
    """The space-side duality data: the point map is an isomorphism, the
    abstraction zigzag reproduces the compact cover relation, and the
    point-map square commutes for the supplied test maps."""
    from .builders import topology_cover
    from .spectrum import recovery

    rec = recovery(space)
    sys = topology_cover(space)
    spec = _spectrum_of(sys)
    lam = lambda_map(space)
    lam_iso = (rec.passed() and rec.surjective and lam.is_total()
               and lam.is_injective())

    m_lam = ab_functor(lam, source_sys=sys,
                       target_sys=_abstracted_spectrum_system(sys))
    m_angle = angle_morphism(sys)
    zig = compose_morphisms(m_lam, m_angle).rel == sys.rel

    naturality = {}
    for k, phi in enumerate(test_maps):
        sys_src = topology_cover(phi.source)
        sys_tgt = topology_cover(phi.target)
        m_phi = ab_functor(phi, source_sys=sys_src, target_sys=sys_tgt)
        phi_spec = sp_functor(m_phi, check=False)
        lhs = phi.compose(lambda_map(phi.target))
        rhs = lambda_map(phi.source).compose(phi_spec)
        naturality[f"lambda_square_{k}"] = lhs == rhs
    return DualityReport(
        side="space",
        lambda_iso=lam_iso,
        zigzag_space=zig,
        angle_well_defined=None,
        angle_is_morphism=None,
        angle_iso=None,
        zigzag_system=None,
        naturality=naturality,
    )


def verify_duality(obj, tests=()) -> DualityReport:
    if isinstance(obj, CoverSystem):
        return verify_duality_system(obj, tests)
    if isinstance(obj, FiniteSpace):
        return verify_duality_space(obj, tests)
    raise TypeError("expected a cover system or a finite space")
