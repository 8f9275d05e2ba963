"""The axiom hierarchy on endorelations of finite subsets.

Terminology used throughout the package:

  entailment          monotone + cut rule
  Scott relation      1-reflexive entailment
  cut-transitive      composition with itself contained in itself
  semicut             self-dual-auxiliary (weakening of the cut rule)
  divisible           contained in its composition with its own
                      singleton-existential strengthening
  strong idempotent   monotone + divisible + cut-transitive
  cover relation      strong idempotent auxiliary to its derived
                      1-reflexive relation

Every predicate is a literal quantifier evaluation; the only algebraic
shortcut anywhere is the maximal-witness path inside cut-composition,
which has its own dedicated equivalence tests against the literal
search.  All predicates can produce a minimal counterexample witness,
minimised by subset-code order, for debuggability of generated systems.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .kernel import GroundMismatchError, iter_bits, tables
from .relations import (
    CoverSystem,
    Relation,
    is_cut,
    is_lower,
    is_one_reflexive,
    is_upper,
    one_exists,
)
from .composition import (
    composition_excess_witness,
    cut_compose,
    literal_cut_compose,
)


@dataclass
class Classification:
    """One boolean per axiom, plus optional counterexample witnesses."""

    is_upper: bool
    is_lower: bool
    is_monotone: bool
    is_cut: bool
    is_one_reflexive: bool
    is_entailment: bool
    is_scott: bool
    is_cut_transitive: bool
    is_semicut: bool
    is_divisible: bool
    is_strong_idempotent: bool
    is_cover: bool
    is_antisymmetric: bool
    witnesses: dict = field(default_factory=dict)

    FLAG_NAMES = (
        "is_upper", "is_lower", "is_monotone", "is_cut", "is_one_reflexive",
        "is_entailment", "is_scott", "is_cut_transitive", "is_semicut",
        "is_divisible", "is_strong_idempotent", "is_cover", "is_antisymmetric",
    )

    def to_dict(self) -> dict:
        return {name: getattr(self, name) for name in self.FLAG_NAMES}

    def axiom(self, name: str) -> bool:
        """Look up a flag by its bare or is_-prefixed name."""
        key = name if name.startswith("is_") else "is_" + name
        if key not in self.FLAG_NAMES:
            raise KeyError(f"unknown axiom {name!r}")
        return getattr(self, key)


def derive_vdash(sys: CoverSystem) -> Relation:
    """The derived relation: F related to G iff every H entailing each
    singleton of F also entails G.

    Always lower and 1-reflexive; upper whenever the base relation is.
    For Scott relations it coincides with the base relation.
    """
    rel = sys.rel
    n = sys.ground.size
    size = sys.ground.num_subsets
    full = (1 << size) - 1
    cols = rel.cols()
    single_cols = [cols[1 << i] for i in range(n)]
    rows = []
    for f in range(size):
        deps = full
        for i in iter_bits(f):
            deps &= single_cols[i]
        out = full
        m = deps
        while m and out:
            low = m & -m
            out &= rel.rows[low.bit_length() - 1]
            m ^= low
        rows.append(out)
    return Relation(sys.ground, sys.ground, rows)


def is_auxiliary(rel_a: Relation, rel_b: Relation) -> bool:
    return auxiliary_witness(rel_a, rel_b) is None


def auxiliary_witness(rel_a: Relation, rel_b: Relation):
    """Literal check that rel_a is auxiliary to rel_b.

    Violation witness (F, H, G): adding any single element of H to F
    gives rel_a to G, and F rel_b H, yet F fails rel_a to G.
    """
    if rel_a.left != rel_b.left or not rel_b.is_endo:
        raise GroundMismatchError("auxiliarity needs matching left grounds")
    size = rel_a.left.num_subsets
    for f in range(size):
        row_b = rel_b.rows[f]
        row_a = rel_a.rows[f]
        for h in iter_bits(row_b):
            joined = (1 << rel_a.right.num_subsets) - 1
            for i in iter_bits(h):
                joined &= rel_a.rows[f | 1 << i]
            bad = joined & ~row_a
            if bad:
                return f, h, (bad & -bad).bit_length() - 1
    return None


def is_semicut(sys: CoverSystem) -> bool:
    return semicut_witness(sys) is None


def semicut_witness(sys: CoverSystem):
    """First (F, G, H) violating the semicut condition, else None.

    Violation: H entails G, F entails G+{h} for every h in H, but F does
    not entail G.
    """
    rel = sys.rel
    n = sys.ground.size
    size = sys.ground.num_subsets
    t = tables(n)
    cols = rel.cols()
    full = (1 << size) - 1
    for g in range(size):
        col_g = cols[g]
        for h in range(size):
            if not rel.rows[h] >> g & 1:
                continue
            cand = full
            for i in iter_bits(h):
                cand &= cols[g | 1 << i]
            bad = cand & ~col_g
            if bad:
                return (bad & -bad).bit_length() - 1, g, h
    return None


def is_cut_transitive(sys: CoverSystem) -> bool:
    return cut_transitive_witness(sys) is None


def cut_transitive_witness(sys: CoverSystem):
    """First (r, t) where self-composition exceeds the relation, else None.

    Uses the production composition when the relation is lower, otherwise
    falls back to the literal witness search (gated to small grounds).
    """
    rel = sys.rel
    if is_lower(rel):
        return composition_excess_witness(rel, rel, rel)
    composed = literal_cut_compose(rel, rel)
    for r, (c, own) in enumerate(zip(composed.rows, rel.rows)):
        bad = c & ~own
        if bad:
            return r, (bad & -bad).bit_length() - 1
    return None


def is_divisible(sys: CoverSystem) -> bool:
    return divisibility_witness(sys) is None


def divisibility_witness(sys: CoverSystem):
    """First (F, G) entailed but not reachable through an interpolating
    family of singleton-entailed subsets, else None."""
    rel = sys.rel
    strengthened = one_exists(rel)
    if is_lower(strengthened):
        composed = cut_compose(rel, strengthened)
    else:
        composed = literal_cut_compose(rel, strengthened)
    for r, (own, c) in enumerate(zip(rel.rows, composed.rows)):
        bad = own & ~c
        if bad:
            return r, (bad & -bad).bit_length() - 1
    return None


def is_strong_idempotent(sys: CoverSystem) -> bool:
    rel = sys.rel
    return (is_upper(rel) and is_lower(rel) and is_divisible(sys)
            and is_cut_transitive(sys))


def is_cover(sys: CoverSystem) -> bool:
    wit, _ = cover_witness(sys)
    return wit is None


def cover_witness(sys: CoverSystem):
    """(witness, reason) pair: witness None iff the relation is a cover.

    A cover relation is a strong idempotent auxiliary to its derived
    relation; the auxiliarity is evaluated through composition, which is
    equivalent here since strong idempotents are lower.
    """
    if not is_strong_idempotent(sys):
        return ("not strong idempotent",), "strong_idempotent"
    vdash = derive_vdash(sys)
    excess = composition_excess_witness(vdash, sys.rel, sys.rel)
    if excess is not None:
        return excess, "auxiliarity"
    return None, None


def vdash_antisymmetry_witness(sys: CoverSystem):
    """First pair of distinct elements that the derived relation identifies."""
    vdash = derive_vdash(sys)
    n = sys.ground.size
    for i in range(n):
        for j in range(i + 1, n):
            ci, cj = 1 << i, 1 << j
            if vdash.rows[ci] >> cj & 1 and vdash.rows[cj] >> ci & 1:
                return sys.ground.names[i], sys.ground.names[j]
    return None


def classify(sys: CoverSystem, with_witnesses: bool = False) -> Classification:
    """Fill every axiom flag; consistent with the individual predicates."""
    rel = sys.rel
    upper = is_upper(rel)
    lower = is_lower(rel)
    monotone = upper and lower
    cut = is_cut(rel)
    one_refl = is_one_reflexive(rel)
    entailment = monotone and cut
    scott = entailment and one_refl
    ct_wit = cut_transitive_witness(sys)
    div_wit = divisibility_witness(sys)
    cut_transitive = ct_wit is None
    divisible = div_wit is None
    strong = monotone and divisible and cut_transitive
    semicut_wit = semicut_witness(sys)
    if strong:
        cov_wit, _ = cover_witness(sys)
        cover = cov_wit is None
    else:
        cov_wit, cover = ("not strong idempotent",), False
    anti_wit = vdash_antisymmetry_witness(sys)
    cls = Classification(
        is_upper=upper,
        is_lower=lower,
        is_monotone=monotone,
        is_cut=cut,
        is_one_reflexive=one_refl,
        is_entailment=entailment,
        is_scott=scott,
        is_cut_transitive=cut_transitive,
        is_semicut=semicut_wit is None,
        is_divisible=divisible,
        is_strong_idempotent=strong,
        is_cover=cover,
        is_antisymmetric=anti_wit is None,
    )
    if with_witnesses:
        wit = {}
        if not upper:
            wit["upper"] = _named_triple(sys, upper_witness_of(rel))
        if not lower:
            from .relations import lower_witness

            wit["lower"] = _named_triple(sys, lower_witness(rel))
        if not cut:
            from .relations import cut_witness

            wit["cut"] = _named_triple(sys, cut_witness(rel))
        if not one_refl:
            from .relations import one_reflexive_witness

            wit["one_reflexive"] = {"s": one_reflexive_witness(rel)}
        if not cut_transitive:
            wit["cut_transitive"] = _named_pair(sys, ct_wit)
        if not divisible:
            wit["divisible"] = _named_pair(sys, div_wit)
        if semicut_wit is not None:
            wit["semicut"] = {
                "F": _names(sys, semicut_wit[0]),
                "G": _names(sys, semicut_wit[1]),
                "H": _names(sys, semicut_wit[2]),
            }
        if not cover and strong:
            wit["cover"] = _named_pair(sys, cov_wit)
        if anti_wit is not None:
            wit["antisymmetric"] = {"s": anti_wit[0], "t": anti_wit[1]}
        cls.witnesses = wit
    return cls


def upper_witness_of(rel: Relation):
    from .relations import upper_witness

    return upper_witness(rel)


def _names(sys: CoverSystem, code: int):
    return [sys.ground.names[i] for i in iter_bits(code)]


def _named_pair(sys: CoverSystem, wit):
    if wit is None or isinstance(wit[0], str):
        return {"note": "no witness"}
    return {"F": _names(sys, wit[0]), "G": _names(sys, wit[1])}


def _named_triple(sys: CoverSystem, wit):
    if wit is None:
        return {"note": "no witness"}
    f, g, s = wit
    return {"F": _names(sys, f), "G": _names(sys, g), "s": s}
