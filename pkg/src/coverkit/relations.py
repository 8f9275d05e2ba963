"""Relations between finite-subset lattices, and cover systems.

A relation here always runs between F(S) and F(T) for ground sets S, T:
rows are indexed by left subset codes, and each row is a bitmask over
right subset codes.  Structural predicates (upper, lower, cut, one-
reflexive) are evaluated by direct quantification, vectorised over whole
rows where a row-level formulation is available.

Values are immutable after construction; the classification cache on a
cover system is filled at most once and is safe under concurrent readers.

For monotone relations the canonical extension to arbitrary subsets
(some finite part of one side relating to some finite part of the other)
agrees with the relation itself on finite subsets, so no separate
extended relation is exposed; the tightness machinery quantifies over
finite parts directly where the distinction would matter.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Union

from .kernel import (
    DEFAULT_MATRIX_BITS,
    CapExceededError,
    Family,
    FinSubset,
    GroundMismatchError,
    GroundSet,
    iter_bits,
    selections_mask,
    tables,
)


@dataclass(frozen=True)
class StructuralFlags:
    upper: bool
    lower: bool
    monotone: bool
    cut: bool
    one_reflexive: bool


class Relation:
    """A relation between F(left) and F(right) as a dense boolean matrix.

    ``rows[f]`` is the bitmask of right-hand codes g with f related to g.
    """

    __slots__ = ("left", "right", "rows", "_cols", "_hash")

    def __init__(self, left: GroundSet, right: GroundSet, rows, allow_large=False):
        rows = tuple(rows)
        if len(rows) != left.num_subsets:
            raise ValueError("row count must be 2**|left|")
        width = right.num_subsets
        if not allow_large and left.num_subsets * width > DEFAULT_MATRIX_BITS:
            raise CapExceededError(
                f"relation matrix {left.num_subsets}x{width} exceeds the size cap"
            )
        for r in rows:
            if not 0 <= r < (1 << width):
                raise ValueError("row mask out of range")
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "_cols", None)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, *a):
        raise AttributeError("Relation is immutable")

    # -- construction helpers --

    @staticmethod
    def empty(left: GroundSet, right: GroundSet | None = None) -> "Relation":
        right = right or left
        return Relation(left, right, [0] * left.num_subsets)

    @staticmethod
    def full(left: GroundSet, right: GroundSet | None = None) -> "Relation":
        right = right or left
        m = (1 << right.num_subsets) - 1
        return Relation(left, right, [m] * left.num_subsets)

    @staticmethod
    def from_pairs(left: GroundSet, right: GroundSet, pairs) -> "Relation":
        rows = [0] * left.num_subsets
        for f, g in pairs:
            fc = f.bits if isinstance(f, FinSubset) else left.subset(f).bits
            gc = g.bits if isinstance(g, FinSubset) else right.subset(g).bits
            rows[fc] |= 1 << gc
        return Relation(left, right, rows)

    @staticmethod
    def from_predicate(left: GroundSet, right: GroundSet,
                       pred: Callable[[int, int], bool]) -> "Relation":
        width = right.num_subsets
        rows = []
        for f in range(left.num_subsets):
            m = 0
            for g in range(width):
                if pred(f, g):
                    m |= 1 << g
            rows.append(m)
        return Relation(left, right, rows)

    # -- basic queries --

    @property
    def is_endo(self) -> bool:
        return self.left == self.right

    def holds(self, f, g) -> bool:
        fc = f.bits if isinstance(f, FinSubset) else f
        gc = g.bits if isinstance(g, FinSubset) else g
        return bool(self.rows[fc] >> gc & 1)

    def pairs(self):
        for f, row in enumerate(self.rows):
            for g in iter_bits(row):
                yield f, g

    def cols(self):
        """Column masks: cols()[g] is the bitmask over left codes f with f ~ g."""
        if self._cols is None:
            width = self.right.num_subsets
            cols = [0] * width
            for f, row in enumerate(self.rows):
                while row:
                    low = row & -row
                    cols[low.bit_length() - 1] |= 1 << f
                    row ^= low
            object.__setattr__(self, "_cols", tuple(cols))
        return self._cols

    def transpose(self) -> "Relation":
        return Relation(self.right, self.left, self.cols())

    def union(self, other: "Relation") -> "Relation":
        self._check_shape(other)
        return Relation(self.left, self.right,
                        [a | b for a, b in zip(self.rows, other.rows)])

    def intersection(self, other: "Relation") -> "Relation":
        self._check_shape(other)
        return Relation(self.left, self.right,
                        [a & b for a, b in zip(self.rows, other.rows)])

    def issubset(self, other: "Relation") -> bool:
        self._check_shape(other)
        return all(a & ~b == 0 for a, b in zip(self.rows, other.rows))

    def first_difference(self, other: "Relation"):
        """Lexicographically first (f, g) where the two relations disagree."""
        self._check_shape(other)
        for f, (a, b) in enumerate(zip(self.rows, other.rows)):
            if a != b:
                d = a ^ b
                return f, (d & -d).bit_length() - 1
        return None

    def _check_shape(self, other: "Relation"):
        if self.left != other.left or self.right != other.right:
            raise GroundMismatchError("relations have different coordinate grounds")

    def __eq__(self, other):
        return (isinstance(other, Relation) and self.left == other.left
                and self.right == other.right and self.rows == other.rows)

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.left, self.right, self.rows)))
        return self._hash

    def __repr__(self):
        n = sum(bin(r).count("1") for r in self.rows)
        return f"Relation({self.left!r}->{self.right!r}, {n} pairs)"


# -- polar operators ---------------------------------------------------------

def _query_codes(rel: Relation, q) -> tuple[int, ...]:
    if isinstance(q, Family):
        if q.ground != rel.left:
            raise GroundMismatchError("query family over a different ground set")
        return q.member_codes()
    if isinstance(q, FinSubset):
        if q.ground != rel.left:
            raise GroundMismatchError("query subset over a different ground set")
        return (q.bits,)
    return tuple(q)


def polar_exists(rel: Relation, q) -> Family:
    """{t : some member of q is related to t} -- the union of the rows."""
    out = 0
    for c in _query_codes(rel, q):
        out |= rel.rows[c]
    return Family(rel.right, out)


def polar_forall(rel: Relation, q) -> Family:
    """{t : every member of q is related to t} -- the meet of the rows."""
    out = (1 << rel.right.num_subsets) - 1
    for c in _query_codes(rel, q):
        out &= rel.rows[c]
    return Family(rel.right, out)


# -- structural predicates ---------------------------------------------------

def is_upper(rel: Relation) -> bool:
    return upper_witness(rel) is None


def upper_witness(rel: Relation):
    """First (f, g, s) with f ~ g but not f ~ g+{s}, else None."""
    nr = rel.right.size
    t = tables(nr)
    for f, row in enumerate(rel.rows):
        for i in range(nr):
            hi = t.contains_elem[i]
            # rows whose g lacks i, shifted up to g | {i}
            shifted = (row & ~hi) << (1 << i)
            bad = shifted & ~row
            if bad:
                g_hi = (bad & -bad).bit_length() - 1
                return f, g_hi ^ (1 << i), rel.right.names[i]
    return None


def is_lower(rel: Relation) -> bool:
    return lower_witness(rel) is None


def lower_witness(rel: Relation):
    nl = rel.left.size
    for f in range(rel.left.num_subsets):
        for i in range(nl):
            if f >> i & 1:
                continue
            bad = rel.rows[f] & ~rel.rows[f | 1 << i]
            if bad:
                return f, (bad & -bad).bit_length() - 1, rel.left.names[i]
    return None


def is_cut(rel: Relation) -> bool:
    return cut_witness(rel) is None


def cut_witness(rel: Relation):
    """First (F, G, s) violating the cut rule, else None.

    Violation: {s}+F ~ G and F ~ G+{s} both hold but F ~ G fails.
    """
    if not rel.is_endo:
        raise GroundMismatchError("cut rule applies to endorelations only")
    n = rel.left.size
    t = tables(n)
    for f, row in enumerate(rel.rows):
        for i in range(n):
            if f >> i & 1:
                continue
            hi = t.contains_elem[i]
            # b[g] = 1 iff F ~ g | {i}
            b = (row & hi) | ((row & hi) >> (1 << i))
            bad = rel.rows[f | 1 << i] & b & ~row
            if bad:
                return f, (bad & -bad).bit_length() - 1, rel.left.names[i]
    return None


def is_one_reflexive(rel: Relation) -> bool:
    return one_reflexive_witness(rel) is None


def one_reflexive_witness(rel: Relation):
    if not rel.is_endo:
        raise GroundMismatchError("1-reflexivity applies to endorelations only")
    for i in range(rel.left.size):
        c = 1 << i
        if not rel.rows[c] >> c & 1:
            return rel.left.names[i]
    return None


def structural_flags(rel: Relation) -> StructuralFlags:
    """Upper/lower/monotone/cut/1-reflexive by direct quantifier evaluation."""
    if not rel.is_endo:
        raise GroundMismatchError("structural flags apply to endorelations only")
    up = is_upper(rel)
    lo = is_lower(rel)
    return StructuralFlags(
        upper=up,
        lower=lo,
        monotone=up and lo,
        cut=is_cut(rel),
        one_reflexive=is_one_reflexive(rel),
    )


# -- derived relations -------------------------------------------------------

def one_exists(rel: Relation) -> Relation:
    """The strengthening relating f to G iff f relates to some singleton {g}."""
    nr = rel.right.size
    t = tables(nr)
    rows = []
    for row in rel.rows:
        out = 0
        for i in range(nr):
            if row >> (1 << i) & 1:
                out |= t.contains_elem[i]
        rows.append(out)
    return Relation(rel.left, rel.right, rows)


def between(rel: Relation, f: Union[FinSubset, int], fam: Family) -> bool:
    """True iff f relates to every selection of ``fam``."""
    if not rel.is_endo:
        raise GroundMismatchError("selection-extension applies to endorelations only")
    if fam.ground != rel.right:
        raise GroundMismatchError("family over a different ground set")
    fc = f.bits if isinstance(f, FinSubset) else f
    sel = selections_mask(rel.right.size, fam.mask)
    return rel.rows[fc] & sel == sel


def star(rel: Relation, fam_a: Family, fam_b: Family) -> bool:
    """True iff each member F of fam_a has G in fam_b with F ~ {g} for all g in G."""
    if not rel.is_endo:
        raise GroundMismatchError("star extension applies to endorelations only")
    if fam_a.ground != rel.left or fam_b.ground != rel.left:
        raise GroundMismatchError("families over a different ground set")
    for f in iter_bits(fam_a.mask):
        row = rel.rows[f]
        ok = any(
            all(row >> (1 << i) & 1 for i in iter_bits(g))
            for g in iter_bits(fam_b.mask)
        )
        if not ok:
            return False
    return True


# -- cover systems -----------------------------------------------------------

EAGER_CLASSIFY_MAX = 8


class CoverSystem:
    """A ground set with an endorelation on its finite subsets.

    The axiom classification is cached; it is computed eagerly at
    construction for small ground sets (the relation must be monotone or
    tiny for the composition-based flags to be evaluated cheaply) and
    lazily on first access otherwise.
    """

    __slots__ = ("ground", "rel", "name", "_classification")

    def __init__(self, ground: GroundSet, rel: Relation, name: str = ""):
        if rel.left != ground or rel.right != ground:
            raise GroundMismatchError("relation must be an endorelation on the ground")
        self.ground = ground
        self.rel = rel
        self.name = name
        self._classification = None
        if ground.size <= EAGER_CLASSIFY_MAX:
            from . import axioms

            if ground.size <= 3 or (is_upper(rel) and is_lower(rel)):
                self._classification = axioms.classify(self)

    @property
    def classification(self):
        if self._classification is None:
            from . import axioms

            self._classification = axioms.classify(self)
        return self._classification

    @property
    def flags(self):
        return self.classification

    def structural(self) -> StructuralFlags:
        return structural_flags(self.rel)

    def holds(self, f, g) -> bool:
        return self.rel.holds(f, g)

    def __eq__(self, other):
        return (isinstance(other, CoverSystem) and self.ground == other.ground
                and self.rel == other.rel)

    def __hash__(self):
        return hash((self.ground, self.rel))

    def __repr__(self):
        label = self.name or "system"
        return f"CoverSystem({label}, |S|={self.ground.size})"
