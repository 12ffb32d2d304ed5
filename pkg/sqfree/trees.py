from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from sqfree.core import (
    MonomialIdeal,
    SimplicialComplex,
    SquareFreeMonomial,
    bits,
    compress,
    is_connected,
    minimalize,
)
from sqfree.events import ToolkitLogger
from sqfree.exceptions import GuardException, NotAFacetException, raise_precondition_error

logger = ToolkitLogger("Trees")


@dataclass(frozen=True)
class LeafVerdict:
    is_leaf: bool
    witness: Optional[SquareFreeMonomial] = None

    def __bool__(self) -> bool:
        return self.is_leaf


@dataclass(frozen=True)
class LeafRow:
    facet: SquareFreeMonomial
    is_leaf: bool
    witness: Optional[SquareFreeMonomial]
    free_vertices: SquareFreeMonomial


@dataclass(frozen=True)
class ForestVerdict:
    """``witness`` is a leaf-elimination order when ``is_forest``, otherwise a
    nonempty subcollection in which no facet is a leaf.
    """

    is_forest: bool
    witness: Tuple[SquareFreeMonomial, ...] = ()

    def __bool__(self) -> bool:
        return self.is_forest


def _leaf_witness(facet: int, others: Sequence[int]) -> Tuple[bool, Optional[int]]:
    if not others:
        return True, None
    rest = 0
    for other in others:
        rest |= other
    shared = facet & rest
    for other in others:
        if shared & ~other == 0:
            return True, other
    return False, None


def _check_facet(complex: SimplicialComplex, facet: SquareFreeMonomial):
    if facet not in complex.facets:
        raise NotAFacetException(complex.ambient.format_monomial(facet))


def _others(complex: SimplicialComplex, facet: SquareFreeMonomial) -> List[int]:
    return [other.mask for other in complex.facets if other != facet]


def remove_facet(complex: SimplicialComplex, facet: SquareFreeMonomial) -> SimplicialComplex:
    _check_facet(complex, facet)
    return SimplicialComplex(
        complex.ambient, tuple(other for other in complex.facets if other != facet)
    )


def is_leaf(complex: SimplicialComplex, facet: SquareFreeMonomial) -> LeafVerdict:
    _check_facet(complex, facet)
    leaf, witness = _leaf_witness(facet.mask, _others(complex, facet))
    return LeafVerdict(leaf, None if witness is None else SquareFreeMonomial(witness))


def free_vertices(complex: SimplicialComplex, facet: SquareFreeMonomial) -> SquareFreeMonomial:
    _check_facet(complex, facet)
    rest = 0
    for other in _others(complex, facet):
        rest |= other
    return SquareFreeMonomial(facet.mask & ~rest)


def leaf_table(complex: SimplicialComplex) -> List[LeafRow]:
    rows = []
    for facet in complex.facets:
        verdict = is_leaf(complex, facet)
        rows.append(
            LeafRow(facet, verdict.is_leaf, verdict.witness, free_vertices(complex, facet))
        )
    return rows


def _eliminate_leaves(facets: Sequence[int]) -> Tuple[List[int], List[int]]:
    """Greedily strip leaves; returns (order, what could not be stripped)."""
    remaining = list(facets)
    order: List[int] = []
    while remaining:
        for position, facet in enumerate(remaining):
            others = remaining[:position] + remaining[position + 1:]
            if _leaf_witness(facet, others)[0]:
                order.append(facet)
                del remaining[position]
                break
        else:
            return order, remaining
    return order, []


def has_leaf_order(complex: SimplicialComplex) -> Optional[Tuple[SquareFreeMonomial, ...]]:
    order, stuck = _eliminate_leaves([facet.mask for facet in complex.facets])
    if stuck:
        return None
    return tuple(SquareFreeMonomial(mask) for mask in order)


def _leafless_subcollection(facets: Sequence[int]) -> Optional[int]:
    """Scan every subcollection (as a bit set over ``facets``) for one without
    a leaf. Unions of subcollections are memoized in a table indexed by the
    subset.
    """
    q = len(facets)
    unions = [0] * (1 << q)
    for subset in range(1, 1 << q):
        low = subset & -subset
        unions[subset] = unions[subset & (subset - 1)] | facets[low.bit_length() - 1]

    for subset in range(1, 1 << q):
        if subset & (subset - 1) == 0:
            continue
        members = list(bits(subset))
        has_leaf = False
        for i in members:
            shared = facets[i] & unions[subset & ~(1 << i)]
            if any(shared & ~facets[j] == 0 for j in members if j != i):
                has_leaf = True
                break
        if not has_leaf:
            return subset
    return None


def is_forest(complex: SimplicialComplex, max_facets: Optional[int] = None) -> ForestVerdict:
    masks = [facet.mask for facet in complex.facets]
    order, stuck = _eliminate_leaves(masks)
    if stuck:
        logger.debug("leaf elimination stuck with {} facets left", len(stuck))
        return ForestVerdict(False, tuple(sorted(SquareFreeMonomial(mask) for mask in stuck)))

    if max_facets is not None and len(masks) > max_facets:
        raise GuardException("the forest check", len(masks), max_facets)
    logger.debug("checking all {} subcollections", 2 ** len(masks))
    leafless = _leafless_subcollection(masks)
    if leafless is not None:
        witness = tuple(sorted(SquareFreeMonomial(masks[i]) for i in bits(leafless)))
        return ForestVerdict(False, witness)
    return ForestVerdict(True, tuple(SquareFreeMonomial(mask) for mask in order))


def is_tree(complex: SimplicialComplex, max_facets: Optional[int] = None) -> bool:
    if complex.is_void:
        return False
    return is_forest(complex, max_facets).is_forest and is_connected(complex)


def localize(ideal: MonomialIdeal, prime: SquareFreeMonomial) -> MonomialIdeal:
    """I_p for p generated by the variables of ``prime``.

    Variables outside the prime become units, so they are deleted from every
    generator and the ambient shrinks to the prime's variables.
    At the empty prime a nonzero ideal becomes the unit ideal and (0) stays (0).
    """
    ambient = ideal.ambient
    if not ambient.contains(prime):
        raise_precondition_error("the prime uses variables outside the ambient")
    restricted = ambient.restrict(prime)
    monomials = [
        SquareFreeMonomial(compress(generator.mask & prime.mask, prime.mask))
        for generator in ideal.generators
    ]
    return MonomialIdeal(restricted, minimalize(monomials))


def localize_away(ideal: MonomialIdeal, index: int) -> MonomialIdeal:
    """Localization at the prime of every variable except ``index``."""
    if not 0 <= index < ideal.ambient.n:
        raise_precondition_error("variable index {} out of range".format(index))
    return localize(ideal, SquareFreeMonomial(ideal.ambient.full.mask & ~(1 << index)))


def good_leaf_with_free_vertex(
    complex: SimplicialComplex,
) -> Optional[Tuple[SquareFreeMonomial, int]]:
    for row in leaf_table(complex):
        if row.is_leaf and row.facet.degree >= 2 and not row.free_vertices.is_one:
            return row.facet, row.free_vertices.indices[0]
    return None
