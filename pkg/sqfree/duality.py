"""Covers, cover complexes and the Stanley-Reisner side of the dictionary.

    Δ  --facet ideal-->  I = F(Δ)
    Δ_M (minimal covers) --facet ideal--> I^∨
    Δ_N (nonfaces of I): facets are the complements of the facets of Δ_M
"""
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from itertools import combinations
from typing import Iterable, List, Optional, Sequence, Set, Tuple, Union

from sqfree.core import (
    MonomialIdeal,
    SimplicialComplex,
    SquareFreeMonomial,
    VariableSet,
    bits,
    popcount,
)
from sqfree.events import ToolkitLogger
from sqfree.exceptions import raise_precondition_error, raise_validation_error

logger = ToolkitLogger("Duality")


class CoverScope(str, Enum):
    Vertex = "vertex"
    Variable = "variable"


def _has_private_edges(chosen: int, edges: Sequence[int]) -> bool:
    for vertex in bits(chosen):
        bit = 1 << vertex
        if not any(edge & chosen == bit for edge in edges):
            return False
    return True


def minimal_transversals(edges: Iterable[int]) -> List[int]:
    """All inclusion-minimal sets meeting every edge, as sorted bit masks.

    No edges: the empty set is the only transversal. An empty edge: none.
    """
    edges = sorted(set(edges))
    if not edges:
        return [0]
    if 0 in edges:
        return []

    found: Set[int] = set()

    def extend(chosen: int, forbidden: int) -> None:
        uncovered = [edge for edge in edges if not edge & chosen]
        if not uncovered:
            found.add(chosen)
            return
        edge = min(uncovered, key=lambda e: (popcount(e & ~forbidden), e))
        for vertex in bits(edge & ~forbidden):
            bit = 1 << vertex
            candidate = chosen | bit
            if _has_private_edges(candidate, edges):
                extend(candidate, forbidden)
            forbidden |= bit

    extend(0, 0)
    return sorted(found, key=lambda mask: tuple(bits(mask)))


@dataclass(frozen=True)
class CoverComplex:
    """Δ_M: the complex of minimal vertex covers of ``source``."""

    source: SimplicialComplex
    complex: SimplicialComplex

    @property
    def facets(self) -> Tuple[SquareFreeMonomial, ...]:
        return self.complex.facets

    @property
    def covering_number(self) -> Optional[int]:
        if not self.complex.facets:
            return None
        return min(facet.degree for facet in self.complex.facets)

    @property
    def is_pure(self) -> bool:
        return len({facet.degree for facet in self.complex.facets}) <= 1


def is_variable_cover(complex: SimplicialComplex, cover: SquareFreeMonomial) -> bool:
    if not complex.ambient.contains(cover):
        return False
    return all(facet.mask & cover.mask for facet in complex.facets)


def is_vertex_cover(complex: SimplicialComplex, cover: SquareFreeMonomial) -> bool:
    return cover.divides(complex.vertices) and is_variable_cover(complex, cover)


def minimal_covers(
    complex: SimplicialComplex, scope: Union[CoverScope, str] = CoverScope.Vertex
) -> CoverComplex:
    try:
        CoverScope(scope)
    except ValueError:
        raise_validation_error("unknown cover scope {!r}".format(scope))
    # minimal variable covers never use a non-vertex, so both scopes agree
    masks = minimal_transversals(facet.mask for facet in complex.facets)
    covers = tuple(SquareFreeMonomial(mask) for mask in masks)
    logger.debug(
        "{} facets over {} variables: {} minimal covers",
        len(complex.facets), complex.ambient.n, len(covers),
    )
    return CoverComplex(complex, SimplicialComplex(complex.ambient, covers))


def cover_complex(complex: SimplicialComplex) -> CoverComplex:
    return minimal_covers(complex)


def covering_number(complex: SimplicialComplex) -> int:
    alpha = cover_complex(complex).covering_number
    if alpha is None:
        raise_precondition_error("a complex whose only face is the empty set has no cover")
    return alpha


def is_unmixed(complex: SimplicialComplex) -> bool:
    return cover_complex(complex).is_pure


def complement_complex(complex: SimplicialComplex) -> SimplicialComplex:
    ambient = complex.ambient
    return SimplicialComplex.create(
        ambient, (ambient.complement(facet) for facet in complex.facets)
    )


def dual_ideal(ideal: MonomialIdeal) -> MonomialIdeal:
    """I^∨, generated by the minimal covers of the generators."""
    masks = minimal_transversals(generator.mask for generator in ideal.generators)
    return MonomialIdeal(ideal.ambient, tuple(SquareFreeMonomial(mask) for mask in masks))


@dataclass(frozen=True)
class NonfaceComplexView:
    """Δ_N for ``ideal``: S is a face iff its monomial is not in the ideal.

    Faces are never listed unless asked for; the facets come from the minimal
    covers of the generators.
    """

    ideal: MonomialIdeal

    @property
    def ambient(self) -> VariableSet:
        return self.ideal.ambient

    @cached_property
    def facets(self) -> Tuple[SquareFreeMonomial, ...]:
        # (0) has the single cover 1, so its view is the full simplex
        covers = dual_ideal(self.ideal).generators
        return tuple(sorted(self.ambient.complement(cover) for cover in covers))

    def is_face(self, face: SquareFreeMonomial) -> bool:
        return self.ambient.contains(face) and not self.ideal.contains(face)

    @property
    def dimension(self) -> int:
        if not self.facets:
            return -1
        return max(facet.degree for facet in self.facets) - 1

    def skeleton_facets(self, i: int) -> Tuple[SquareFreeMonomial, ...]:
        """Every face of dimension exactly ``i``."""
        found: Set[int] = set()
        for facet in self.facets:
            if facet.degree < i + 1 or i < -1:
                continue
            for chosen in combinations(facet.indices, i + 1):
                found.add(SquareFreeMonomial.from_indices(chosen).mask)
        return tuple(sorted(SquareFreeMonomial(mask) for mask in found))

    def faces(self) -> Tuple[SquareFreeMonomial, ...]:
        found: Set[int] = set()
        for facet in self.facets:
            subset = facet.mask
            while True:
                found.add(subset)
                if subset == 0:
                    break
                subset = (subset - 1) & facet.mask
        return tuple(sorted(SquareFreeMonomial(mask) for mask in found))

    def as_complex(self) -> SimplicialComplex:
        return SimplicialComplex(self.ambient, self.facets)


def nonface_complex(ideal: MonomialIdeal) -> NonfaceComplexView:
    return NonfaceComplexView(ideal)


def is_face(view: NonfaceComplexView, face: SquareFreeMonomial) -> bool:
    return view.is_face(face)


def alexander_dual(view: NonfaceComplexView) -> NonfaceComplexView:
    return NonfaceComplexView(dual_ideal(view.ideal))


def component(ideal: MonomialIdeal, k: int) -> MonomialIdeal:
    """I_[k]: every square-free monomial of degree ``k`` lying in ``ideal``."""
    if k < 0:
        raise_precondition_error("component degree must be nonnegative, got {}".format(k))
    ambient = ideal.ambient
    found: Set[int] = set()
    for generator in ideal.generators:
        missing = k - generator.degree
        if missing < 0:
            continue
        free = ambient.complement(generator).indices
        for extra in combinations(free, missing):
            found.add(generator.mask | SquareFreeMonomial.from_indices(extra).mask)
    return MonomialIdeal(ambient, tuple(sorted(SquareFreeMonomial(mask) for mask in found)))


def variable_covers_of_size(complex: SimplicialComplex, k: int) -> List[SquareFreeMonomial]:
    covers = []
    for chosen in combinations(range(complex.ambient.n), k):
        candidate = SquareFreeMonomial.from_indices(chosen)
        if is_variable_cover(complex, candidate):
            covers.append(candidate)
    return sorted(covers)
