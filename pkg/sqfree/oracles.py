"""Exhaustive reference computations.

Each function here recomputes something the fast modules compute, straight
from the definition and with no shared code path beyond the core types. They
back ``--oracle`` runs and the test suites, and refuse inputs beyond desk
scale.
"""
from collections import defaultdict
from itertools import combinations
from typing import Dict, List, Tuple

from sqfree.core import MonomialIdeal, SimplicialComplex, SquareFreeMonomial, maximalize
from sqfree.exceptions import GuardException
from sqfree.homalg import RATIONALS, BettiTable, FieldSpec, matrix_rank

MAX_VARIABLES = 12
MAX_FACETS = 12
MAX_TAYLOR_GENERATORS = 10


def _all_subsets(n: int) -> List[SquareFreeMonomial]:
    return [SquareFreeMonomial(mask) for mask in range(1 << n)]


def _guard_variables(n: int, what: str):
    if n > MAX_VARIABLES:
        raise GuardException(what, n, MAX_VARIABLES)


def brute_force_minimal_covers(complex: SimplicialComplex) -> Tuple[SquareFreeMonomial, ...]:
    _guard_variables(complex.ambient.n, "the brute-force cover scan")
    covers = [
        subset
        for subset in _all_subsets(complex.ambient.n)
        if all(subset.mask & facet.mask for facet in complex.facets)
    ]
    minimal = [
        cover
        for cover in covers
        if not any(other != cover and other.divides(cover) for other in covers)
    ]
    return tuple(sorted(minimal))


def brute_force_nonface_faces(ideal: MonomialIdeal) -> Tuple[SquareFreeMonomial, ...]:
    _guard_variables(ideal.ambient.n, "the brute-force face scan")
    return tuple(
        sorted(
            subset
            for subset in _all_subsets(ideal.ambient.n)
            if not any(generator.divides(subset) for generator in ideal.generators)
        )
    )


def brute_force_alexander_dual_faces(ideal: MonomialIdeal) -> Tuple[SquareFreeMonomial, ...]:
    """Complements of the nonfaces of Δ_N."""
    ambient = ideal.ambient
    _guard_variables(ambient.n, "the brute-force face scan")
    return tuple(
        sorted(
            ambient.complement(subset)
            for subset in _all_subsets(ambient.n)
            if any(generator.divides(subset) for generator in ideal.generators)
        )
    )


def brute_force_facets(faces) -> Tuple[SquareFreeMonomial, ...]:
    return maximalize(faces)


def _has_leaf(facets: List[SquareFreeMonomial]) -> bool:
    if len(facets) == 1:
        return True
    for facet in facets:
        others = [other for other in facets if other != facet]
        for candidate in others:
            if all(
                index in candidate
                for index in facet.indices
                if any(index in other for other in others)
            ):
                return True
    return False


def brute_force_is_forest(complex: SimplicialComplex) -> bool:
    facets = list(complex.facets)
    if len(facets) > MAX_FACETS:
        raise GuardException("the brute-force forest check", len(facets), MAX_FACETS)
    for size in range(1, len(facets) + 1):
        for chosen in combinations(facets, size):
            if not _has_leaf(list(chosen)):
                return False
    return True


def taylor_betti_table(ideal: MonomialIdeal, field: FieldSpec = RATIONALS) -> BettiTable:
    """Graded Betti numbers of R/I from the Taylor complex tensored with the field.

    In multidegree m the complex has a basis of generator subsets S with
    lcm(S) = m, and the differential keeps only the faces S - {g} whose lcm
    is still m.
    """
    generators = [generator.mask for generator in ideal.generators]
    if len(generators) > MAX_TAYLOR_GENERATORS:
        raise GuardException(
            "the Taylor complex", len(generators), MAX_TAYLOR_GENERATORS
        )
    if ideal.is_unit:
        return BettiTable(field)

    strands: Dict[int, Dict[int, List[int]]] = defaultdict(lambda: defaultdict(list))
    q = len(generators)
    lcms = [0] * (1 << q)
    for subset in range(1, 1 << q):
        low = subset & -subset
        lcms[subset] = lcms[subset & (subset - 1)] | generators[low.bit_length() - 1]
    for subset in range(1 << q):
        strands[lcms[subset]][bin(subset).count("1")].append(subset)

    table = BettiTable(field)
    for multidegree, by_size in strands.items():
        top = max(by_size)
        ranks = [0] * (top + 2)
        for size in range(1, top + 1):
            higher, lower = by_size.get(size, []), by_size.get(size - 1, [])
            position = {subset: row for row, subset in enumerate(lower)}
            entries: Dict[int, Dict[int, int]] = {}
            for column, subset in enumerate(higher):
                members = [i for i in range(q) if subset >> i & 1]
                for sign_index, member in enumerate(members):
                    face = subset & ~(1 << member)
                    if face in position:
                        entries.setdefault(position[face], {})[column] = (
                            -1 if sign_index % 2 else 1
                        )
            ranks[size] = matrix_rank(entries, (len(lower), len(higher)), field)
        degree = bin(multidegree).count("1")
        for size in range(top + 1):
            homology = len(by_size.get(size, [])) - ranks[size] - ranks[size + 1]
            table.add(size, degree, homology)
    return table
