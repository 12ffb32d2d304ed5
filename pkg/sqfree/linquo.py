"""Linear quotients, componentwise linearity and shellings of Δ_N.

An ordering M_1, ..., M_q of the generators has linear quotients when every
colon ideal (M_1, ..., M_{i-1}) : M_i is generated by variables.
"""
from dataclasses import dataclass
from functools import lru_cache
from typing import FrozenSet, List, Optional, Sequence, Set, Tuple

from sqfree.core import (
    MonomialIdeal,
    SimplicialComplex,
    SquareFreeMonomial,
    VariableSet,
    bits,
    compress,
    expand,
    maximalize,
    popcount,
)
from sqfree.duality import component, dual_ideal, variable_covers_of_size
from sqfree.events import ToolkitLogger
from sqfree.exceptions import (
    SearchBudgetException,
    raise_internal_error,
    raise_precondition_error,
)
from sqfree.homalg import RATIONALS, FieldSpec, has_linear_resolution
from sqfree.trees import (
    free_vertices,
    good_leaf_with_free_vertex,
    has_leaf_order,
    is_forest,
    is_leaf,
    localize_away,
    remove_facet,
)

logger = ToolkitLogger("Linquo")


def colon(ideal: MonomialIdeal, monomial: SquareFreeMonomial) -> MonomialIdeal:
    return MonomialIdeal.create(
        ideal.ambient, (generator.quotient(monomial) for generator in ideal.generators)
    )


@dataclass(frozen=True)
class LinearStep:
    is_linear: bool
    variables: SquareFreeMonomial

    def __bool__(self) -> bool:
        return self.is_linear


def is_linear_step(prefix: MonomialIdeal, monomial: SquareFreeMonomial) -> LinearStep:
    if prefix.is_unit:
        return LinearStep(True, SquareFreeMonomial(0))
    quotient = colon(prefix, monomial)
    variables = 0
    for generator in quotient.generators:
        variables |= generator.mask
    linear = all(generator.degree == 1 for generator in quotient.generators)
    return LinearStep(linear, SquareFreeMonomial(variables if linear else 0))


def _colon_variables(prefix: Sequence[int], monomial: int) -> Optional[int]:
    """Bit form of is_linear_step for antichains: the colon is linear iff every
    quotient is divisible by one of the degree-one quotients.
    """
    quotients = [generator & ~monomial for generator in prefix]
    variables = 0
    for quotient in quotients:
        if quotient & (quotient - 1) == 0:
            variables |= quotient
    if all(quotient & variables for quotient in quotients):
        return variables
    return None


@dataclass(frozen=True)
class QuotientOrder:
    """A replayable linear-quotient order; ``colon_variables[i]`` belongs to
    ``order[i + 1]``.
    """

    ambient: VariableSet
    order: Tuple[SquareFreeMonomial, ...]
    colon_variables: Tuple[SquareFreeMonomial, ...]

    @classmethod
    def from_order(
        cls, ambient: VariableSet, order: Sequence[SquareFreeMonomial]
    ) -> Optional["QuotientOrder"]:
        masks = [monomial.mask for monomial in order]
        recorded = []
        for position in range(1, len(masks)):
            variables = _colon_variables(masks[:position], masks[position])
            if variables is None:
                return None
            recorded.append(SquareFreeMonomial(variables))
        return cls(ambient, tuple(order), tuple(recorded))


def replay_quotient_order(ideal: MonomialIdeal, certificate: QuotientOrder) -> bool:
    order = certificate.order
    if len(order) != len(ideal.generators) or set(order) != set(ideal.generators):
        return False
    if len(certificate.colon_variables) != max(len(order) - 1, 0):
        return False
    for position in range(1, len(order)):
        prefix = MonomialIdeal.create(ideal.ambient, order[:position])
        step = is_linear_step(prefix, order[position])
        if not step or step.variables != certificate.colon_variables[position - 1]:
            return False
    return True


def find_linear_quotient_order(
    ideal: MonomialIdeal, budget: Optional[int] = None
) -> Optional[QuotientOrder]:
    """Depth-first search over orderings.

    Whether a generator may come next depends only on the set already placed,
    so failed sets are remembered. Candidates are tried by degree, then
    canonically, which keeps the certificate deterministic.
    """
    ambient = ideal.ambient
    if ideal.is_zero:
        return QuotientOrder(ambient, (), ())
    generators = sorted(ideal.generators, key=lambda m: (m.degree, m.sort_key))
    masks = [generator.mask for generator in generators]
    q = len(masks)
    complete = (1 << q) - 1
    failed: Set[int] = set()
    order: List[int] = []
    nodes = 0

    def search(placed: int) -> bool:
        nonlocal nodes
        if placed == complete:
            return True
        if placed in failed:
            return False
        nodes += 1
        if budget is not None and nodes > budget:
            raise SearchBudgetException("the linear quotient search", budget)
        prefix = [masks[i] for i in order]
        for index in range(q):
            if placed >> index & 1:
                continue
            if order and _colon_variables(prefix, masks[index]) is None:
                continue
            order.append(index)
            if search(placed | 1 << index):
                return True
            order.pop()
        failed.add(placed)
        return False

    found = search(0)
    logger.debug("quotient search over {} generators: {} nodes", q, nodes)
    if not found:
        return None
    return QuotientOrder.from_order(ambient, [generators[i] for i in order])


@lru_cache(maxsize=4096)
def _inductive_order(facets: FrozenSet[int], variables: int, k: int) -> Tuple[int, ...]:
    """Covers of size k (inside ``variables``) of a forest, in an order with
    linear quotients.
    """
    if k < 0 or k > popcount(variables):
        return ()
    if 0 in facets:
        return ()
    vertices = 0
    for facet in facets:
        vertices |= facet
    outside = variables & ~vertices
    if outside:
        x = outside & -outside
        rest = variables & ~x
        return _inductive_order(facets, rest, k) + tuple(
            cover | x for cover in _inductive_order(facets, rest, k - 1)
        )
    if not facets:
        return (0,) if k == 0 else ()
    if all(facet & (facet - 1) == 0 for facet in facets):
        # isolated vertices: the only cover is every variable
        return (variables,) if k == popcount(variables) else ()

    ambient = VariableSet(tuple("v{}".format(i) for i in bits(variables)))
    complex = SimplicialComplex.create(
        ambient, (SquareFreeMonomial(compress(facet, variables)) for facet in facets)
    )
    chosen = good_leaf_with_free_vertex(complex)
    if chosen is None:
        raise_precondition_error("the constructive order needs a forest")
    leaf, position = chosen
    leaf_mask = expand(leaf.mask, variables)
    x = expand(1 << position, variables)
    rest = variables & ~x
    localized = frozenset(_minimal_masks(facet & ~x for facet in facets))
    removed = frozenset(facet for facet in facets if facet != leaf_mask)
    avoiding = _inductive_order(localized, rest, k)
    through = _inductive_order(removed, rest, k - 1)
    return avoiding + tuple(cover | x for cover in through)


def _minimal_masks(masks) -> List[int]:
    unique = sorted(set(masks), key=popcount)
    kept: List[int] = []
    for mask in unique:
        if not any(smaller & ~mask == 0 for smaller in kept):
            kept.append(mask)
    return kept


def inductive_quotient_order(complex: SimplicialComplex, k: int) -> QuotientOrder:
    """The order built leaf by leaf for the degree-k component of F(Δ)^∨."""
    if not is_forest(complex):
        raise_precondition_error("the constructive quotient order needs a forest")
    ambient = complex.ambient
    facets = frozenset(facet.mask for facet in complex.facets)
    masks = _inductive_order(facets, ambient.full.mask, k)
    certificate = QuotientOrder.from_order(ambient, [SquareFreeMonomial(m) for m in masks])
    if certificate is None:
        raise_internal_error(
            "the constructive order for degree {} is not a linear quotient order".format(k)
        )
    return certificate


def leaf_decomposition(
    complex: SimplicialComplex, leaf: SquareFreeMonomial, index: int, k: int
) -> Tuple[Tuple[SquareFreeMonomial, ...], Tuple[SquareFreeMonomial, ...]]:
    """Split the degree-k covers into A's (avoiding x) and B's, so that
    I^∨_[k] = (A's) + x * (B's).

    The A's come from the localization at the prime of every variable but x,
    the B's are the (k-1)-covers of Δ with the leaf removed, over V without x.
    """
    if not is_leaf(complex, leaf):
        raise_precondition_error("{} is not a leaf".format(complex.ambient.format_monomial(leaf)))
    if index not in free_vertices(complex, leaf):
        raise_precondition_error("variable {} is not a free vertex of the leaf".format(index))
    ambient = complex.ambient
    rest = ambient.full.mask & ~(1 << index)
    restricted = ambient.restrict(SquareFreeMonomial(rest))

    localized = localize_away(MonomialIdeal(ambient, complex.facets), index)
    avoiding = tuple(
        sorted(
            SquareFreeMonomial(expand(cover.mask, rest))
            for cover in component(dual_ideal(localized), k).generators
        )
    )

    removed = remove_facet(complex, leaf)
    projected = SimplicialComplex.create(
        restricted, (SquareFreeMonomial(compress(facet.mask, rest)) for facet in removed.facets)
    )
    through = tuple(
        sorted(
            SquareFreeMonomial(expand(cover.mask, rest))
            for cover in variable_covers_of_size(projected, k - 1)
        )
    ) if k >= 1 else ()
    return avoiding, through


@dataclass(frozen=True)
class ComponentVerdict:
    k: int
    ideal: MonomialIdeal
    certificate: Optional[QuotientOrder]
    linear_resolution: Optional[bool] = None
    strategy: str = "search"

    @property
    def is_linear(self) -> bool:
        return self.certificate is not None or bool(self.linear_resolution)


@dataclass(frozen=True)
class ComponentwiseReport:
    field: FieldSpec
    components: Tuple[ComponentVerdict, ...]

    @property
    def certified(self) -> bool:
        return all(verdict.certificate is not None for verdict in self.components)

    @property
    def componentwise_linear(self) -> bool:
        return all(verdict.is_linear for verdict in self.components)


def _forest_source(ideal: MonomialIdeal, max_facets: int) -> Optional[SimplicialComplex]:
    """Δ with ideal == F(Δ)^∨, when that Δ is a (small) forest."""
    if ideal.is_zero or ideal.is_unit:
        return None
    source = SimplicialComplex(ideal.ambient, dual_ideal(ideal).generators)
    if len(source.facets) > max_facets or has_leaf_order(source) is None:
        return None
    return source if is_forest(source) else None


def _certify(
    part: MonomialIdeal,
    k: int,
    source: Optional[SimplicialComplex],
    budget: Optional[int],
) -> Tuple[Optional[QuotientOrder], str]:
    if source is not None:
        certificate = inductive_quotient_order(source, k)
        if not replay_quotient_order(part, certificate):
            raise_internal_error("constructive order for degree {} failed its replay".format(k))
        return certificate, "forest"
    try:
        return find_linear_quotient_order(part, budget), "search"
    except SearchBudgetException:
        logger.info("search budget exhausted on degree {}; falling back to Betti numbers", k)
        return None, "budget"


def componentwise_linear_via_quotients(
    ideal: MonomialIdeal,
    field: FieldSpec = RATIONALS,
    budget: Optional[int] = None,
    degrees: Optional[Sequence[int]] = None,
    max_facets: int = 15,
) -> ComponentwiseReport:
    """Certify each nonzero square-free component by linear quotients.

    When the ideal is the dual of a forest's facet ideal the constructive
    order is used; otherwise an exhaustive search. A component without a
    certificate is decided exactly from its Betti table.
    """
    if ideal.is_zero:
        return ComponentwiseReport(field, ())
    source = _forest_source(ideal, max_facets)
    logger.debug("componentwise check: {}", "forest dual" if source else "general ideal")
    if degrees is None:
        degrees = range(ideal.min_degree, ideal.ambient.n + 1)
    verdicts = []
    for k in degrees:
        part = component(ideal, k)
        if part.is_zero:
            continue
        certificate, strategy = _certify(part, k, source, budget)
        linear = None if certificate is not None else has_linear_resolution(part, field)
        verdicts.append(ComponentVerdict(k, part, certificate, linear, strategy))
    return ComponentwiseReport(field, tuple(verdicts))


def is_shelling_order(facets: Sequence[SquareFreeMonomial]) -> bool:
    """Each facet meets the complex of its predecessors in a pure complex of
    codimension one.
    """
    for j in range(1, len(facets)):
        current = facets[j]
        meets = maximalize(facets[i].gcd(current) for i in range(j))
        if any(meet.degree != current.degree - 1 for meet in meets):
            return False
    return True


@dataclass(frozen=True)
class ShellingOrder:
    ambient: VariableSet
    facets: Tuple[SquareFreeMonomial, ...]
    quotient_order: QuotientOrder


def shelling_from_quotients(ideal: MonomialIdeal, budget: Optional[int] = None) -> ShellingOrder:
    """A shelling of Δ_N read off a linear quotient order of I^∨."""
    if ideal.is_unit:
        raise_precondition_error("the unit ideal has no nonface complex to shell")
    ambient = ideal.ambient
    dual = dual_ideal(ideal)
    if not dual.is_equigenerated:
        raise_precondition_error(
            "not Cohen-Macaulay: Δ_N is not pure, so no shelling is certified"
        )
    source = _forest_source(dual, 15)
    if source is not None:
        certificate = inductive_quotient_order(source, dual.degrees[0])
    else:
        certificate = find_linear_quotient_order(dual, budget)
    if certificate is None:
        raise_precondition_error("the dual ideal has no linear quotient order")
    facets = tuple(ambient.complement(generator) for generator in certificate.order)
    if not is_shelling_order(facets):
        raise_internal_error("quotient order did not transport to a shelling")
    return ShellingOrder(ambient, facets, certificate)

