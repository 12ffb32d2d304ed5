"""Exact homological algebra over Q or GF(p).

Everything here reduces to ranks of boundary matrices of small simplicial
complexes. Ranks are taken with sympy's DomainMatrix in its sparse format,
so arithmetic is exact in either field.
"""
import dataclasses
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import agate
from sympy import isprime
from sympy.polys.domains import GF, QQ
from sympy.polys.matrices import DomainMatrix

from sqfree.core import MonomialIdeal, SimplicialComplex, SquareFreeMonomial, bits, popcount
from sqfree.duality import component, dual_ideal, nonface_complex
from sqfree.events import ToolkitLogger
from sqfree.exceptions import (
    raise_internal_error,
    raise_precondition_error,
    raise_validation_error,
)

logger = ToolkitLogger("Homalg")


@dataclass(frozen=True)
class FieldSpec:
    """The coefficient field: ``characteristic == 0`` means Q, else GF(p)."""

    characteristic: int = 0

    def __post_init__(self):
        if self.characteristic != 0 and not isprime(self.characteristic):
            raise_validation_error(
                "GF({}) is not a field: {} is not prime".format(
                    self.characteristic, self.characteristic
                )
            )

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        spec = text.strip().lower()
        if spec in ("q", "qq"):
            return cls(0)
        if spec.startswith("fp:"):
            digits = spec[3:]
            if not digits.isdigit():
                raise_validation_error("invalid field {!r}; expected fp:<prime>".format(text))
            return cls(int(digits))
        raise_validation_error("invalid field {!r}; expected q or fp:<prime>".format(text))

    @property
    def domain(self):
        return QQ if self.characteristic == 0 else GF(self.characteristic)

    @property
    def spec(self) -> str:
        return "q" if self.characteristic == 0 else "fp:{}".format(self.characteristic)

    def __str__(self) -> str:
        return "QQ" if self.characteristic == 0 else "GF({})".format(self.characteristic)


RATIONALS = FieldSpec(0)


def matrix_rank(
    entries: Mapping[int, Mapping[int, int]], shape: Tuple[int, int], field: FieldSpec
) -> int:
    """Rank of a sparse integer matrix ``{row: {col: value}}`` over ``field``."""
    if not entries or 0 in shape:
        return 0
    domain = field.domain
    rows = {}
    for i, row in entries.items():
        # reduction mod p can zero an entry; the sparse format must not store it
        converted = {j: domain(value) for j, value in row.items()}
        kept = {j: value for j, value in converted.items() if not domain.is_zero(value)}
        if kept:
            rows[i] = kept
    if not rows:
        return 0
    return DomainMatrix(rows, shape, domain).rank()


@dataclass(frozen=True)
class HomologyProfile:
    """Reduced Betti numbers b̃_i for i = -1 .. dimension."""

    dimension: int
    betti: Tuple[int, ...]

    def __getitem__(self, i: int) -> int:
        position = i + 1
        if 0 <= position < len(self.betti):
            return self.betti[position]
        return 0

    @property
    def is_acyclic(self) -> bool:
        return not any(self.betti)

    @property
    def euler_characteristic(self) -> int:
        return sum((-1) ** (position + 1) * value for position, value in enumerate(self.betti))

    def nonzero(self) -> Dict[int, int]:
        return {position - 1: value for position, value in enumerate(self.betti) if value}


def faces_by_size(complex: SimplicialComplex) -> Dict[int, List[int]]:
    found = set()
    for facet in complex.facets:
        subset = facet.mask
        while True:
            found.add(subset)
            if subset == 0:
                break
            subset = (subset - 1) & facet.mask
    grouped: Dict[int, List[int]] = {}
    for face in sorted(found, key=lambda mask: tuple(bits(mask))):
        grouped.setdefault(popcount(face), []).append(face)
    return grouped


def reduced_euler_characteristic(complex: SimplicialComplex) -> int:
    return sum((-1) ** (size + 1) * len(faces) for size, faces in faces_by_size(complex).items())


def _boundary(higher: Sequence[int], lower: Sequence[int]) -> Dict[int, Dict[int, int]]:
    position = {face: row for row, face in enumerate(lower)}
    entries: Dict[int, Dict[int, int]] = {}
    for column, face in enumerate(higher):
        for sign_index, vertex in enumerate(bits(face)):
            row = position[face & ~(1 << vertex)]
            entries.setdefault(row, {})[column] = -1 if sign_index % 2 else 1
    return entries


def reduced_homology(complex: SimplicialComplex, field: FieldSpec = RATIONALS) -> HomologyProfile:
    if complex.is_void:
        return HomologyProfile(-1, (0,))
    top = max(facet.degree for facet in complex.facets)
    dimension = top - 1
    common = complex.facets[0].mask
    for facet in complex.facets:
        common &= facet.mask
    if common:
        # a cone over any common vertex
        return HomologyProfile(dimension, (0,) * (top + 1))

    faces = faces_by_size(complex)
    ranks = [0] * (top + 2)
    for size in range(1, top + 1):
        higher, lower = faces.get(size, []), faces.get(size - 1, [])
        ranks[size] = matrix_rank(
            _boundary(higher, lower), (len(lower), len(higher)), field
        )
    betti = tuple(
        len(faces.get(size, [])) - ranks[size] - ranks[size + 1] for size in range(top + 1)
    )
    return HomologyProfile(dimension, betti)


def link(complex: SimplicialComplex, face: SquareFreeMonomial) -> SimplicialComplex:
    return SimplicialComplex.create(
        complex.ambient,
        (
            SquareFreeMonomial(facet.mask & ~face.mask)
            for facet in complex.facets
            if face.divides(facet)
        ),
    )


def restriction(complex: SimplicialComplex, subset: SquareFreeMonomial) -> SimplicialComplex:
    """The induced subcomplex on ``subset``."""
    return SimplicialComplex.create(
        complex.ambient, (SquareFreeMonomial(facet.mask & subset.mask) for facet in complex.facets)
    )


def _require_proper(ideal: MonomialIdeal, what: str):
    if ideal.is_unit:
        raise_precondition_error("{} is undefined for the unit ideal".format(what))


def krull_dimension(ideal: MonomialIdeal) -> int:
    _require_proper(ideal, "the Krull dimension")
    dual = dual_ideal(ideal)
    alpha = min(generator.degree for generator in dual.generators)
    by_covers = ideal.ambient.n - alpha
    by_faces = 1 + nonface_complex(ideal).dimension
    if by_covers != by_faces:
        raise_internal_error(
            "Krull dimension disagrees: n - alpha = {}, 1 + dim = {}".format(by_covers, by_faces)
        )
    return by_covers


@dataclass(frozen=True)
class ReisnerObstruction:
    face: SquareFreeMonomial
    degree: int
    profile: HomologyProfile


def reisner_obstruction(
    ideal: MonomialIdeal, field: FieldSpec = RATIONALS
) -> Optional[ReisnerObstruction]:
    """The first face of Δ_N whose link has homology below its dimension.

    Faces are visited largest first, so small links are tried before the
    expensive ones.
    """
    _require_proper(ideal, "Cohen-Macaulayness")
    complex = nonface_complex(ideal).as_complex()
    dimension = max(facet.degree for facet in complex.facets) - 1
    faces = [
        face
        for size, group in faces_by_size(complex).items()
        for face in group
        # bigger faces have links of dimension <= 0, which never obstruct
        if size < dimension
    ]
    faces.sort(key=lambda mask: (-popcount(mask), tuple(bits(mask))))
    for face in faces:
        linked = link(complex, SquareFreeMonomial(face))
        profile = reduced_homology(linked, field)
        for degree in range(-1, profile.dimension):
            if profile[degree]:
                return ReisnerObstruction(SquareFreeMonomial(face), degree, profile)
    return None


def is_cohen_macaulay(ideal: MonomialIdeal, field: FieldSpec = RATIONALS) -> bool:
    return reisner_obstruction(ideal, field) is None


def pure_skeleton_ideal(ideal: MonomialIdeal, i: int) -> MonomialIdeal:
    """The nonface ideal of the complex whose facets are all i-faces of Δ_N."""
    view = nonface_complex(ideal)
    if not -1 <= i <= view.dimension:
        raise_precondition_error(
            "skeleton dimension {} outside -1..{}".format(i, view.dimension)
        )
    skeleton = SimplicialComplex(ideal.ambient, view.skeleton_facets(i))
    ambient = ideal.ambient
    # N(Γ) has Γ as its nonface view, so its dual is generated by the facet complements
    complements = MonomialIdeal.create(
        ambient, (ambient.complement(facet) for facet in skeleton.facets)
    )
    return dual_ideal(complements)


@dataclass(frozen=True)
class SkeletonRow:
    i: int
    ideal: MonomialIdeal
    cohen_macaulay: bool
    obstruction: Optional[ReisnerObstruction] = None


@dataclass(frozen=True)
class SequentialCMReport:
    field: FieldSpec
    rows: Tuple[SkeletonRow, ...]

    @property
    def is_sequentially_cm(self) -> bool:
        return all(row.cohen_macaulay for row in self.rows)

    def __bool__(self) -> bool:
        return self.is_sequentially_cm


def sequential_cm_report(
    ideal: MonomialIdeal, field: FieldSpec = RATIONALS
) -> SequentialCMReport:
    _require_proper(ideal, "sequential Cohen-Macaulayness")
    dimension = nonface_complex(ideal).dimension
    rows = []
    for i in range(-1, dimension + 1):
        skeleton = pure_skeleton_ideal(ideal, i)
        obstruction = reisner_obstruction(skeleton, field)
        rows.append(SkeletonRow(i, skeleton, obstruction is None, obstruction))
    logger.debug("checked {} pure skeleta over {}", len(rows), field)
    return SequentialCMReport(field, tuple(rows))


def is_sequentially_cm(ideal: MonomialIdeal, field: FieldSpec = RATIONALS) -> bool:
    return sequential_cm_report(ideal, field).is_sequentially_cm


@dataclass
class BettiTable:
    """Graded Betti numbers of R/I, keyed by (homological degree, degree)."""

    field: FieldSpec
    entries: Dict[Tuple[int, int], int] = dataclasses.field(default_factory=dict)

    def __getitem__(self, key: Tuple[int, int]) -> int:
        return self.entries.get(key, 0)

    def add(self, i: int, j: int, value: int):
        if value:
            self.entries[(i, j)] = self.entries.get((i, j), 0) + value

    @property
    def projective_dimension(self) -> int:
        return max((i for i, _ in self.entries), default=0)

    @property
    def regularity(self) -> int:
        return max((j - i for i, j in self.entries), default=0)

    def is_linear(self, degree: int) -> bool:
        return all(j == i + degree - 1 for i, j in self.entries if i >= 1)

    def to_json(self) -> Dict[str, int]:
        return {"{},{}".format(i, j): self.entries[(i, j)] for i, j in sorted(self.entries)}

    def to_agate(self) -> agate.Table:
        """Strands as rows and homological degrees as columns; zeros print as ``.``"""
        columns = range(self.projective_dimension + 1)
        rows = []
        for strand in range(self.regularity + 1):
            row = ["{}:".format(strand)]
            for i in columns:
                value = self[(i, i + strand)]
                row.append(str(value) if value else ".")
            rows.append(row)
        names = ["strand"] + [str(i) for i in columns]
        return agate.Table(rows, names, [agate.Text(cast_nulls=False)] * len(names))


def betti_table(ideal: MonomialIdeal, field: FieldSpec = RATIONALS) -> BettiTable:
    """Hochster's formula: β_{i,j} = Σ over |W| = j of b̃_{j-i-1}(Δ_N restricted to W)."""
    _require_proper(ideal, "the Betti table")
    complex = nonface_complex(ideal).as_complex()
    n = ideal.ambient.n
    table = BettiTable(field)
    generators = [generator.mask for generator in ideal.generators]
    for subset in range(1 << n):
        covered = 0
        for generator in generators:
            if generator & ~subset == 0:
                covered |= generator
        if covered != subset:
            # a vertex of W outside every generator inside W is a cone point
            continue
        profile = reduced_homology(restriction(complex, SquareFreeMonomial(subset)), field)
        size = popcount(subset)
        for degree, value in profile.nonzero().items():
            table.add(size - degree - 1, size, value)
    logger.debug("Betti table over {}: {}", field, table.to_json())
    return table


def has_linear_resolution(ideal: MonomialIdeal, field: FieldSpec = RATIONALS) -> bool:
    if ideal.is_zero or ideal.is_unit:
        return True
    if not ideal.is_equigenerated:
        return False
    return betti_table(ideal, field).is_linear(ideal.degrees[0])


def is_componentwise_linear(ideal: MonomialIdeal, field: FieldSpec = RATIONALS) -> bool:
    if ideal.is_zero:
        return True
    for k in range(ideal.min_degree, ideal.ambient.n + 1):
        part = component(ideal, k)
        if not part.is_zero and not has_linear_resolution(part, field):
            return False
    return True


def eagon_reiner_check(ideal: MonomialIdeal, field: FieldSpec = RATIONALS) -> bool:
    cohen_macaulay = is_cohen_macaulay(ideal, field)
    linear = has_linear_resolution(dual_ideal(ideal), field)
    if cohen_macaulay != linear:
        raise_internal_error(
            "Eagon-Reiner fails over {}: Cohen-Macaulay={} but linear dual={}".format(
                field, cohen_macaulay, linear
            )
        )
    return cohen_macaulay

