"""Canonical square-free monomials, simplicial complexes and monomial ideals.

A square-free monomial and a face are the same object here: a set of
variable indices stored as a bit mask. Complexes and ideals always carry
their ambient VariableSet, and their facets/generators are kept as a
canonically sorted antichain so that equal objects print identically.
"""
import json
import re
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

import networkx as nx

from sqfree.events import ToolkitLogger
from sqfree.exceptions import (
    raise_parsing_error,
    raise_precondition_error,
    raise_validation_error,
)

logger = ToolkitLogger("Core")

_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")
_FACTOR_RE = re.compile(r"([A-Za-z][A-Za-z0-9_]*)(?:\^(\d+))?")
_JUXTAPOSED_RE = re.compile(r"(?:[A-Za-z](?:\^\d+)?)+")
_LETTER_RE = re.compile(r"([A-Za-z])(?:\^(\d+))?")
_RANGE_RE = re.compile(r"([A-Za-z_][A-Za-z_]*?)(\d+)\.\.(?:\1)?(\d+)")
_OVER_RE = re.compile(r"^\s*over\s+(.+?)\s*$", re.DOTALL)
_BRACKETS = {"(": ")", "<": ">", "⟨": "⟩"}


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of ``mask``, ascending."""
    index = 0
    while mask:
        if mask & 1:
            yield index
        mask >>= 1
        index += 1


def compress(mask: int, keep: int) -> int:
    """Re-index ``mask`` onto the positions of ``keep`` (order preserving)."""
    result = 0
    for position, index in enumerate(bits(keep)):
        if mask >> index & 1:
            result |= 1 << position
    return result


def expand(mask: int, keep: int) -> int:
    """Inverse of compress: place bit i of ``mask`` at the i-th bit of ``keep``."""
    result = 0
    for position, index in enumerate(bits(keep)):
        if mask >> position & 1:
            result |= 1 << index
    return result


@dataclass(frozen=True)
class SquareFreeMonomial:
    mask: int = 0

    def __post_init__(self):
        if self.mask < 0:
            raise_validation_error("a monomial support cannot be negative")

    @classmethod
    def from_indices(cls, indices: Iterable[int]) -> "SquareFreeMonomial":
        mask = 0
        for index in indices:
            mask |= 1 << index
        return cls(mask)

    @property
    def indices(self) -> Tuple[int, ...]:
        return tuple(bits(self.mask))

    @property
    def sort_key(self) -> Tuple[int, ...]:
        return self.indices

    @property
    def degree(self) -> int:
        return popcount(self.mask)

    @property
    def is_one(self) -> bool:
        return self.mask == 0

    def divides(self, other: "SquareFreeMonomial") -> bool:
        return self.mask & ~other.mask == 0

    def lcm(self, other: "SquareFreeMonomial") -> "SquareFreeMonomial":
        return SquareFreeMonomial(self.mask | other.mask)

    def gcd(self, other: "SquareFreeMonomial") -> "SquareFreeMonomial":
        return SquareFreeMonomial(self.mask & other.mask)

    def quotient(self, other: "SquareFreeMonomial") -> "SquareFreeMonomial":
        """self / gcd(self, other)"""
        return SquareFreeMonomial(self.mask & ~other.mask)

    def __contains__(self, index: int) -> bool:
        return bool(self.mask >> index & 1)

    def __len__(self) -> int:
        return self.degree

    def __lt__(self, other: "SquareFreeMonomial") -> bool:
        return self.sort_key < other.sort_key


ONE = SquareFreeMonomial(0)


@dataclass(frozen=True)
class VariableSet:
    names: Tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        seen = set()
        for name in self.names:
            if not isinstance(name, str) or not _NAME_RE.fullmatch(name):
                raise_validation_error("invalid variable name {!r}".format(name))
            if name in seen:
                raise_validation_error("duplicate variable {!r}".format(name))
            seen.add(name)

    @classmethod
    def empty(cls) -> "VariableSet":
        return cls(())

    @cached_property
    def _positions(self) -> Dict[str, int]:
        return {name: index for index, name in enumerate(self.names)}

    @property
    def n(self) -> int:
        return len(self.names)

    def __len__(self) -> int:
        return len(self.names)

    @property
    def full(self) -> SquareFreeMonomial:
        return SquareFreeMonomial((1 << len(self.names)) - 1)

    @property
    def single_letter(self) -> bool:
        return all(len(name) == 1 for name in self.names)

    def index(self, name: str) -> int:
        try:
            return self._positions[name]
        except KeyError:
            raise_validation_error("unknown variable {!r}".format(name))

    def monomial(self, names: Iterable[str]) -> SquareFreeMonomial:
        return SquareFreeMonomial.from_indices(self.index(name) for name in names)

    def names_of(self, monomial: SquareFreeMonomial) -> List[str]:
        return [self.names[index] for index in monomial.indices]

    def format_monomial(self, monomial: SquareFreeMonomial) -> str:
        if monomial.is_one:
            return "1"
        joiner = "" if self.single_letter else "*"
        return joiner.join(self.names_of(monomial))

    def contains(self, monomial: SquareFreeMonomial) -> bool:
        return monomial.divides(self.full)

    def restrict(self, subset: SquareFreeMonomial) -> "VariableSet":
        """The sub-ambient on ``subset``, keeping ambient order."""
        return VariableSet(tuple(self.names[index] for index in subset.indices))

    def complement(self, monomial: SquareFreeMonomial) -> SquareFreeMonomial:
        return SquareFreeMonomial(self.full.mask & ~monomial.mask)


def minimalize(monomials: Iterable[SquareFreeMonomial]) -> Tuple[SquareFreeMonomial, ...]:
    """The divisibility-minimal elements, deduplicated and canonically sorted."""
    candidates = sorted(set(monomials), key=lambda m: (m.degree, m.sort_key))
    kept: List[SquareFreeMonomial] = []
    for candidate in candidates:
        if not any(smaller.divides(candidate) for smaller in kept):
            kept.append(candidate)
    return tuple(sorted(kept))


def maximalize(faces: Iterable[SquareFreeMonomial]) -> Tuple[SquareFreeMonomial, ...]:
    """The inclusion-maximal elements, deduplicated and canonically sorted."""
    candidates = sorted(set(faces), key=lambda m: (-m.degree, m.sort_key))
    kept: List[SquareFreeMonomial] = []
    for candidate in candidates:
        if not any(candidate.divides(larger) for larger in kept):
            kept.append(candidate)
    return tuple(sorted(kept))


def _check_canonical(kind: str, ambient: VariableSet, items: Sequence[SquareFreeMonomial]):
    for item in items:
        if not ambient.contains(item):
            raise_validation_error(
                "{} {} uses variables outside the ambient {}".format(
                    kind, item.indices, list(ambient.names)
                )
            )
    if tuple(sorted(set(items))) != tuple(items):
        raise_validation_error("{}s must be distinct and canonically sorted".format(kind))
    for first, second in combinations(items, 2):
        if first.divides(second) or second.divides(first):
            raise_validation_error(
                "{}s {} and {} are comparable".format(kind, first.indices, second.indices)
            )


@dataclass(frozen=True)
class SimplicialComplex:
    """A complex given by its facets.

    ``facets == ()`` is the void complex (no faces at all) and
    ``facets == (ONE,)`` is the complex whose only face is the empty set.
    """

    ambient: VariableSet
    facets: Tuple[SquareFreeMonomial, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "facets", tuple(self.facets))
        _check_canonical("facet", self.ambient, self.facets)

    @classmethod
    def create(
        cls, ambient: VariableSet, faces: Iterable[SquareFreeMonomial]
    ) -> "SimplicialComplex":
        return cls(ambient, maximalize(faces))

    @property
    def vertices(self) -> SquareFreeMonomial:
        mask = 0
        for facet in self.facets:
            mask |= facet.mask
        return SquareFreeMonomial(mask)

    @property
    def is_void(self) -> bool:
        return not self.facets

    def __len__(self) -> int:
        return len(self.facets)

    def __iter__(self) -> Iterator[SquareFreeMonomial]:
        return iter(self.facets)

    def __contains__(self, facet: SquareFreeMonomial) -> bool:
        return facet in self.facets

    def has_face(self, face: SquareFreeMonomial) -> bool:
        return any(face.divides(facet) for facet in self.facets)

    def subcollection(self, facets: Iterable[SquareFreeMonomial]) -> "SimplicialComplex":
        return SimplicialComplex(self.ambient, tuple(sorted(facets)))

    def __str__(self) -> str:
        return format(self)


@dataclass(frozen=True)
class MonomialIdeal:
    """A square-free monomial ideal by its minimal generators.

    ``generators == ()`` is the zero ideal and ``generators == (ONE,)`` the
    unit ideal.
    """

    ambient: VariableSet
    generators: Tuple[SquareFreeMonomial, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        _check_canonical("generator", self.ambient, self.generators)

    @classmethod
    def create(
        cls, ambient: VariableSet, monomials: Iterable[SquareFreeMonomial]
    ) -> "MonomialIdeal":
        return cls(ambient, minimalize(monomials))

    @classmethod
    def zero(cls, ambient: VariableSet) -> "MonomialIdeal":
        return cls(ambient, ())

    @classmethod
    def unit(cls, ambient: VariableSet) -> "MonomialIdeal":
        return cls(ambient, (ONE,))

    @property
    def is_zero(self) -> bool:
        return not self.generators

    @property
    def is_unit(self) -> bool:
        return self.generators == (ONE,)

    def contains(self, monomial: SquareFreeMonomial) -> bool:
        return any(generator.divides(monomial) for generator in self.generators)

    @property
    def degrees(self) -> Tuple[int, ...]:
        return tuple(sorted({generator.degree for generator in self.generators}))

    @property
    def is_equigenerated(self) -> bool:
        return len(self.degrees) == 1

    @property
    def min_degree(self) -> Optional[int]:
        return self.degrees[0] if self.generators else None

    def __len__(self) -> int:
        return len(self.generators)

    def __iter__(self) -> Iterator[SquareFreeMonomial]:
        return iter(self.generators)

    def __str__(self) -> str:
        return format(self)


def vertices(complex: SimplicialComplex) -> SquareFreeMonomial:
    return complex.vertices


def facet_ideal(complex: SimplicialComplex) -> MonomialIdeal:
    return MonomialIdeal(complex.ambient, complex.facets)


def facet_complex(ideal: MonomialIdeal) -> SimplicialComplex:
    if ideal.is_unit:
        raise_precondition_error("the unit ideal has no facet complex")
    return SimplicialComplex(ideal.ambient, ideal.generators)


def is_connected(complex: SimplicialComplex) -> bool:
    if complex.is_void:
        raise_precondition_error("connectivity is undefined for a complex with no facets")
    graph = nx.Graph()
    graph.add_nodes_from(range(len(complex.facets)))
    for (i, first), (j, second) in combinations(enumerate(complex.facets), 2):
        if first.mask & second.mask:
            graph.add_edge(i, j)
    return nx.is_connected(graph)


def dimension(complex: SimplicialComplex) -> int:
    if complex.is_void:
        return -1
    return max(facet.degree for facet in complex.facets) - 1


def is_pure(complex: SimplicialComplex) -> bool:
    return len({facet.degree for facet in complex.facets}) <= 1


# text and JSON forms


def _expand_varlist(text: str) -> List[str]:
    names: List[str] = []
    for item in (part.strip() for part in text.split(",")):
        if not item:
            raise_parsing_error("empty entry in variable list {!r}".format(text))
        match = _RANGE_RE.fullmatch(item)
        if match:
            prefix, start, stop = match.group(1), int(match.group(2)), int(match.group(3))
            if stop < start:
                raise_parsing_error("empty variable range {!r}".format(item))
            names.extend("{}{}".format(prefix, i) for i in range(start, stop + 1))
        elif _NAME_RE.fullmatch(item):
            names.append(item)
        else:
            raise_parsing_error("invalid variable name {!r}".format(item))
    seen = set()
    for name in names:
        if name in seen:
            raise_parsing_error("duplicate variable {!r} in variable list".format(name))
        seen.add(name)
    return names


def _factors(token: str, declared: Optional[Sequence[str]]) -> List[str]:
    if "*" in token:
        pairs = []
        for factor in token.split("*"):
            match = _FACTOR_RE.fullmatch(factor.strip())
            if not match:
                raise_parsing_error("malformed factor {!r} in {!r}".format(factor, token))
            pairs.append((match.group(1), match.group(2)))
    elif declared is not None and token in declared:
        pairs = [(token, None)]
    elif _JUXTAPOSED_RE.fullmatch(token):
        pairs = [(m.group(1), m.group(2)) for m in _LETTER_RE.finditer(token)]
    else:
        match = _FACTOR_RE.fullmatch(token)
        if not match:
            raise_parsing_error("malformed monomial {!r}".format(token))
        pairs = [(match.group(1), match.group(2))]

    names: List[str] = []
    for name, exponent in pairs:
        power = 1 if exponent is None else int(exponent)
        if power > 1:
            raise_parsing_error(
                "{}^{} in {!r} is not square-free".format(name, power, token)
            )
        if power == 0:
            continue
        if name in names:
            raise_parsing_error("{} appears twice in {!r}; not square-free".format(name, token))
        names.append(name)
    return names


def _split_brackets(text: str) -> Tuple[str, str, str]:
    opener = text[0]
    closer = _BRACKETS.get(opener)
    if closer is None:
        raise_parsing_error(
            "expected '(' for an ideal or '<' for a complex, got {!r}".format(text[:20])
        )
    end = text.find(closer)
    if end < 0:
        raise_parsing_error("missing closing {!r}".format(closer))
    return opener, text[1:end], text[end + 1:]


def parse(text: str) -> Union[MonomialIdeal, SimplicialComplex]:
    """Read ``(xyz, zu) over x,y,z,u`` (an ideal), ``<xyz, zu>`` (a complex)
    or the JSON form.
    """
    stripped = text.strip()
    if not stripped:
        raise_parsing_error("empty input")
    if stripped.startswith("{"):
        return from_json(stripped)

    opener, body, rest = _split_brackets(stripped)
    declared: Optional[List[str]] = None
    if rest.strip():
        match = _OVER_RE.match(rest)
        if not match:
            raise_parsing_error("unexpected trailing text {!r}".format(rest.strip()))
        declared = _expand_varlist(match.group(1))

    tokens = [token.strip() for token in body.split(",")]
    if tokens == [""]:
        tokens = []
    if any(not token for token in tokens):
        raise_parsing_error("empty generator in {!r}".format(body))

    supports: List[List[str]] = []
    for token in tokens:
        supports.append([] if token == "1" else _factors(token, declared))

    if declared is None:
        order: List[str] = []
        for names in supports:
            order.extend(name for name in names if name not in order)
        if not order:
            raise_parsing_error("cannot infer the variables of {!r}; add 'over ...'".format(text))
        ambient = VariableSet(tuple(order))
    else:
        ambient = VariableSet(tuple(declared))
        for names in supports:
            for name in names:
                if name not in declared:
                    raise_parsing_error("variable {!r} is not in the 'over' list".format(name))

    monomials = [ambient.monomial(names) for names in supports]
    logger.debug("parsed {} monomials over {} variables", len(monomials), ambient.n)
    if opener == "(":
        return MonomialIdeal.create(ambient, monomials)
    return SimplicialComplex.create(ambient, monomials)


def format(obj: Union[MonomialIdeal, SimplicialComplex]) -> str:
    """Canonical text; ``parse(format(x)) == x``."""
    if isinstance(obj, MonomialIdeal):
        opener, closer, items = "(", ")", obj.generators
    elif isinstance(obj, SimplicialComplex):
        opener, closer, items = "<", ">", obj.facets
    else:
        raise TypeError("cannot format {}".format(type(obj).__name__))
    body = ", ".join(obj.ambient.format_monomial(item) for item in items)
    return "{}{}{} over {}".format(opener, body, closer, ",".join(obj.ambient.names))


def to_json(obj: Union[MonomialIdeal, SimplicialComplex]) -> str:
    if isinstance(obj, MonomialIdeal):
        key, items = "gens", obj.generators
    else:
        key, items = "facets", obj.facets
    return json.dumps({"vars": list(obj.ambient.names), key: [list(m.indices) for m in items]})


def from_json(text: str) -> Union[MonomialIdeal, SimplicialComplex]:
    try:
        payload = json.loads(text)
    except ValueError as exc:
        raise_parsing_error("invalid JSON input: {}".format(exc))
    if not isinstance(payload, dict) or "vars" not in payload:
        raise_parsing_error('JSON input needs a "vars" list')
    keys = {"gens", "facets"} & set(payload)
    if len(keys) != 1:
        raise_parsing_error('JSON input needs exactly one of "gens" or "facets"')
    key = keys.pop()

    names = payload["vars"]
    if not isinstance(names, list) or not names:
        raise_parsing_error('"vars" must be a nonempty list of names')
    if len(set(names)) != len(names):
        raise_parsing_error("duplicate variable in {}".format(names))
    ambient = VariableSet(tuple(names))

    monomials = []
    for support in payload[key]:
        # bool is an int subclass; true must not read as index 1
        if not isinstance(support, list) or not all(
            isinstance(i, int) and not isinstance(i, bool) for i in support
        ):
            raise_parsing_error("{!r} is not a list of variable indices".format(support))
        if len(set(support)) != len(support):
            raise_parsing_error("{} repeats an index; not square-free".format(support))
        if any(i < 0 or i >= ambient.n for i in support):
            raise_parsing_error("{} has an index outside 0..{}".format(support, ambient.n - 1))
        monomials.append(SquareFreeMonomial.from_indices(support))

    if key == "gens":
        return MonomialIdeal.create(ambient, monomials)
    return SimplicialComplex.create(ambient, monomials)
