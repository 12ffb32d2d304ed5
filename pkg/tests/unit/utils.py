"""Unit test utility functions: text helpers and random instance generators.

Generators take a ``random.Random`` so every suite is reproducible from its
seed.
"""
from sqfree.core import (
    MonomialIdeal,
    SimplicialComplex,
    SquareFreeMonomial,
    VariableSet,
    parse,
)
from sqfree.oracles import brute_force_is_forest

LETTERS = "xyzuvwabcdefghijk"


def variables(n):
    if n <= len(LETTERS):
        return VariableSet(tuple(LETTERS[:n]))
    return VariableSet(tuple("x{}".format(i) for i in range(1, n + 1)))


def ideal(text):
    parsed = parse(text)
    assert isinstance(parsed, MonomialIdeal), text
    return parsed


def complex_(text):
    parsed = parse(text)
    assert isinstance(parsed, SimplicialComplex), text
    return parsed


def mono(ambient, text):
    """``mono(V, 'xz')`` for single-letter ambients, ``'1'`` for the empty support."""
    if text == "1":
        return SquareFreeMonomial(0)
    if "*" in text:
        return ambient.monomial(text.split("*"))
    return ambient.monomial(list(text))


def monos(ambient, texts):
    return tuple(sorted(mono(ambient, text) for text in texts))


def texts(ambient, monomials):
    return sorted(ambient.format_monomial(m) for m in monomials)


def random_subset(rng, n, low=1, high=None):
    high = n if high is None else min(high, n)
    size = rng.randint(low, high)
    return SquareFreeMonomial.from_indices(rng.sample(range(n), size))


def random_ideal(rng, n, max_generators=6, max_degree=None):
    ambient = variables(n)
    count = rng.randint(1, max_generators)
    return MonomialIdeal.create(
        ambient, [random_subset(rng, n, 1, max_degree) for _ in range(count)]
    )


def random_complex(rng, n, max_facets=6, max_size=None):
    ambient = variables(n)
    count = rng.randint(1, max_facets)
    return SimplicialComplex.create(
        ambient, [random_subset(rng, n, 1, max_size) for _ in range(count)]
    )


def _relabel(rng, facets, n):
    permutation = list(range(n))
    rng.shuffle(permutation)
    return [
        SquareFreeMonomial.from_indices(permutation[i] for i in facet) for facet in facets
    ]


def grow_forest(rng, n_max=9, max_facets=6, extra_variables=1):
    """Grow a complex by attaching facets along faces of existing ones, then
    keep it only if it really is a forest.
    """
    while True:
        first = rng.randint(1, min(3, n_max))
        facets = [set(range(first))]
        used = first
        target = rng.randint(1, max_facets)
        while len(facets) < target and used < n_max:
            base = rng.choice(facets)
            shared = set(rng.sample(sorted(base), rng.randint(0, len(base) - 1)))
            fresh = rng.randint(1, min(2, n_max - used))
            facets.append(shared | set(range(used, used + fresh)))
            used += fresh
        n = min(n_max, used + rng.randint(0, extra_variables))
        ambient = variables(n)
        candidate = SimplicialComplex.create(ambient, _relabel(rng, facets, n))
        if len(candidate.facets) == len(facets) and brute_force_is_forest(candidate):
            return candidate


def whiskered_forest(rng, base_vertices=3, extra_variables=0):
    """A forest with a whisker {v, v'} or {v, v', v''} at every vertex.

    Every minimal cover takes exactly one variable from each whisker, so the
    result is unmixed.
    """
    while True:
        base = grow_forest(rng, n_max=base_vertices, max_facets=3, extra_variables=0)
        if all(facet.degree >= 2 for facet in base.facets):
            break
    facets = [set(facet.indices) for facet in base.facets]
    vertices = sorted(set().union(*facets)) if facets else []
    used = base.ambient.n
    for vertex in vertices:
        size = rng.randint(1, 2)
        facets.append({vertex} | set(range(used, used + size)))
        used += size
    n = used + rng.randint(0, extra_variables)
    return SimplicialComplex.create(variables(n), _relabel(rng, facets, n))
