import random
import unittest

from sqfree.core import MonomialIdeal, facet_ideal
from sqfree.duality import component, dual_ideal
from sqfree.exceptions import PreconditionException, SearchBudgetException
from sqfree.homalg import has_linear_resolution
from sqfree.linquo import (
    QuotientOrder,
    colon,
    componentwise_linear_via_quotients,
    find_linear_quotient_order,
    inductive_quotient_order,
    is_linear_step,
    is_shelling_order,
    leaf_decomposition,
    replay_quotient_order,
    shelling_from_quotients,
)

from .utils import complex_, grow_forest, ideal, mono, monos, random_ideal, texts


class TestColon(unittest.TestCase):
    def test_colon(self):
        i = ideal("(xy, z)")
        self.assertEqual(colon(i, mono(i.ambient, "x")), ideal("(y, z) over x,y,z"))

    def test_linear_step(self):
        prefix = ideal("(xz) over x,y,z")
        step = is_linear_step(prefix, mono(prefix.ambient, "yz"))
        self.assertTrue(step)
        self.assertEqual(step.variables, mono(prefix.ambient, "x"))

        prefix = ideal("(xy) over x,y,z,u")
        step = is_linear_step(prefix, mono(prefix.ambient, "zu"))
        self.assertFalse(step)
        self.assertTrue(step.variables.is_one)


class TestQuotientOrders(unittest.TestCase):
    def test_triangle_edges(self):
        i = ideal("(xy, yz, xz)")
        certificate = find_linear_quotient_order(i)
        self.assertEqual(certificate.order, monos(i.ambient, ["xy", "xz", "yz"]))
        self.assertEqual(texts(i.ambient, certificate.colon_variables), ["x", "y"])
        self.assertEqual(certificate.colon_variables[0], mono(i.ambient, "y"))
        self.assertTrue(replay_quotient_order(i, certificate))

    def test_no_order(self):
        i = ideal("(xy, zu)")
        self.assertIsNone(find_linear_quotient_order(i))
        self.assertIsNone(QuotientOrder.from_order(i.ambient, list(i.generators)))

    def test_mixed_degrees(self):
        i = ideal("(xy, z)")
        certificate = find_linear_quotient_order(i)
        self.assertEqual(certificate.order[0], mono(i.ambient, "z"))
        self.assertTrue(replay_quotient_order(i, certificate))

    def test_zero_ideal(self):
        zero = MonomialIdeal.zero(ideal("(xy)").ambient)
        certificate = find_linear_quotient_order(zero)
        self.assertEqual(certificate.order, ())
        self.assertTrue(replay_quotient_order(zero, certificate))

    def test_budget(self):
        with self.assertRaises(SearchBudgetException):
            find_linear_quotient_order(ideal("(xy, zu)"), budget=1)

    def test_replay_rejects_tampering(self):
        i = ideal("(xy, yz, xz)")
        certificate = find_linear_quotient_order(i)
        swapped = QuotientOrder(
            i.ambient, certificate.order, tuple(reversed(certificate.colon_variables))
        )
        self.assertFalse(replay_quotient_order(i, swapped))
        shorter = QuotientOrder(i.ambient, certificate.order[:2], certificate.colon_variables[:1])
        self.assertFalse(replay_quotient_order(i, shorter))
        self.assertFalse(replay_quotient_order(ideal("(xy, yz, xz, xu)"), certificate))


class TestInductiveOrder(unittest.TestCase):
    def test_golden_complex(self):
        delta = complex_("<xyz, yzu, uv>")
        dual = dual_ideal(facet_ideal(delta))
        certificate = inductive_quotient_order(delta, 2)
        self.assertEqual(set(certificate.order), set(dual.generators))
        self.assertTrue(replay_quotient_order(component(dual, 2), certificate))

    def test_every_degree(self):
        delta = complex_("<xyz, yzu, zuv>")
        dual = dual_ideal(facet_ideal(delta))
        for k in range(0, delta.ambient.n + 2):
            certificate = inductive_quotient_order(delta, k)
            self.assertTrue(replay_quotient_order(component(dual, k), certificate), k)

    def test_grown_forests(self):
        rng = random.Random(37)
        for _ in range(25):
            delta = grow_forest(rng, n_max=7)
            dual = dual_ideal(facet_ideal(delta))
            for k in range(dual.min_degree, delta.ambient.n + 1):
                certificate = inductive_quotient_order(delta, k)
                self.assertTrue(replay_quotient_order(component(dual, k), certificate))

    def test_needs_a_forest(self):
        with self.assertRaises(PreconditionException):
            inductive_quotient_order(complex_("<xy, yz, xz>"), 2)


class TestLeafDecomposition(unittest.TestCase):
    def setUp(self):
        self.delta = complex_("<xyz, yzu, zuv>")
        self.ambient = self.delta.ambient
        self.leaf = mono(self.ambient, "xyz")

    def test_split(self):
        avoiding, through = leaf_decomposition(self.delta, self.leaf, 0, 2)
        self.assertEqual(texts(self.ambient, avoiding), ["yu", "yv", "yz", "zu", "zv"])
        self.assertEqual(texts(self.ambient, through), ["u", "z"])

        x = mono(self.ambient, "x")
        dual = dual_ideal(facet_ideal(self.delta))
        rebuilt = set(avoiding) | {cover.lcm(x) for cover in through}
        self.assertEqual(rebuilt, set(component(dual, 2).generators))

    def test_degree_zero(self):
        avoiding, through = leaf_decomposition(self.delta, self.leaf, 0, 0)
        self.assertEqual(avoiding, ())
        self.assertEqual(through, ())

    def test_preconditions(self):
        with self.assertRaises(PreconditionException):
            leaf_decomposition(self.delta, mono(self.ambient, "yzu"), 1, 2)
        with self.assertRaises(PreconditionException):
            leaf_decomposition(self.delta, self.leaf, self.ambient.index("y"), 2)


class TestComponentwise(unittest.TestCase):
    def test_dual_of_forest(self):
        delta = complex_("<xyz, yzu, uv>")
        dual = dual_ideal(facet_ideal(delta))
        report = componentwise_linear_via_quotients(dual)
        self.assertTrue(report.certified)
        self.assertTrue(report.componentwise_linear)
        self.assertEqual({verdict.strategy for verdict in report.components}, {"forest"})
        self.assertEqual([verdict.k for verdict in report.components], [2, 3, 4, 5])

    def test_not_componentwise_linear(self):
        report = componentwise_linear_via_quotients(ideal("(xy, zu)"))
        self.assertFalse(report.certified)
        self.assertFalse(report.componentwise_linear)
        first = report.components[0]
        self.assertEqual(first.k, 2)
        self.assertIsNone(first.certificate)
        self.assertFalse(first.linear_resolution)
        self.assertTrue(report.components[1].certificate is not None)

    def test_budget_falls_back_to_betti_numbers(self):
        report = componentwise_linear_via_quotients(ideal("(xy, zu)"), budget=1)
        first = report.components[0]
        self.assertEqual(first.strategy, "budget")
        self.assertFalse(first.linear_resolution)

    def test_selected_degrees(self):
        report = componentwise_linear_via_quotients(ideal("(xy, yz, xz)"), degrees=[2])
        self.assertEqual([verdict.k for verdict in report.components], [2])
        self.assertTrue(report.certified)

    def test_zero_ideal(self):
        report = componentwise_linear_via_quotients(MonomialIdeal.zero(ideal("(xy)").ambient))
        self.assertEqual(report.components, ())
        self.assertTrue(report.componentwise_linear)

    def test_certified_components_have_linear_resolutions(self):
        rng = random.Random(53)
        checked = 0
        for _ in range(120):
            i = random_ideal(rng, rng.randint(2, 6))
            report = componentwise_linear_via_quotients(i)
            for verdict in report.components:
                if verdict.certificate is None or len(verdict.ideal.generators) > 8:
                    continue
                self.assertTrue(
                    has_linear_resolution(verdict.ideal), "{} degree {}".format(i, verdict.k)
                )
                checked += 1
        self.assertGreater(checked, 0)


class TestShelling(unittest.TestCase):
    def test_is_shelling_order(self):
        ambient = ideal("(xyzu)").ambient
        self.assertTrue(is_shelling_order(monos(ambient, ["xy", "yz", "zu"])))
        self.assertFalse(is_shelling_order(
            [mono(ambient, "xy"), mono(ambient, "zu"), mono(ambient, "yz")]
        ))

    def test_square(self):
        shelling = shelling_from_quotients(ideal("(xy, zu)"))
        self.assertEqual(len(shelling.facets), 4)
        self.assertTrue(is_shelling_order(shelling.facets))
        self.assertEqual(
            shelling.facets,
            tuple(shelling.ambient.complement(m) for m in shelling.quotient_order.order),
        )

    def test_forest_dual(self):
        i = ideal("(xyz, yzu, uv)")
        shelling = shelling_from_quotients(i)
        self.assertTrue(is_shelling_order(shelling.facets))
        self.assertTrue(replay_quotient_order(dual_ideal(i), shelling.quotient_order))

    def test_not_shellable(self):
        for text in ["(xz, xu, yz, yu)", "(xyz, zu)", "(1) over x"]:
            with self.assertRaises(PreconditionException, msg=text):
                shelling_from_quotients(ideal(text))
