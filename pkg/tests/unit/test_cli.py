import io
import json
import os
import shutil
import tempfile
import unittest
from datetime import datetime
from unittest import mock

from freezegun import freeze_time

from sqfree import cli
from sqfree.cli import (
    ExitCodes,
    execute,
    handle_and_check,
    main,
    parse_args,
    read_input,
    render,
)
from sqfree.exceptions import ParsingException


class CliTestCase(unittest.TestCase):
    def setUp(self):
        self.tmpdir = tempfile.mkdtemp(prefix="sqfree-unit-")

    def tearDown(self):
        shutil.rmtree(self.tmpdir, ignore_errors=True)

    def write(self, text, name="input.txt"):
        path = os.path.join(self.tmpdir, name)
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)
        return path

    @property
    def cert_dir(self):
        return os.path.join(self.tmpdir, "certs")

    def load(self, name):
        with open(os.path.join(self.cert_dir, name), encoding="utf-8") as handle:
            return json.load(handle)


class TestParseArgs(CliTestCase):
    def test_defaults(self):
        parsed = parse_args(["covers"])
        self.assertEqual(parsed.command, "covers")
        self.assertEqual(parsed.input, "-")
        self.assertIsNone(parsed.field)
        self.assertFalse(parsed.oracle)

    def test_flags(self):
        parsed = parse_args(
            ["linquo", "ideal.txt", "--field", "fp:7", "--component", "2", "--json"]
        )
        self.assertEqual(parsed.field, "fp:7")
        self.assertEqual(parsed.component, 2)
        self.assertTrue(parsed.json)

    def test_version(self):
        with self.assertRaises(SystemExit) as ctx:
            parse_args(["--version"])
        self.assertEqual(ctx.exception.code, 0)


class TestCommands(CliTestCase):
    def test_covers(self):
        path = self.write("<xyz, yzu, uv>")
        outcome, code = execute(["covers", path, "--cert-dir", self.cert_dir])
        self.assertEqual(code, ExitCodes.Success)
        report = outcome.report
        self.assertEqual(report.results["covers"], ["xu", "yu", "yv", "zu", "zv"])
        self.assertEqual(report.results["covering_number"], 2)
        self.assertTrue(report.verdicts["unmixed"])
        certificate = self.load("covers.covers.json")
        self.assertEqual(certificate["vars"], ["x", "y", "z", "u", "v"])
        self.assertEqual(certificate["covers"][0], ["x", "u"])

    def test_dual(self):
        path = self.write("(xyz, zu)")
        outcome, code = execute(["dual", path, "--oracle"])
        self.assertEqual(code, ExitCodes.Success)
        results = outcome.report.results
        self.assertEqual(results["dual_ideal"], "(xu, yu, z) over x,y,z,u")
        self.assertEqual(results["nonface_facets"], ["xyu", "xz", "yz"])
        self.assertEqual(results["cover_complex"], ["xu", "yu", "z"])
        self.assertTrue(outcome.report.verdicts["oracle"])

    def test_tree_leafless(self):
        path = self.write("<xy, yz, xz>")
        outcome, code = execute(["tree", path, "--cert-dir", self.cert_dir, "--oracle"])
        self.assertEqual(code, ExitCodes.Success)
        self.assertFalse(outcome.report.verdicts["forest"])
        self.assertFalse(outcome.report.verdicts["tree"])
        certificate = self.load("tree.forest_witness.json")
        self.assertEqual(certificate["witness_kind"], "leafless")
        self.assertEqual(len(certificate["facets"]), 3)

    def test_tree_guard(self):
        path = self.write("<xyv, yzw, xzt, xyz>")
        _, code = execute(["tree", path, "--max-facets", "3"])
        self.assertEqual(code, ExitCodes.PreconditionViolation)

    def test_cm_with_shelling(self):
        path = self.write("(xy, zu)")
        outcome, code = execute(["cm", path, "--cert-dir", self.cert_dir, "--oracle"])
        self.assertEqual(code, ExitCodes.Success)
        verdicts = outcome.report.verdicts
        self.assertTrue(verdicts["cohen_macaulay"])
        self.assertTrue(verdicts["shelling_certified"])
        self.assertTrue(verdicts["eagon_reiner"])
        self.assertEqual(outcome.report.results["krull_dimension"], 2)
        self.assertEqual(len(self.load("cm.shelling.json")["shelling"]), 4)

    def test_cm_obstruction(self):
        path = self.write("(xz, xu, yz, yu)")
        outcome, code = execute(["cm", path])
        self.assertEqual(code, ExitCodes.Success)
        obstruction = outcome.report.results["obstruction"]
        self.assertEqual(obstruction["obstruction_face"], [])
        self.assertEqual(obstruction["obstruction_degree"], 0)
        self.assertNotIn("shelling_certified", outcome.report.verdicts)

    def test_scm(self):
        path = self.write("(xyz, zu)")
        outcome, code = execute(["scm", path, "--cert-dir", self.cert_dir, "--oracle"])
        self.assertEqual(code, ExitCodes.Success)
        self.assertTrue(outcome.report.verdicts["sequentially_cm"])
        self.assertFalse(outcome.report.verdicts["cohen_macaulay"])
        table = self.load("scm.homology.json")
        self.assertEqual(table["field"], "q")
        self.assertEqual([row["skeleton"] for row in table["rows"]], [-1, 0, 1, 2])

    def test_linquo(self):
        path = self.write("(xy, yz, xz)")
        outcome, code = execute(["linquo", path, "--cert-dir", self.cert_dir, "--oracle"])
        self.assertEqual(code, ExitCodes.Success)
        verdicts = outcome.report.verdicts
        self.assertTrue(verdicts["linear_quotients"])
        self.assertTrue(verdicts["certified"])
        self.assertTrue(verdicts["componentwise_linear"])
        whole = self.load("linquo.quotient_order.json")
        self.assertEqual(whole["order"], [["x", "y"], ["x", "z"], ["y", "z"]])
        self.assertEqual(whole["colon_vars"], [["y"], ["x"]])
        self.assertEqual(self.load("linquo.quotient_order.k3.json")["component"], 3)

    def test_linquo_component_out_of_range(self):
        path = self.write("(xy, zu)")
        _, code = execute(["linquo", path, "--component", "9"])
        self.assertEqual(code, ExitCodes.InputError)

    def test_betti(self):
        path = self.write("(xy, zu)")
        outcome, code = execute(["betti", path, "--oracle", "--field", "fp:7"])
        self.assertEqual(code, ExitCodes.Success)
        report = outcome.report
        self.assertEqual(report.field, "fp:7")
        self.assertEqual(report.results["betti"], {"0,0": 1, "1,2": 2, "2,4": 1})
        self.assertFalse(report.verdicts["linear_resolution"])

    def test_json_input(self):
        path = self.write('{"vars": ["x", "y", "z"], "gens": [[0, 1], [1, 2], [0, 2]]}')
        outcome, code = execute(["betti", path])
        self.assertEqual(code, ExitCodes.Success)
        self.assertTrue(outcome.report.verdicts["linear_resolution"])


class TestErrors(CliTestCase):
    def test_missing_file(self):
        report, success = handle_and_check(["covers", os.path.join(self.tmpdir, "nope")])
        self.assertIsNone(report)
        self.assertFalse(success)
        _, code = execute(["covers", os.path.join(self.tmpdir, "nope")])
        self.assertEqual(code, ExitCodes.InputError)

    def test_malformed_input(self):
        path = self.write("(x^2y)")
        _, code = execute(["covers", path])
        self.assertEqual(code, ExitCodes.InputError)

    def test_undecodable_file(self):
        path = os.path.join(self.tmpdir, "latin.txt")
        with open(path, "wb") as handle:
            handle.write(b"(x\xff\xfey, z)")
        with self.assertRaises(ParsingException):
            read_input(path)
        _, code = execute(["covers", path])
        self.assertEqual(code, ExitCodes.InputError)

    @mock.patch.object(cli.sys, "stdin")
    def test_undecodable_stdin(self, stdin):
        stdin.read.side_effect = UnicodeDecodeError("utf-8", b"\xff", 0, 1, "invalid start byte")
        _, code = execute(["covers", "-"])
        self.assertEqual(code, ExitCodes.InputError)

    def test_bad_field(self):
        path = self.write("(xy)")
        _, code = execute(["cm", path, "--field", "fp:9"])
        self.assertEqual(code, ExitCodes.InputError)

    def test_precondition(self):
        path = self.write("(1) over x,y")
        _, code = execute(["cm", path])
        self.assertEqual(code, ExitCodes.PreconditionViolation)

    @mock.patch("sqfree.oracles.brute_force_minimal_covers")
    def test_oracle_mismatch(self, brute_force):
        brute_force.return_value = ()
        path = self.write("<xy, yz>")
        _, code = execute(["covers", path, "--oracle"])
        self.assertEqual(code, ExitCodes.InternalError)
        brute_force.assert_called_once()

    @mock.patch.object(cli, "COMMANDS", {"covers": mock.Mock(side_effect=KeyError("boom"))})
    def test_unhandled(self):
        path = self.write("<xy>")
        _, code = execute(["covers", path])
        self.assertEqual(code, ExitCodes.InternalError)

    @mock.patch.dict(os.environ, {"SQFREE_FIELD": "fp:2"})
    def test_field_from_environment(self):
        path = self.write("(xy, zu)")
        outcome, code = execute(["betti", path])
        self.assertEqual(code, ExitCodes.Success)
        self.assertEqual(outcome.report.field, "fp:2")


class TestRender(CliTestCase):
    @freeze_time("2021-06-01 12:00:00")
    def test_json(self):
        path = self.write("(xy, zu)")
        outcome, _ = execute(["betti", path, "--json"])
        self.assertEqual(outcome.report.metadata.generated_at, datetime(2021, 6, 1, 12))
        out = io.StringIO()
        render(outcome, out)
        payload = json.loads(out.getvalue())
        self.assertEqual(payload["command"], "betti")
        self.assertEqual(payload["metadata"]["schema_version"], "sqfree/report/v1")
        self.assertTrue(payload["metadata"]["generated_at"].startswith("2021-06-01T12:00:00"))

    def test_text(self):
        path = self.write("(xy, zu)")
        outcome, _ = execute(["betti", path])
        out = io.StringIO()
        render(outcome, out)
        text = out.getvalue()
        self.assertIn("betti: (xy, zu) over x,y,z,u", text)
        self.assertIn("linear_resolution: False", text)
        self.assertIn("betti table", text)

    def test_main_exit_code(self):
        path = self.write("(1) over x")
        with self.assertRaises(SystemExit) as ctx:
            main(["cm", path])
        self.assertEqual(ctx.exception.code, ExitCodes.PreconditionViolation.value)

    @mock.patch("sqfree.cli.render")
    def test_main_renders_success(self, render_mock):
        path = self.write("<xy>")
        with self.assertRaises(SystemExit) as ctx:
            main(["covers", path])
        self.assertEqual(ctx.exception.code, 0)
        render_mock.assert_called_once()
