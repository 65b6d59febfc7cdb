import json
import tempfile
import unittest
from pathlib import Path

import numpy as np
from numpy.testing import assert_allclose

import innercalc as ic
from innercalc.dtypes import InvariantViolation, ParseError

DATA = Path(__file__).parent.joinpath("data")


class TestGolden(unittest.TestCase):

    def setUp(self):
        self.golden = DATA.joinpath("identity_colligation.json").read_text()

    def test_serialize_identity(self):
        self.assertEqual(ic.serialize(ic.identity_colligation(2, 1)) + "\n", self.golden)

    def test_deserialize_identity(self):
        g = ic.deserialize(self.golden)
        self.assertIsInstance(g, ic.Colligation)
        self.assertEqual(g.shape, (2, 1, 0))
        assert_allclose(g.U, np.eye(2))


class TestDocuments(unittest.TestCase):

    def test_random_colligation(self):
        g = ic.random_colligation(2, 2, 1, seed=3)
        text = ic.serialize(g)
        back = ic.deserialize(text)
        self.assertEqual(ic.serialize(back), text)
        rng = np.random.default_rng(0)
        for _ in range(5):
            S = ic.sample_ball_point(2, 0.9, rng)
            np.testing.assert_array_equal(ic.theta_eval(back, S), ic.theta_eval(g, S))

    def test_other_types(self):
        zeta = ic.KSMorphism(1, 2, ic.haar_unitary(3, seed=1))
        back = ic.deserialize(ic.serialize(zeta))
        self.assertIsInstance(back, ic.KSMorphism)
        self.assertEqual((back.n, back.m), (1, 2))

        sig = ic.deserialize(ic.serialize(ic.Signature((3, 1, 0))))
        self.assertEqual(sig, ic.Signature((3, 1, 0)))

        M = np.array([[1 + 2j, 0.5], [-1j, 3]])
        np.testing.assert_array_equal(ic.deserialize(ic.serialize(M)), M)

    def test_complex_layout(self):
        doc = json.loads(ic.serialize(np.array([[1 - 2j, 3]])))
        self.assertEqual(doc, {"type": "matrix", "rows": 1, "cols": 2, "data": [[1.0, -2.0], [3.0, 0.0]]})

    def test_files(self):
        g = ic.random_colligation(1, 1, 2, seed=4)
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp).joinpath("g.json")
            ic.save(g, path)
            assert_allclose(ic.load(path).U, g.U)

    def test_unsupported_value(self):
        with self.assertRaises(TypeError):
            ic.serialize("not a matrix")


class TestErrors(unittest.TestCase):

    def test_non_unitary_colligation(self):
        doc = {
            "type": "colligation",
            "alpha": 1,
            "m": 1,
            "j": 0,
            "matrix": {"rows": 1, "cols": 1, "data": [[0.5, 0.0]]},
        }
        with self.assertRaises(InvariantViolation):
            ic.deserialize(json.dumps(doc))

    def test_shape_mismatch(self):
        doc = {
            "type": "colligation",
            "alpha": 1,
            "m": 1,
            "j": 1,
            "matrix": {"rows": 1, "cols": 1, "data": [[1.0, 0.0]]},
        }
        with self.assertRaises(InvariantViolation):
            ic.deserialize(json.dumps(doc))

    def test_invalid_signature(self):
        with self.assertRaises(InvariantViolation):
            ic.deserialize('{"type": "signature", "parts": [1, 2]}')

    def test_malformed_json(self):
        with self.assertRaises(ParseError) as ctx:
            ic.deserialize('{\n  "type": \n}')
        self.assertEqual(ctx.exception.line, 3)

    def test_unknown_type(self):
        with self.assertRaises(ParseError):
            ic.deserialize('{"type": "tensor"}')

    def test_bad_entries(self):
        with self.assertRaises(ParseError):
            ic.deserialize('{"type": "matrix", "rows": 1, "cols": 1, "data": [[1.0]]}')
        with self.assertRaises(ParseError):
            ic.deserialize('{"type": "matrix", "rows": 2, "cols": 1, "data": [[1.0, 0.0]]}')
        with self.assertRaises(ParseError):
            ic.deserialize('{"type": "matrix", "rows": "1", "cols": 1, "data": [[1.0, 0.0]]}')

    def test_negative_dimensions(self):
        for text in (
            '{"type": "matrix", "rows": -1, "cols": -1, "data": [[0, 0]]}',
            '{"type": "matrix", "rows": 1, "cols": -2, "data": []}',
        ):
            with self.assertRaises(ParseError) as ctx:
                ic.deserialize(text)
            self.assertIn("nonnegative", str(ctx.exception))

    def test_field_errors_are_located(self):
        text = '{\n  "type": "matrix",\n  "rows": 1,\n  "cols": true,\n  "data": []\n}'
        with self.assertRaises(ParseError) as ctx:
            ic.deserialize(text)
        self.assertEqual((ctx.exception.line, ctx.exception.column), (4, 3))
        self.assertEqual(ctx.exception.field, "cols")
        self.assertIn("line 4, column 3", str(ctx.exception))

    def test_missing_field_has_no_position(self):
        with self.assertRaises(ParseError) as ctx:
            ic.deserialize('{"type": "matrix", "rows": 1}')
        self.assertIsNone(ctx.exception.line)
        self.assertIsNone(ctx.exception.column)
        self.assertNotIn("line", str(ctx.exception))

    def test_documents_without_text(self):
        with self.assertRaises(ParseError) as ctx:
            ic.from_document({"type": "matrix", "rows": -1, "cols": 1, "data": []})
        self.assertIsNone(ctx.exception.line)


if __name__ == '__main__':
    unittest.main()
