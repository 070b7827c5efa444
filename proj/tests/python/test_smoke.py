"""End-to-end smoke pass over the python bindings."""
import json
import unittest

import mpgduel


class SmokeTest(unittest.TestCase):
    def test_gallery_names(self):
        self.assertEqual(mpgduel.gallery_names(), ["fig2", "chase", "irrational", "integer"])

    def test_finite_values_round_trip(self):
        inst = mpgduel.gallery_instance("fig2")
        res = mpgduel.value_nonalt_finite(inst, 4)
        self.assertEqual(res["values"], ["0", "0", "-1", "0"])
        self.assertEqual(res["values_f64"][2], -1.0)
        self.assertEqual(len(res["alice_witness"]), 4)
        # the document round-trips through to_json/from_json
        again = mpgduel.GameInstance.from_json(inst.to_json())
        self.assertEqual(mpgduel.value_nonalt_finite(again, 4)["values"], res["values"])

    def test_alternating_and_bounds(self):
        inst = mpgduel.gallery_instance("chase")
        alt = mpgduel.value_alt_finite(inst, 5)
        self.assertEqual(alt["values"], ["1", "2", "3", "4", "5"])
        inf = mpgduel.value_alt_infinite(inst)
        self.assertEqual(inf["exact"], "1")
        b = mpgduel.value_nonalt_bounds(inst, 12)
        self.assertEqual((b["lower"], b["upper"]), ("0", "1/2"))

    def test_errors_are_pythonic(self):
        inst = mpgduel.gallery_instance("fig2")
        with self.assertRaises(ValueError):
            mpgduel.value_nonalt_bounds(inst, 12)  # reducible factor graphs
        with self.assertRaises(ValueError):
            mpgduel.GameInstance.from_json("{}")
        chase = mpgduel.gallery_instance("chase")
        with self.assertRaises(RuntimeError):
            mpgduel.value_nonalt_finite(chase, 9, node_cap=50)

    def test_covering_radius(self):
        r = mpgduel.covering_radius("11", 8)
        self.assertEqual(r["radius"], 4)
        self.assertEqual(r["method"], "game")
        a = mpgduel.asymptotic_covering_radius("1")
        self.assertEqual((a["lower"], a["upper"]), ("1", "1"))

    def test_trace_stays_plausible(self):
        inst = mpgduel.gallery_instance("chase")
        records = mpgduel.trace(inst, steps=40)
        self.assertEqual(len(records), 40)
        self.assertEqual(records[0]["alice"], "WW")
        self.assertLessEqual(abs(records[-1]["average_f64"]), 1.0)

    def test_cli_shim(self):
        code, out, err = mpgduel.cli(["covering-radius", "--forbidden", "11", "--n", "6"])
        self.assertEqual(code, 0)
        self.assertEqual(json.loads(out)["radius"], 3)
        self.assertIn("wall_time_ms=", err)
        code, _, _ = mpgduel.cli(["solve", "finite"])
        self.assertEqual(code, 2)

    def test_gallery_checks_pass(self):
        for entry in mpgduel.gallery_run("fig2"):
            self.assertTrue(entry["passed"], entry)


if __name__ == "__main__":
    unittest.main()
