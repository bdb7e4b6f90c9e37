from monodromy import (
    IntMatrix,
    Scenario,
    build_report,
    canonical_json,
    render_text,
)
from monodromy.catalog import catalog_matrices

MINUS_P3 = Scenario(1, 3, IntMatrix([[-1, 0], [0, -1]]))
SHEAR_P7 = Scenario(1, 7, IntMatrix([[1, 1], [0, 1]]))


class TestBuildReport:
    def test_additive_potentially_good_scenario(self):
        r = build_report(MINUS_P3)
        assert r["semistable"] is False
        assert r["potentially_good"] is True
        assert r["min_degree"] == 2
        assert (r["a"], r["u"], r["t"]) == (0, 1, 0)
        assert r["phi"] == [2, 2]
        assert r["phi_prime"] == [2, 2]
        # level 3 is wild here and must be absent
        assert r["torsion"] == {
            "2": {"fixed_order": 4, "structure": [2, 2]},
            "4": {"fixed_order": 4, "structure": [2, 2]},
        }

    def test_verdict_battery_order(self):
        ids = [v["id"] for v in build_report(MINUS_P3)["verdicts"]]
        assert ids == [
            "raynaud-4",
            "level-structure",
            "exceptional-degree",
            "quartic-semistability",
            "elliptic-a",
            "elliptic-b",
            "elliptic-c",
            "elliptic-d",
            "elliptic-e",
            "elliptic-f",
            "purely-additive-quadratic",
            "purely-additive-cubic",
            "neron2-shape",
            "neron2-index",
            "neron2-good",
            "neron4-structure",
            "neron4-index",
            "neron4-two-torsion",
            "neron4-phi",
            "neron4-good",
            "neron4-additive",
        ]

    def test_infinite_order_nulls(self):
        r = build_report(SHEAR_P7)
        assert r["semistable"] is True
        assert r["potentially_good"] is False
        assert r["min_degree"] == 1
        assert r["a"] is None
        assert r["u"] is None
        assert r["t"] is None
        assert r["phi"] is None
        assert r["phi_prime"] is None
        # torsion still reported through the plain fixed subgroup
        assert r["torsion"]["2"] == {"fixed_order": 2, "structure": [2]}
        ids = [v["id"] for v in r["verdicts"]]
        assert ids == [
            "raynaud-3",
            "raynaud-4",
            "level-structure",
            "exceptional-degree",
            "quartic-semistability",
            "elliptic-a",
            "elliptic-b",
            "elliptic-c",
            "elliptic-d",
            "elliptic-e",
            "elliptic-f",
        ]

    def test_level_override_adds_torsion_entry(self):
        r = build_report(MINUS_P3, level=5)
        assert set(r["torsion"]) == {"2", "4", "5"}
        assert r["torsion"]["5"] == {"fixed_order": 1, "structure": []}

    def test_verdict_dicts_have_no_witness_key(self):
        # witnesses are conjugation-dependent; reports stay invariant
        for v in build_report(MINUS_P3)["verdicts"]:
            assert set(v) == {"id", "hypothesis", "conclusion", "agree", "citation"}

    def test_catalog_never_disagrees(self):
        for mat in catalog_matrices(1):
            for p in (0, 5, 7):
                r = build_report(Scenario(1, p, mat))
                for v in r["verdicts"]:
                    assert v["agree"], (mat.data, p, v["id"])


class TestCanonicalJson:
    def test_stable_bytes(self):
        a = canonical_json(build_report(MINUS_P3))
        b = canonical_json(build_report(MINUS_P3))
        assert a == b

    def test_format(self):
        s = canonical_json({"b": 1, "a": [True, None]})
        assert s == '{"a":[true,null],"b":1}\n'

    def test_key_order_irrelevant(self):
        assert canonical_json({"x": 1, "y": 2}) == canonical_json({"y": 2, "x": 1})


class TestRenderText:
    def test_additive_scenario(self):
        text = render_text(build_report(MINUS_P3))
        assert "semistable:        False" in text
        assert "ranks:             a = 0, u = 1, t = 0" in text
        assert "components:        Z/2 x Z/2" in text
        assert "fixed 2-torsion:   order 4 (Z/2 x Z/2)" in text
        assert "DISAGREE" not in text
        assert text.endswith("\n")

    def test_infinite_order_scenario(self):
        text = render_text(build_report(SHEAR_P7))
        assert "ranks:             not potentially good" in text
        assert "minimal degree:    1" in text
