import json

import pytest

from monodromy import (
    HypothesisInstance,
    IntMatrix,
    NotSymplectic,
    Polarization,
    Scenario,
    ScenarioError,
    WildRamification,
    generate_hypothesis_instances,
    load_scenario,
    scenario_from_dict,
)
from monodromy.torsion import fixes_pointwise

MINUS = [[-1, 0], [0, -1]]


def minimal(**extra):
    obj = {"d": 1, "p": 0, "tau": [[1, 0], [0, 1]], "seed": 0}
    obj.update(extra)
    return obj


class TestScenarioParsing:
    def test_minimal_round_trip(self):
        s = scenario_from_dict(minimal())
        assert s.dimension == 1
        assert s.residue_char == 0
        assert s.tau == IntMatrix.identity(2)
        assert s.polarization is None
        assert s.level is None
        assert not s.strictly_henselian
        assert scenario_from_dict(s.to_json_dict()) == s

    def test_full_round_trip(self):
        obj = minimal(
            tau=MINUS,
            p=3,
            n=5,
            polarization=[[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]],
        )
        obj["polarization"] = [[2, 0], [0, 2]]
        obj["flags"] = {"strictly_henselian": True}
        s = scenario_from_dict(obj)
        assert s.level == 5
        assert s.polarization.degree == 4
        assert s.strictly_henselian
        assert scenario_from_dict(s.to_json_dict()) == s

    def test_generator_is_validated(self):
        with pytest.raises(NotSymplectic):
            scenario_from_dict(minimal(tau=[[2, 0], [0, 1]]))
        with pytest.raises(WildRamification):
            scenario_from_dict(minimal(tau=MINUS, p=2))

    @pytest.mark.parametrize(
        "obj,fragment",
        [
            ([1, 2], "must be a JSON object"),
            ({"p": 0, "tau": [[1, 0], [0, 1]], "seed": 0}, "missing required field 'd'"),
            (minimal(d="one"), "field 'd' must be an integer"),
            (minimal(d=True), "field 'd' must be an integer"),
            (minimal(d=0), "field 'd' must be >= 1"),
            (minimal(p=1), "must be 0 or a prime"),
            ({"d": 1, "p": 0, "seed": 0}, "missing required field 'tau'"),
            (minimal(tau=[]), "nonempty list of rows"),
            (minimal(tau=[[1, "x"], [0, 1]]), "integers only"),
            (minimal(tau=[[1, 0], [0]]), "rows of unequal length"),
            (minimal(tau=[[1]]), "must be 2 x 2 for d = 1"),
            ({"d": 1, "p": 0, "tau": [[1, 0], [0, 1]]}, "missing required field 'seed'"),
            (minimal(polarization=[[1]]), "field 'polarization' must be 2 x 2"),
            (minimal(n=0), "field 'n' must be >= 1"),
            (minimal(flags=[]), "field 'flags' must be an object"),
            (minimal(flags={"fast": True}), "unknown flags"),
            (minimal(flags={"strictly_henselian": 1}), "must be a boolean"),
        ],
    )
    def test_rejects_with_named_field(self, obj, fragment):
        with pytest.raises(ScenarioError, match=fragment):
            scenario_from_dict(obj)

    def test_load_scenario(self, tmp_path):
        path = tmp_path / "s.json"
        path.write_text(json.dumps(minimal(tau=MINUS, p=3)))
        s = load_scenario(str(path))
        assert s.tau == IntMatrix(MINUS)

        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        with pytest.raises(ScenarioError, match="invalid JSON"):
            load_scenario(str(bad))


class TestHypothesisInstances:
    FAMILIES = ("neron2", "neron3", "neron4a", "neron4b", "quartic")

    @pytest.mark.parametrize("family", FAMILIES)
    def test_instances_satisfy_contract(self, family):
        instances = generate_hypothesis_instances(family, 8, 2, seed=5)
        assert len(instances) == 8
        for inst in instances:
            assert inst.family == family
            assert inst.matrix == inst.conjugator @ inst.base @ inst.conjugator_inverse
            assert inst.conjugator @ inst.conjugator_inverse == IntMatrix.identity(
                inst.matrix.rows
            )
            gen = inst.generator()
            assert gen.residue_char == inst.residue_char
            assert inst.witness is not None
            assert fixes_pointwise(
                inst.matrix.reduce_mod(inst.level), inst.witness
            )

    def test_levels_per_family(self):
        levels = {
            f: generate_hypothesis_instances(f, 1, 1, seed=0)[0].level
            for f in self.FAMILIES
        }
        assert levels == {
            "neron2": 2,
            "neron3": 3,
            "neron4a": 4,
            "neron4b": 4,
            "quartic": 2,
        }

    def test_neron4a_trivial_on_two_torsion(self):
        for inst in generate_hypothesis_instances("neron4a", 10, 2, seed=1):
            displaced = inst.matrix - IntMatrix.identity(inst.matrix.rows)
            assert displaced.reduce_mod(2).is_zero()

    def test_deterministic(self):
        a = generate_hypothesis_instances("neron3", 5, 2, seed=9)
        b = generate_hypothesis_instances("neron3", 5, 2, seed=9)
        assert a == b
        c = generate_hypothesis_instances("neron3", 5, 2, seed=10)
        assert a != c

    def test_unknown_family(self):
        with pytest.raises(ScenarioError, match="unknown instance family"):
            generate_hypothesis_instances("neron5", 1, 1, seed=0)

    def test_instance_scenario(self):
        inst = generate_hypothesis_instances("neron2", 1, 2, seed=3)[0]
        s = inst.scenario(seed=4)
        assert isinstance(s, Scenario)
        assert s.tau == inst.matrix
        assert s.level == inst.level
        assert s.seed == 4
        assert scenario_from_dict(s.to_json_dict()) == s
