import json

import pytest

from subcons.errors import InstanceError, ParameterError, SchemaError
from subcons.generators import generate
from subcons.instance import InstanceSpec, ProblemInstance
from subcons.oracles import CustomOracle, Modular


def test_problem_instance_validation():
    f, g = Modular([1.0, 2.0]), Modular([3.0, 1.0])
    p = ProblemInstance(f, g, budget=2.0)
    assert p.problem == "scsk" and p.bound == 2.0 and p.n == 2
    assert ProblemInstance(f, g, cover=4.0).problem == "scsc"
    with pytest.raises(ParameterError):
        ProblemInstance(f, g)
    with pytest.raises(ParameterError):
        ProblemInstance(f, g, cover=1.0, budget=1.0)
    with pytest.raises(ParameterError):
        ProblemInstance(f, g, budget=10.0)
    with pytest.raises(ParameterError):
        ProblemInstance(f, g, cover=0.5)
    with pytest.raises(InstanceError):
        ProblemInstance(f, Modular([1.0]), budget=1.0)
    with pytest.raises(InstanceError):
        ProblemInstance(Modular([1.0, 0.0]), g, budget=1.0)
    with pytest.raises(InstanceError):
        ProblemInstance(CustomOracle(2, lambda s: len(s) + 1.0), g, budget=2.0)


def test_spec_round_trip(tmp_path):
    spec = generate("speech-like", 8, 3)
    spec.write(tmp_path / "a.json")
    back = InstanceSpec.read(tmp_path / "a.json")
    assert back.to_dict() == spec.to_dict()
    f0, g0 = spec.build()
    f1, g1 = back.build()
    assert all(f0(b) == f1(b) and g0(b) == g1(b) for b in range(256))
    assert back.problem_instance().problem in ("scsc", "scsk")


def test_schema_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(SchemaError):
        InstanceSpec.read(bad)
    doc = generate("modular-pair", 4, 0).to_dict()
    del doc["f"]
    with pytest.raises(SchemaError):
        InstanceSpec.from_dict(doc)
    doc = generate("modular-pair", 4, 0).to_dict()
    doc["n"] = 5
    with pytest.raises(SchemaError):
        InstanceSpec.from_dict(json.loads(json.dumps(doc))).build()
