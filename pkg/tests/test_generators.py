import numpy as np
import pytest

from subcons.errors import ParameterError
from subcons.generators import (
    GENERATORS,
    bipartite_utterances,
    generate,
    hardness_sizes,
    symmetric_similarity,
    zipf_vocabulary,
)
from subcons.oracles import HardnessPlain
from subcons.properties import check_polymatroid


@pytest.mark.parametrize("kind", sorted(GENERATORS))
def test_same_seed_same_bytes(kind):
    params = {"x2": 25} if kind == "hardness-pair" else {}
    n = 25 if kind == "hardness-pair" else 12
    a = generate(kind, n, 5, **params).to_json()
    b = generate(kind, n, 5, **params).to_json()
    c = generate(kind, n, 6, **params).to_json()
    assert a == b
    assert a != c


@pytest.mark.parametrize("kind", sorted(GENERATORS))
def test_generated_oracles_are_polymatroids(kind):
    params = {"x2": 25} if kind == "hardness-pair" else {}
    spec = generate(kind, 10, 1, **params) if kind != "hardness-pair" else generate(kind, 12, 1, alpha=4, beta=2)
    f, g = spec.build()
    assert check_polymatroid(f).passed and check_polymatroid(g).passed
    spec.problem_instance()


def test_similarity_is_symmetric_in_unit_interval():
    S = symmetric_similarity(9, np.random.default_rng(0))
    np.testing.assert_array_equal(S, S.T)
    assert S.min() > 0 and S.max() <= 1


def test_utterances_and_vocabulary():
    p = zipf_vocabulary(30)
    assert p.sum() == pytest.approx(1.0) and np.all(np.diff(p) < 0)
    adj = bipartite_utterances(40, 30, np.random.default_rng(1))
    assert all(3 <= len(u) <= 10 and len(set(u)) == len(u) for u in adj)
    with pytest.raises(ParameterError):
        bipartite_utterances(4, 5, np.random.default_rng(1))


def test_bound_fractions():
    spec = generate("speech-like", 10, 0)
    f, g = spec.build()
    assert spec.bound == {"budget": pytest.approx(max(f.singletons().min(), 0.3 * f(f.full)))}
    spec = generate("modular-pair", 10, 0, cover_frac=0.5)
    f, g = spec.build()
    assert spec.bound["cover"] == pytest.approx(0.5 * g(g.full))
    assert np.all(f.modular_weights() == np.round(f.modular_weights()))


def test_hardness_sizes_and_record():
    assert hardness_sizes(100, 25) == (10, 5)
    assert hardness_sizes(2500, 50) == (70, 10)
    spec = generate("hardness-pair", 100, 3, x2=25)
    f, g = spec.build()
    assert spec.bound == {"cover": 10.0}
    assert len(f.hidden) == 10 and f.beta == 5
    plain = spec.params["plain"]
    assert HardnessPlain(100, plain["kappa"], plain["alpha"])(range(10)) == 10.0
    with pytest.raises(ParameterError):
        generate("hardness-pair", 4, 0, x2=1)
    with pytest.raises(ParameterError):
        generate("hardness-pair", 4, 0)
    with pytest.raises(ParameterError):
        hardness_sizes(10, 0)


def test_invalid_requests():
    with pytest.raises(ParameterError):
        generate("nope", 5, 0)
    with pytest.raises(ParameterError):
        generate("modular-pair", 0, 0)
