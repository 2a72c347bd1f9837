import pytest

from cklie.ck_space import CANONICAL_SPACES, KappaPair
from cklie.config import DEFAULT_SEED, DEFAULT_TOLERANCES, ConfigError, ExperimentConfig, load_config, parse_config
from cklie.lie_hamilton import constant, polynomial, sinusoid

FULL = """\
space: anti_de_sitter
coefficients:
  b1: {kind: sinusoid, a: 1.0, omega: 2.0, phi: 0.3}
  b2: {kind: constant, c: "0.5"}
  b3: {kind: polynomial, coeffs: [0.0, 1.0]}
initial_points: [[0.1, 0.2], [-0.3, 0.1], [0.25, -0.3]]
time: {t0: 0.0, t1: 2.0, step: 1.0e-2}
samples: 40
spaces: [sphere, de_sitter]
seed: 7
tolerances: {superposition: 1.0e-6}
"""


def test_full_config():
    cfg = parse_config(FULL)
    assert cfg.kp == CANONICAL_SPACES["anti_de_sitter"]
    assert cfg.coefficients.b1 == sinusoid(1.0, 2.0, 0.3)
    assert cfg.coefficients.b2 == constant(0.5)
    assert cfg.coefficients.b3 == polynomial(0.0, 1.0)
    assert cfg.initial_points == [(0.1, 0.2), (-0.3, 0.1), (0.25, -0.3)]
    assert (cfg.t0, cfg.t1, cfg.step, cfg.samples, cfg.seed) == (0.0, 2.0, 0.01, 40, 7)
    assert cfg.spaces == ["sphere", "de_sitter"]
    assert cfg.tolerances["superposition"] == 1e-6
    assert cfg.tolerances["drift"] == DEFAULT_TOLERANCES["drift"]


def test_empty_config_gives_defaults():
    cfg = parse_config("")
    assert cfg.seed == DEFAULT_SEED and cfg.tolerances == DEFAULT_TOLERANCES
    assert cfg.spaces == list(CANONICAL_SPACES)


def test_kappa_pair():
    assert parse_config("kappa: [2.0, -0.5]\n").kp == KappaPair(2.0, -0.5)
    assert parse_config("spaces: all\n").spaces == list(CANONICAL_SPACES)


@pytest.mark.parametrize(
    "text, line, fragment",
    [
        ("space: sphere\nbogus: 1\n", 2, "unknown key 'bogus'"),
        ("space: torus\n", 1, "unknown space"),
        ("space: sphere\nkappa: [1, 1]\n", 2, "either"),
        ("time:\n  t0: 0\n  dt: 1\n", 3, "unknown key 'dt'"),
        ("time: {t0: 1, t1: 0}\n", 1, "t1 must exceed"),
        ("time: {step: -1}\n", 1, "positive"),
        ("seed: -3\n", 1, "seed"),
        ("samples: 0\n", 1, "samples"),
        ("tolerances:\n  superposition: 1e-5\n  nonsense: 2\n", 3, "unknown key 'nonsense'"),
        ("initial_points:\n  - [0, 0]\n  - [1, 2, 3]\n", 3, "pair"),
        ("coefficients:\n  b1: {kind: constant, c: 1}\n  b2: {kind: constant, c: 1}\n", 2, "needs b3"),
        (
            "coefficients:\n  b1: {kind: constant, c: 1}\n  b2: {kind: cubic}\n  b3: {kind: constant, c: 1}\n",
            3,
            "b2",
        ),
        ("kappa: [1, x]\n", 1, "number"),
        ("spaces: [sphere, moon]\n", 1, "unknown space"),
        ("space: [\n", 2, "invalid YAML"),
    ],
)
def test_errors_carry_line_numbers(text, line, fragment):
    with pytest.raises(ConfigError) as info:
        parse_config(text)
    assert info.value.line == line
    assert fragment in str(info.value)


def test_overrides():
    cfg = ExperimentConfig().with_overrides(seed=11, tolerances={"drift": 1e-3})
    assert cfg.seed == 11 and cfg.tolerances["drift"] == 1e-3
    with pytest.raises(ConfigError):
        ExperimentConfig().with_overrides(tolerances={"nope": 1})


def test_load_config(tmp_path):
    path = tmp_path / "run.yaml"
    path.write_text(FULL)
    assert load_config(path).samples == 40
