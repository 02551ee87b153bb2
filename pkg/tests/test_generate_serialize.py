import json
import os
import random

import pytest
from hypothesis import given, strategies as st

from hhshadow import fixtures
from hhshadow.generate import generate, random_mackey
from hhshadow.mackey.functor import MackeyFunctor
from hhshadow.ringbimod import Algebra
from hhshadow.serialize import (
    InputError,
    algebra_from_json,
    algebra_to_json,
    bimodule_from_json,
    bimodule_to_json,
    dumps,
    green_from_json,
    load_json,
    pair_from_json,
    tower_from_json,
)
from conftest import FIXTURES


def test_seed_zero_algebra_matches_committed_fixture():
    assert generate("algebra", 0, 2) == load_json(os.path.join(FIXTURES, "generated_algebra_seed0.json"))


@given(st.sampled_from(["algebra", "pair", "triple", "mackey"]), st.integers(0, 1000))
def test_generate_is_deterministic(kind, seed):
    assert dumps(generate(kind, seed, 2, 2)) == dumps(generate(kind, seed, 2, 2))


def test_size_bound_zero_gives_zero_objects():
    assert Algebra.from_json(generate("algebra", 0, 0)).group.is_trivial()
    M = MackeyFunctor.from_json(generate("mackey", 0, 0, 2))
    assert all(f == (0, []) for f in M.canonical_forms().values())


@given(st.integers(0, 1000), st.sampled_from([2, 3, 4]))
def test_random_mackey_passes_axioms(seed, m):
    M = random_mackey(random.Random(seed), m, 2)
    assert not M.axiom_failures(first_only=True)
    assert not MackeyFunctor.from_json(M.to_json()).axiom_failures(first_only=True)


@given(st.integers(0, 1000))
def test_generated_pairs_load(seed):
    obj = generate("pair", seed, 2)
    A = algebra_from_json(obj["A"])
    M = bimodule_from_json(obj["M"])
    assert M.left_algebra.group.canonical_form() == A.group.canonical_form()


@pytest.mark.parametrize("name", sorted(fixtures.ALGEBRAS))
def test_algebra_round_trip(name):
    A = fixtures.algebra(name)
    B = algebra_from_json(json.loads(dumps(algebra_to_json(A))))
    assert B.mult == A.mult and B.group.relations == A.group.relations


def test_bimodule_round_trip():
    d = fixtures.morita_pair("z2_vs_m2z2")
    M = bimodule_from_json(json.loads(dumps(bimodule_to_json(d.M))))
    assert M.left == d.M.left and M.right == d.M.right


@pytest.mark.parametrize("name", sorted(fixtures.PAIRS))
def test_explicit_pair_files_load(name):
    from hhshadow.ringbimod import check_morita
    d = pair_from_json({"file": f"{name}_explicit.json"}, base=__import__("pathlib").Path(FIXTURES))
    assert check_morita(d).passed


def test_corpus_matches_committed_files():
    for fname, obj in fixtures.corpus().items():
        assert load_json(os.path.join(FIXTURES, fname)) == json.loads(json.dumps(obj)), fname


def test_green_and_tower_fixtures_load():
    for name in fixtures.GREEN:
        assert not green_from_json(name).failures(first_only=True)
    for name in fixtures.TOWERS:
        assert tower_from_json(name).stages == 3


def test_parse_error_reports_position(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{\n  "group": [1,\n}')
    with pytest.raises(InputError, match="line 3, column 1"):
        load_json(p)


def test_unknown_fixture_name():
    with pytest.raises(KeyError):
        algebra_from_json("no_such_algebra")
