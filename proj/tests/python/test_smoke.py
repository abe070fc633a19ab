# Copyright 2026 The lrmf Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import math

import pytest

import lrmf


def test_schedule_values():
    values = lrmf.schedule("exponential", 3, 0.25)
    assert values[0] == 1.0
    assert values[1] == pytest.approx(0.5)
    assert values[2] == 0.25


def test_schedule_rejects_bad_beta():
    with pytest.raises(ValueError):
        lrmf.schedule("linear", 4, 0.0)


def test_factorize_and_errors():
    f = lrmf.factorize("exponential", 64, 0.1, "lr_aware")
    assert f.n == 64
    assert f.residual <= 1e-9 * 64
    assert f.max_se() >= f.mean_se() > 0.0

    ident = lrmf.factorize("linear", 25, 0.5, "identity_left")
    assert ident.max_se() == pytest.approx(5.0)
    assert ident.mean_se() == pytest.approx(5.0)


def test_lower_bound_dominance():
    bounds = lrmf.lower_bounds("cosine", 128, 0.2)
    f = lrmf.factorize("cosine", 128, 0.2, "square_root")
    assert f.max_se() >= bounds["lb_maxse"]
    assert f.mean_se() >= bounds["lb_meanse"]


def test_multi_sensitivity_example():
    c = [[1.0] * (i + 1) + [0.0] * (3 - i) for i in range(4)]
    assert lrmf.sensitivity_multi(c, b=2, mode="exact") == pytest.approx(
        math.sqrt(10.0)
    )


def test_evaluate_dict():
    r = lrmf.evaluate("exponential", 32, 0.3, "prefix_sqrt", b=8)
    assert set(r) >= {"sensitivity", "maxse", "meanse", "multi_error"}
    assert r["maxse"] >= r["meanse"]


def test_regularity():
    r = lrmf.regularity("exponential", 1024, 0.1, c=10.0)
    assert r["passes_aggregate"]


def test_simulator_noise_free_descent():
    out = lrmf.simulate_quadratic("constant", 50, 1.0, "square_root", eta=0.2)
    assert out["losses"][-1] < out["losses"][0]
    assert all(v == 0.0 for v in out["noise_norms"])
