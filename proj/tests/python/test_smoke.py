# Copyright 2026 The Condor Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#  http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import numpy as np
import pytest

import condor


def test_dataset_names():
    names = condor.dataset_names()
    assert "SEA200G" in names and "STA500G" in names


def test_generate_is_seeded():
    x1, y1 = condor.generate("SEA-recur", seed=3)
    x2, y2 = condor.generate("SEA-recur", seed=3)
    assert x1.shape == (800, 3)
    assert set(np.unique(y1)) <= {-1, 1}
    np.testing.assert_array_equal(x1, x2)
    np.testing.assert_array_equal(y1, y2)


def test_fit_recovers_separator():
    rng = np.random.default_rng(0)
    x = rng.uniform(-1, 1, size=(200, 2))
    y = np.where(x[:, 0] + x[:, 1] > 0, 1, -1).astype(np.int32)
    w, b = condor.fit(x, y, mu=200.0)
    pred = np.where(x @ w + b >= 0, 1, -1)
    assert (pred == y).mean() > 0.95


def test_run_dataset():
    cfg = condor.Config()
    cfg.p = 100
    cfg.use_detector = False
    out = condor.run_dataset("SEA-recur", seed=0, config=cfg)
    assert 0.8 < out["accuracy"] <= 1.0
    assert len(out["scores"]) == 800
    assert out["weight_identity_error"] < 1e-12
    assert max(out["pool_sizes"]) <= cfg.K


def test_run_arrays_matches_dataset_run():
    x, y = condor.generate("SEA-recur", seed=1)
    a = condor.run(x, y.astype(np.int32))
    b = condor.run_dataset("SEA-recur", seed=1)
    assert a["accuracy"] == b["accuracy"]


def test_adwin_detects_shift():
    det = condor.Adwin(delta=0.002)
    rng = np.random.default_rng(7)
    fired = False
    for v in (rng.random(2000) < 0.1).astype(float):
        fired |= det.insert(v).detected
    assert not fired
    for v in (rng.random(2000) < 0.9).astype(float):
        fired |= det.insert(v).detected
    assert fired


def test_bad_labels_raise():
    with pytest.raises(Exception):
        condor.run(np.zeros((3, 2)), np.array([0, 1, 1], dtype=np.int32))
