# Copyright 2026 The zeno-dark Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import math
from pathlib import Path

import numpy as np
import pytest

import zeno_dark

ROOT = Path(__file__).resolve().parents[2]
K = np.diag([0.0, 1.0, 2.0]).astype(complex)
F0 = np.ones(3, dtype=complex) / math.sqrt(3)
PSI0 = np.array([1, -1, 0], dtype=complex) / math.sqrt(2)
ZERO = np.zeros((3, 3), dtype=complex)


def test_three_level_frequencies():
    r = 1 / math.sqrt(3)
    out = zeno_dark.three_level_frequencies([r, r, r], [0, 1, 2])
    assert out["omega_plus"] == pytest.approx(1 + r, abs=1e-12)
    assert out["omega_minus"] == pytest.approx(1 - r, abs=1e-12)


def test_zeno_spectrum():
    sp = zeno_dark.zeno_spectrum(ZERO, K, F0, PSI0)
    assert sp["omegas"] == pytest.approx([-1 - 1 / math.sqrt(3), -1 + 1 / math.sqrt(3)], abs=1e-12)
    assert np.abs(sp["modes"].conj().T @ F0).max() < 1e-12


def test_continuous_run_stays_dark():
    traj = zeno_dark.continuous_dark_run(PSI0, K, F0, ZERO, 2.0, 1e-3)
    assert traj["states"].shape == (2001, 3)
    assert max(traj["orthogonality_residual"]) < 1e-8
    assert max(abs(1 - n) for n in traj["norms"]) < 1e-10


def test_discrete_run_loses_norm():
    tau = 0.01
    f1 = np.exp(-1j * np.diag(K) * tau) * F0
    psi = PSI0 - f1 * np.vdot(f1, PSI0)
    traj = zeno_dark.discrete_dark_run(psi / np.linalg.norm(psi), K, F0, ZERO, tau, 10)
    norms = traj["norms"]
    assert all(b <= a + 1e-15 for a, b in zip(norms, norms[1:]))


def test_mode_design():
    d = zeno_dark.mode_design([0.5, 0.25, 0.25], [0.0, 2.0, -2.0])
    assert d["normalization"] == pytest.approx(1 / math.sqrt(2))
    with pytest.raises(zeno_dark.PhysicsError):
        zeno_dark.mode_design([0.5, 0.25, 0.25], [0.0, 2.0, -1.0])


def test_errors_map_to_python_exceptions():
    with pytest.raises(zeno_dark.PhysicsError, match="orthogonality precondition"):
        zeno_dark.continuous_dark_run(F0, K, F0, ZERO, 1.0, 0.01)
    with pytest.raises(ValueError):
        zeno_dark.run({"hamiltonian": "zero"})


def test_run_scenario_file(tmp_path):
    summary = zeno_dark.run(ROOT / "scenarios" / "three_level_spectrum.json", "spectrum", out=tmp_path)
    assert summary["omegas"][0] == pytest.approx(-1.5773502691896257, abs=1e-12)
    assert (tmp_path / "three_level_spectrum_summary.json").exists()
