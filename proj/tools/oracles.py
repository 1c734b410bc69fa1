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

"""Independent numpy/scipy reference values frozen into tests/unit.

Run: python3 tools/oracles.py
"""
import numpy as np
from scipy.linalg import expm, null_space

np.set_printoptions(precision=17)


def three_level():
    k = np.diag([0.0, 1.0, 2.0])
    f0 = np.ones(3) / np.sqrt(3)
    return k, f0


def f_of(k, f0, t):
    return expm(-1j * k * t) @ f0


def discrete_deficit(tau, total=1.0):
    k, f0 = three_level()
    psi = np.array([1.0, -1.0, 0.0]) / np.sqrt(2)
    f1 = f_of(k, f0, tau)
    psi = psi - f1 * np.vdot(f1, psi)
    psi /= np.linalg.norm(psi)
    steps = int(round(total / tau))
    for n in range(1, steps + 1):
        f = f_of(k, f0, n * tau)
        psi = psi - f * np.vdot(f, psi)
    return 1.0 - np.vdot(psi, psi).real


def comoving_closed_form(psi0, t):
    # H = 0: Psi(t) = exp(-iKt) exp(+i P0 K P0 t) Psi0
    k, f0 = three_level()
    p = np.eye(3) - np.outer(f0, f0.conj())
    return expm(-1j * k * t) @ expm(1j * p @ k @ p * t) @ psi0


def zeno_frequencies():
    k, f0 = three_level()
    q = null_space(f0.reshape(1, -1).conj())
    return np.linalg.eigvalsh(q.conj().T @ (-k) @ q)


def effective_hamiltonian_t0():
    k, f0 = three_level()
    fdot = -1j * k @ f0
    return 1j * (np.outer(fdot, f0.conj()) - np.outer(f0, fdot.conj()))


if __name__ == "__main__":
    print("zeno omegas", repr(zeno_frequencies()))
    print("H_D(0)", repr(effective_hamiltonian_t0()))
    for tau in (1e-2, 5e-3, 2.5e-3):
        print("deficit", tau, repr(discrete_deficit(tau)))
    psi0 = np.array([1.0, -1.0, 0.0]) / np.sqrt(2)
    print("closed form T=2", repr(comoving_closed_form(psi0, 2.0)))
    w = zeno_frequencies()
    print("cyclic fidelity^2", repr(np.cos((w[1] - w[0]) * np.pi) ** 2))
