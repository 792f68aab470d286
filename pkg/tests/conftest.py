"""Shared helpers: bit packing for classical traces and random-state tools."""
import numpy as np
import pytest

from sharq import SimulationContext


def bits_of(value: int, width: int, qubits) -> int:
    """Read the big-endian content of ``qubits`` out of a width-bit basis label."""
    out = 0
    for q in qubits:
        out = (out << 1) | ((value >> (width - 1 - q)) & 1)
    return out


def put_bits(value: int, width: int, qubits, content: int) -> int:
    """Write ``content`` (big-endian) into ``qubits`` of a width-bit basis label."""
    for i, q in enumerate(qubits):
        bit = (content >> (len(qubits) - 1 - i)) & 1
        position = width - 1 - q
        value = (value & ~(1 << position)) | (bit << position)
    return value


def random_state(rng: np.random.Generator, n_qubits: int) -> np.ndarray:
    vec = rng.normal(size=1 << n_qubits) + 1j * rng.normal(size=1 << n_qubits)
    return vec / np.linalg.norm(vec)


@pytest.fixture
def debug_ctx():
    def make(seed=0, qubit_cap=26):
        return SimulationContext(seed=seed, qubit_cap=qubit_cap, debug=True)

    return make
