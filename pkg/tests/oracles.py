"""Independent reference computations used only by the tests."""

import itertools

import numpy as np

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.diag([1, -1]).astype(complex)
H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)


def rk(k, dagger=False):
    phase = np.exp((-1 if dagger else 1) * 2j * np.pi / 2 ** k)
    return np.diag([1, phase])


SINGLE = {
    "X": X, "Y": Y, "Z": Z, "H": H,
    "S": rk(2), "Sdg": rk(2, True), "T": rk(3), "Tdg": rk(3, True),
}


def single_matrix(g):
    if g.kind == "Rk":
        return rk(g.k)
    if g.kind == "RkDg":
        return rk(g.k, True)
    return SINGLE[g.kind]


def controlled_on(n, controls, target, u):
    """Full 2^n matrix; qubit 0 is the most significant bit."""
    dim = 2 ** n
    out = np.zeros((dim, dim), dtype=complex)
    for col in range(dim):
        bits = [(col >> (n - 1 - q)) & 1 for q in range(n)]
        if all(bits[c] for c in controls):
            t = bits[target]
            for new_t in (0, 1):
                amp = u[new_t, t]
                if amp != 0:
                    nb = list(bits)
                    nb[target] = new_t
                    row = sum(b << (n - 1 - q) for q, b in enumerate(nb))
                    out[row, col] += amp
        else:
            out[col, col] = 1
    return out


def gate_unitary(g, n):
    if g.kind == "CRk":
        return controlled_on(n, g.controls, g.target, rk(g.k))
    if g.is_single:
        return controlled_on(n, (), g.target, single_matrix(g))
    if g.kind in ("CNOT", "Toffoli", "MCT"):
        return controlled_on(n, g.controls, g.target, X)
    raise ValueError(g.kind)


def circuit_unitary(gates, n):
    u = np.eye(2 ** n, dtype=complex)
    for g in gates:
        u = gate_unitary(g, n) @ u
    return u


def classical_apply(gates, bits):
    """Run X/CNOT/Toffoli/MCT/Fredkin gates on a classical bit list."""
    bits = list(bits)
    for g in gates:
        if g.kind == "Fredkin":
            c, (a, b) = g.control, g.targets
            if bits[c]:
                bits[a], bits[b] = bits[b], bits[a]
        elif g.kind in ("X", "CNOT", "Toffoli", "MCT"):
            if all(bits[c] for c in g.controls):
                bits[g.target] ^= 1
        else:
            raise ValueError(g.kind)
    return bits


def same_truth_table(lhs, rhs, n):
    return all(classical_apply(lhs, bits) == classical_apply(rhs, bits)
               for bits in itertools.product((0, 1), repeat=n))


def balanced_splits(n):
    """Every side vector with |A| - |B| in {-1, 0, 1}."""
    for sides in itertools.product((0, 1), repeat=n):
        if abs(n - 2 * sum(sides)) <= 1:
            yield sides
