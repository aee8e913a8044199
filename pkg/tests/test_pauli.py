import random

import numpy as np
import pytest

from cssgauge.builders import build_bacon_shor
from cssgauge.pauli import (
    CliffordCircuit,
    GroupMembership,
    PauliOp,
    center_of_group,
    conjugate_by_circuit,
    group_rank,
    in_group,
    multiply,
    multiply_all,
    symplectic_product,
    transversal_hadamard,
)
from cssgauge.gf2 import BitVec

from tests.oracles import conjugate_dense, naive_rank, pauli_matrix


def random_pauli(n, rng):
    return PauliOp(n, BitVec(n, rng.getrandbits(n)), BitVec(n, rng.getrandbits(n)),
                   rng.randrange(4))


def random_circuit(n, depth, rng):
    gates = []
    for _ in range(depth):
        if n >= 2 and rng.random() < 0.5:
            gates.append(("CZ", *rng.sample(range(n), 2)))
        else:
            gates.append(("H", rng.randrange(n)))
    return CliffordCircuit(n, gates)


# -- symplectic product --------------------------------------------------


def test_symplectic_single_qubit():
    assert symplectic_product(PauliOp.x_op(2, [1]), PauliOp.z_op(2, [1])) == 1


def test_symplectic_odd_overlap():
    assert symplectic_product(PauliOp.x_op(4, [1, 2]), PauliOp.z_op(4, [2, 3])) == 1


def test_symplectic_even_overlap():
    assert symplectic_product(PauliOp.x_op(3, [1, 2]), PauliOp.z_op(3, [1, 2])) == 0


def test_symplectic_symmetric_bilinear():
    rng = random.Random(1)
    for _ in range(50):
        p, q, r = (random_pauli(6, rng) for _ in range(3))
        assert symplectic_product(p, q) == symplectic_product(q, p)
        qr = multiply(q, r)
        assert (symplectic_product(p, qr)
                == (symplectic_product(p, q) + symplectic_product(p, r)) % 2)


# -- multiplication --------------------------------------------------------


def test_multiply_x_times_z():
    p = multiply(PauliOp.x_op(1, [0]), PauliOp.z_op(1, [0]))
    assert (p.x.support, p.z.support, p.phase) == ((0,), (0,), 0)
    assert np.allclose(pauli_matrix(p), pauli_matrix(PauliOp.x_op(1, [0])) @ pauli_matrix(PauliOp.z_op(1, [0])))


def test_multiply_identity():
    rng = random.Random(2)
    p = random_pauli(5, rng)
    assert multiply(p, PauliOp.identity(5)) == p
    assert multiply(PauliOp.identity(5), p) == p


def test_multiply_xz_zx_two_qubits():
    p = PauliOp.from_xz(2, [0], [1])     # X_0 Z_1
    q = PauliOp.from_xz(2, [1], [0])     # Z_0 X_1
    prod = multiply(p, q)
    assert np.allclose(pauli_matrix(prod), pauli_matrix(p) @ pauli_matrix(q))
    assert np.allclose(pauli_matrix(prod), pauli_matrix(PauliOp.y_op(2, [0, 1])))


def test_multiply_against_dense_randomized():
    rng = random.Random(3)
    for _ in range(60):
        n = rng.randint(1, 5)
        p, q = random_pauli(n, rng), random_pauli(n, rng)
        assert np.allclose(pauli_matrix(multiply(p, q)), pauli_matrix(p) @ pauli_matrix(q))


def test_multiply_associative():
    rng = random.Random(4)
    for _ in range(40):
        p, q, r = (random_pauli(4, rng) for _ in range(3))
        assert multiply(multiply(p, q), r) == multiply(p, multiply(q, r))


def test_square_is_plus_minus_identity():
    rng = random.Random(5)
    for _ in range(30):
        p = random_pauli(4, rng)
        sq = multiply(p, p)
        assert sq.x.is_zero() and sq.z.is_zero() and sq.phase in (0, 2)
    y = PauliOp.y_op(3, [0, 2])
    assert multiply(y, y) == PauliOp.identity(3)


# -- conjugation ------------------------------------------------------------


def test_cz_on_x_tensor_i():
    circ = CliffordCircuit(2, [("CZ", 0, 1)])
    img = conjugate_by_circuit(PauliOp.x_op(2, [0]), circ)
    assert img == PauliOp.from_xz(2, [0], [1])


def test_cz_fixes_z_type():
    circ = CliffordCircuit(2, [("CZ", 0, 1)])
    zz = PauliOp.z_op(2, [0, 1])
    assert conjugate_by_circuit(zz, circ) == zz


def test_cz_on_x_tensor_x():
    circ = CliffordCircuit(2, [("CZ", 0, 1)])
    img = conjugate_by_circuit(PauliOp.x_op(2, [0, 1]), circ)
    assert np.allclose(pauli_matrix(img), conjugate_dense(PauliOp.x_op(2, [0, 1]), circ))
    assert img == PauliOp.y_op(2, [0, 1])


def test_hadamard_rules():
    circ = CliffordCircuit(1, [("H", 0)])
    assert conjugate_by_circuit(PauliOp.x_op(1, [0]), circ) == PauliOp.z_op(1, [0])
    assert conjugate_by_circuit(PauliOp.z_op(1, [0]), circ) == PauliOp.x_op(1, [0])
    y = PauliOp.y_op(1, [0])
    img = conjugate_by_circuit(y, circ)
    assert np.allclose(pauli_matrix(img), -pauli_matrix(y))


def test_conjugation_against_dense_randomized():
    rng = random.Random(6)
    for _ in range(60):
        n = rng.randint(1, 5)
        p = random_pauli(n, rng)
        circ = random_circuit(n, rng.randint(1, 8), rng)
        assert np.allclose(pauli_matrix(conjugate_by_circuit(p, circ)),
                           conjugate_dense(p, circ))


def test_conjugation_preserves_symplectic():
    rng = random.Random(7)
    for _ in range(40):
        n = rng.randint(2, 7)
        p, q = random_pauli(n, rng), random_pauli(n, rng)
        circ = random_circuit(n, 10, rng)
        assert symplectic_product(p, q) == symplectic_product(
            conjugate_by_circuit(p, circ), conjugate_by_circuit(q, circ))


def test_circuit_inverse_roundtrip():
    rng = random.Random(8)
    circ = random_circuit(5, 12, rng)
    p = random_pauli(5, rng)
    assert conjugate_by_circuit(conjugate_by_circuit(p, circ), circ.inverse()) == p


def test_transversal_hadamard_matches_circuit():
    rng = random.Random(9)
    for _ in range(20):
        p = random_pauli(4, rng)
        assert transversal_hadamard(p) == conjugate_by_circuit(
            p, CliffordCircuit.hadamard_all(4))


def test_circuit_validation():
    with pytest.raises(ValueError):
        CliffordCircuit(2, [("CZ", 0, 0)])
    with pytest.raises(ValueError):
        CliffordCircuit(2, [("H", 2)])
    with pytest.raises(ValueError):
        CliffordCircuit(2, [("SWAP", 0, 1)])


# -- group queries -----------------------------------------------------------


def test_group_rank_basic():
    assert group_rank([PauliOp.x_op(2, [1]), PauliOp.z_op(2, [1])]) == 2
    gens = [PauliOp.x_op(3, [0, 1]), PauliOp.x_op(3, [1, 2]), PauliOp.x_op(3, [0, 2])]
    assert group_rank(gens) == 2


def test_bacon_shor_gauge_rank():
    code = build_bacon_shor(3)
    ops = code.gauge_ops()
    # Independent oracle: dense elimination on the 18x18 symplectic rows.
    rows = [[op.symplectic_row().get(j) for j in range(18)] for op in ops]
    assert naive_rank(rows) == 12
    assert group_rank(ops) == 12


def test_center_abelian_input():
    gens = [PauliOp.x_op(3, [0, 1]), PauliOp.x_op(3, [1, 2])]
    center = center_of_group(gens)
    assert group_rank(center) == group_rank(gens) == group_rank(center + gens)


def test_center_bacon_shor():
    code = build_bacon_shor(3)
    center = center_of_group(code.gauge_ops())
    assert group_rank(center) == 4
    stabs = code.stabilizer_ops()
    assert group_rank(stabs + center) == 4  # same span as two-column/two-row ops


def test_in_group_basics():
    gens = [PauliOp.x_op(3, [0, 1]), PauliOp.z_op(3, [2])]
    assert in_group(gens[0], gens)
    assert in_group(multiply(gens[0], gens[1]), gens)
    assert not in_group(PauliOp.x_op(3, [0]), gens)


def test_in_group_sign_tracking():
    gens = [PauliOp.x_op(3, [0, 1]), PauliOp.z_op(3, [1, 2])]
    elem = multiply(gens[0], gens[1])
    minus = PauliOp(3, elem.x, elem.z, (elem.phase + 2) % 4)
    assert in_group(elem, gens, track_sign=True)
    assert in_group(minus, gens)                      # support-only membership
    assert not in_group(minus, gens, track_sign=True)


def test_group_membership_matches_in_group():
    rng = random.Random(10)
    gens = [random_pauli(5, rng) for _ in range(6)]
    membership = GroupMembership(gens)
    for _ in range(30):
        p = random_pauli(5, rng)
        assert membership.contains(p) == in_group(p, gens)


def test_label_roundtrip():
    p = PauliOp.from_label("-iXYZI")
    assert p.to_label() == "-iXYZI"
    assert PauliOp.from_label(p.to_label()) == p
    assert PauliOp.from_json(p.to_json()) == p


def test_multiply_all_empty():
    assert multiply_all([], n=3) == PauliOp.identity(3)
    with pytest.raises(ValueError):
        multiply_all([])
