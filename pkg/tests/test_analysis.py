import random

import pytest

from cssgauge import catalog
from cssgauge.analysis import (
    code_parameters,
    commuting_check,
    components,
    find_noncommuting_pair,
    is_self_dual,
    match_against_builder,
    stabilizer_span_equal,
    term_qubit_dot,
)
from cssgauge.builders import build_bacon_shor, build_gcc, build_toric
from cssgauge.codes import CssSubsystemCode
from cssgauge.gf2 import BitVec
from cssgauge.pauli import Hamiltonian, PauliOp, Term
from cssgauge.ungauge import strip_identity_terms


@pytest.fixture(scope="module")
def gcc_images():
    return catalog.gcc_phase_hamiltonians(2)


def test_code_parameters_examples():
    bs = code_parameters(build_bacon_shor(3))
    assert (bs.n, bs.gauge_rank, bs.stabilizer_rank, bs.k, bs.gauge_qubits) == (9, 12, 4, 1, 4)
    assert code_parameters(build_toric(2, 3, 1)).k == 2
    gcc = code_parameters(build_gcc(2))
    assert gcc.k == 0                       # the claimed value, via the true center
    assert gcc.stabilizer_rank == 44
    assert (gcc.gauge_rank - gcc.stabilizer_rank) % 2 == 0
    assert 0 <= gcc.k <= gcc.n


def test_components_gcc_z_image(gcc_images):
    img, _ = strip_identity_terms(gcc_images["image_Z"])
    rep = components(img)
    assert rep.count == 6
    assert rep.sizes() == [16, 16, 16, 16, 24, 24]
    classes = {}
    for e, cls in enumerate(gcc_images["model"].extra["edge_classes"]):
        classes.setdefault(cls, set()).add(e)
    assert set(rep.qubit_sets()) == {frozenset(v) for v in classes.values()}


def test_components_gcc_y_image(gcc_images):
    img, _ = strip_identity_terms(gcc_images["image_Y"])
    rep = components(img)
    assert rep.count == 3
    assert rep.sizes() == [32, 32, 48]
    assert commuting_check(img)


def test_components_paramagnet_singletons(gcc_images):
    img, _ = strip_identity_terms(gcc_images["image_X"])
    rep = components(img)
    assert rep.count == img.n == 112
    assert all(len(c.qubits) == 1 for c in rep.components)


def test_components_invariant_under_order_and_relabeling(gcc_images):
    img, _ = strip_identity_terms(gcc_images["image_Y"])
    rng = random.Random(4)
    shuffled = Hamiltonian(img.n, list(img.terms))
    rng.shuffle(shuffled.terms)
    perm = list(range(img.n))
    rng.shuffle(perm)
    relabeled = shuffled.relabel_qubits(dict(enumerate(perm)))
    rep0, rep1 = components(img), components(relabeled)
    assert rep0.count == rep1.count
    assert rep0.sizes() == rep1.sizes()


def test_component_weight_histograms(gcc_images):
    img, _ = strip_identity_terms(gcc_images["image_Z"])
    rep = components(img)
    for c in rep.components:
        assert c.weight_histogram in ({4: 24}, {6: 16})


def test_gcc_cd_component_terms_are_link_images(gcc_images):
    model = gcc_images["model"]
    lattice = model.code.lattice
    img, _ = strip_identity_terms(gcc_images["image_Z"])
    rep = components(img)
    classes = model.extra["edge_classes"]
    cd_qubits = frozenset(e for e, c in enumerate(classes) if c == "cd")
    comp = next(c for c in rep.components if c.qubits == cd_qubits)
    got = sorted(img.terms[i].op.z.bits for i in comp.term_indices)
    expected = sorted(
        BitVec.from_support(img.n, lattice.link(1, 1, e)).bits
        for e, c in enumerate(classes) if c == "ab")
    assert got == expected


def test_gcc_ab_component_matches_cubic_toric_plaquettes(gcc_images):
    model = gcc_images["model"]
    lattice = model.code.lattice
    img, _ = strip_identity_terms(gcc_images["image_Z"])
    rep = components(img)
    classes = model.extra["edge_classes"]
    ab_qubits = frozenset(e for e, c in enumerate(classes) if c == "ab")
    comp = next(c for c in rep.components if c.qubits == ab_qubits)

    toric = build_toric(3, 2, 1)
    # ab edges are labeled like the cubic lattice edges; Z-only reference.
    reference = CssSubsystemCode(
        "toric-z", toric.n, gauge_x=[], gauge_z=list(toric.stabilizer_z),
        stabilizer_x=[], stabilizer_z=list(toric.stabilizer_z),
        qubit_labels=toric.qubit_labels)
    correspondence = {}
    for e in ab_qubits:
        label = lattice.cells[1][e].removeprefix("ab:")
        correspondence[e] = toric.lattice.index(1, label)
    assert match_against_builder(img, comp, reference, correspondence)


def test_match_negative_control(gcc_images):
    model = gcc_images["model"]
    lattice = model.code.lattice
    img, _ = strip_identity_terms(gcc_images["image_Z"])
    rep = components(img)
    classes = model.extra["edge_classes"]
    ab_qubits = frozenset(e for e, c in enumerate(classes) if c == "ab")
    comp = next(c for c in rep.components if c.qubits == ab_qubits)
    toric = build_toric(3, 2, 1)
    reference = CssSubsystemCode(
        "toric-z", toric.n, gauge_x=[], gauge_z=list(toric.stabilizer_z),
        stabilizer_x=[], stabilizer_z=list(toric.stabilizer_z),
        qubit_labels=toric.qubit_labels)
    ordered = sorted(ab_qubits)
    shifted = {e: toric.lattice.index(1, lattice.cells[1][nxt].removeprefix("ab:"))
               for e, nxt in zip(ordered, ordered[1:] + ordered[:1])}
    assert not match_against_builder(img, comp, reference, shifted)


def test_match_requires_bijection(gcc_images):
    img, _ = strip_identity_terms(gcc_images["image_Z"])
    rep = components(img)
    comp = rep.components[0]
    toric = build_toric(3, 2, 1)
    with pytest.raises(ValueError):
        match_against_builder(img, comp, toric, {})


def test_is_self_dual():
    assert is_self_dual(build_gcc(2))
    assert not is_self_dual(build_bacon_shor(3))
    assert not is_self_dual(build_toric(2, 3, 1))


def test_commuting_check_counterexample():
    h = Hamiltonian(2)
    h.add(Term("x", "J", PauliOp.x_op(2, [0])))
    h.add(Term("z", "J", PauliOp.z_op(2, [0])))
    assert not commuting_check(h)
    assert find_noncommuting_pair(h) == (0, 1)


def test_stabilizer_span_equal():
    code = build_bacon_shor(3)
    assert stabilizer_span_equal(code.stabilizer_ops(), code.derived_center())
    assert not stabilizer_span_equal(code.stabilizer_ops(), code.gauge_ops())


def test_term_qubit_dot():
    h = Hamiltonian(2)
    h.add(Term("t0", "J", PauliOp.x_op(2, [0, 1])))
    dot = term_qubit_dot(h)
    assert '"t0" -- "q0";' in dot and '"t0" -- "q1";' in dot
