import pytest

from cssgauge import catalog
from cssgauge.analysis import commuting_check, components
from cssgauge.builders import build_bacon_shor, build_fractal_code, build_gcc, build_toric
from cssgauge.codes import stabilizer_hamiltonian
from cssgauge.gf2 import BitVec
from cssgauge.pauli import (
    Hamiltonian,
    PauliOp,
    Term,
    conjugate_by_circuit,
    symplectic_product,
)
from cssgauge.sptwall import (
    Region,
    domain_wall,
    dual_code,
    find_cz_disentangler,
    pairing_circuit,
    spt_pipeline,
    tensor_code,
    transversal_cz_is_logical,
)
from cssgauge.ungauge import strip_identity_terms


def test_dual_is_involution():
    code = build_fractal_code(3)
    again = dual_code(dual_code(code))
    assert [v.bits for v in again.stabilizer_x] == [v.bits for v in code.stabilizer_x]
    assert [v.bits for v in again.stabilizer_z] == [v.bits for v in code.stabilizer_z]


def test_dual_swaps_generators():
    code = build_fractal_code(3)
    dual = dual_code(code)
    assert [v.bits for v in dual.stabilizer_x] == [v.bits for v in code.stabilizer_z]
    assert [v.bits for v in dual.stabilizer_z] == [v.bits for v in code.stabilizer_x]


def test_dual_of_self_dual_listing():
    gcc = build_gcc(2)
    dual = dual_code(gcc)
    assert [v.bits for v in dual.gauge_x] == [v.bits for v in gcc.gauge_x]


def test_tensor_requires_matching_sizes():
    with pytest.raises(ValueError, match="unpaired"):
        tensor_code(build_toric(2, 3, 1), build_toric(2, 2, 1))


def test_transversal_cz_logical_toric():
    code = build_toric(2, 3, 1)
    assert transversal_cz_is_logical(tensor_code(code, dual_code(code)))


def test_transversal_cz_fixes_z_stabilizers():
    code = build_toric(2, 3, 1)
    tensor = tensor_code(code, dual_code(code))
    circuit = pairing_circuit(tensor)
    for sz in tensor.stabilizer_z:
        op = PauliOp(tensor.n, BitVec(tensor.n), sz)
        assert conjugate_by_circuit(op, circuit) == op


def test_transversal_cz_not_logical_without_dual():
    code = build_toric(2, 3, 1)
    assert not transversal_cz_is_logical(tensor_code(code, code))


def test_domain_wall_everything_and_empty():
    code = build_toric(2, 3, 1)
    tensor = tensor_code(code, dual_code(code))
    everything = domain_wall(tensor, Region.everything(code))
    assert len(everything.h_wall) == 0
    assert everything.replaced_terms == len(tensor.stabilizer_x)
    assert everything.group_preserved

    empty = domain_wall(tensor, Region.empty())
    assert len(empty.h_wall) == 0 and empty.replaced_terms == 0
    assert empty.total().same_terms(stabilizer_hamiltonian(tensor))


def test_domain_wall_slab_locality():
    code = build_fractal_code(4, "open_y")
    tensor = tensor_code(code, dual_code(code))
    wall = domain_wall(tensor, Region.slab(code, 1, 3))
    assert wall.group_preserved
    coords = code.metadata["qubit_coords"]
    for t in wall.h_wall:
        zs = {coords[q % code.n][2] for q in t.op.support}
        # Straddling terms live within one unit of a slab face (z = 1 or 3).
        assert zs <= {0.0, 1.0} or zs <= {2.0, 3.0}


def test_domain_wall_validates_region():
    code = build_toric(2, 3, 1)
    tensor = tensor_code(code, dual_code(code))
    with pytest.raises(ValueError):
        domain_wall(tensor, Region(frozenset([code.n + 1]), "custom"))
    with pytest.warns(UserWarning):
        domain_wall(tensor, Region(frozenset([0, 1]), "custom"))


def test_spt_pipeline_requires_stabilizer_code():
    with pytest.raises(ValueError, match="stabilizer"):
        spt_pipeline(build_bacon_shor(3), Region.empty())


def test_spt_pipeline_whole_region_has_no_wall():
    code = build_toric(2, 3, 1)
    res = spt_pipeline(code, Region.everything(code))
    assert len(res.wall_hamiltonian) == 0
    assert res.report["bulk_trivial"]
    assert res.symmetries == []           # nothing to restrict to


def test_spt_pipeline_toric_cluster_chain():
    code = build_toric(2, 4, 1)
    res = spt_pipeline(code, Region.slab(code, 1, 3))
    assert res.report["cz_logical"] and res.report["group_preserved"]
    assert res.report["bulk_trivial"]
    assert len(res.wall_hamiltonian) == 16
    for t in res.wall_hamiltonian:
        assert t.op.x.weight == 1 and t.op.z.weight == 2 and t.op.phase == 0
    # Two boundary loops, each an alternating cycle of 2L qubits.
    rep = components(res.wall_hamiltonian)
    assert rep.count == 2
    assert rep.sizes() == [8, 8]
    assert commuting_check(res.wall_hamiltonian)
    assert len(res.symmetries) == 2
    for s in res.symmetries:
        assert all(symplectic_product(s, t.op) == 0 for t in res.wall_hamiltonian)


def test_spt_pipeline_fractal_wall():
    code = build_fractal_code(4, "open_y")
    res = spt_pipeline(code, Region.slab(code, 1, 3))
    assert res.report["bulk_trivial"] and res.report["group_preserved"]
    assert commuting_check(res.wall_hamiltonian)
    assert res.symmetries
    for s in res.symmetries:
        assert all(symplectic_product(s, t.op) == 0 for t in res.wall_hamiltonian)
    # Both triangle orientations appear among the wall decorations.
    coords = {}
    verts = code.metadata["vertices"]
    orientations = set()
    for t in res.wall_hamiltonian:
        if t.op.z.weight != 3:
            continue
        xs = sorted(verts[q % len(verts)] for q in t.op.z.support)
        base = xs[0]
        offsets = tuple(sorted((v[0] - base[0], v[1] - base[1]) for v in xs))
        orientations.add(offsets)
    assert len(orientations) >= 2
    circ = find_cz_disentangler(res.wall_hamiltonian)
    assert circ is not None
    for t in res.wall_hamiltonian:
        img = conjugate_by_circuit(t.op, circ)
        assert img.z.is_zero() and img.x.weight == 1 and img.phase == 0


def test_disentangler_cluster_chain():
    n = 6
    h = Hamiltonian(n)
    for i in range(n):
        h.add(Term(f"c{i}", "J", PauliOp.from_xz(n, [i], [(i - 1) % n, (i + 1) % n])))
    circ = find_cz_disentangler(h)
    assert circ is not None
    # The nearest-neighbor CZ cycle: n gates, each joining adjacent sites.
    assert len(circ.gates) == n
    assert all((b - a) % n in (1, n - 1) for _, a, b in circ.gates)
    for t in h:
        assert conjugate_by_circuit(t.op, circ) == PauliOp.x_op(n, t.op.x.support)


def test_disentangler_rbh_copy():
    ph = catalog.gcc_phase_hamiltonians(2)
    model = ph["model"]
    lattice = model.code.lattice
    img, _ = strip_identity_terms(ph["image_Y"])
    rep = components(img)
    classes = model.extra["edge_classes"]
    abcd = frozenset(e for e, c in enumerate(classes) if c in ("ab", "cd"))
    comp = next(c for c in rep.components if c.qubits == abcd)
    copy_h = Hamiltonian(img.n, [img.terms[i] for i in comp.term_indices])
    circ = find_cz_disentangler(copy_h)
    assert circ is not None
    # Every CZ joins two disjoint edges sharing a tetrahedron, one from
    # each color class of the copy.
    for _, a, b in circ.gates:
        assert {classes[a], classes[b]} == {"ab", "cd"}
        assert b in lattice.link(1, 1, a)
    assert len(circ.gates) == lattice.n_cells(3)
    for t in copy_h:
        img_t = conjugate_by_circuit(t.op, circ)
        assert img_t.z.is_zero() and img_t.x.weight == 1 and img_t.phase == 0


def test_disentangler_rejects_bad_shapes():
    h = Hamiltonian(2)
    h.add(Term("xx", "J", PauliOp.x_op(2, [0, 1])))
    with pytest.raises(ValueError, match="single-X"):
        find_cz_disentangler(h)
    h2 = Hamiltonian(2)
    h2.add(Term("y", "J", PauliOp.y_op(2, [0])))
    with pytest.raises(ValueError, match="Y content"):
        find_cz_disentangler(h2)


def test_disentangler_none_for_asymmetric_adjacency():
    h = Hamiltonian(2)
    h.add(Term("a", "J", PauliOp.from_xz(2, [0], [1])))
    h.add(Term("b", "J", PauliOp.x_op(2, [1])))
    assert find_cz_disentangler(h) is None
