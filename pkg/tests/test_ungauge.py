import random

import pytest

from cssgauge import catalog
from cssgauge.builders import build_toric, build_toric_sphere
from cssgauge.gf2 import BitVec, rank, solve
from cssgauge.pauli import Hamiltonian, PauliOp, Term, symplectic_product
from cssgauge.ungauge import (
    CommutationError,
    CompletenessError,
    NotSymmetricError,
    annihilation_check,
    commutation_preservation_check,
    dim_check,
    emergent_symmetries,
    gauge_hamiltonian,
    gauge_pauli,
    make_setup,
    preserved_symmetries,
    random_symmetric_pauli,
    setup_report,
    strip_identity_terms,
    ungauge_hamiltonian,
    ungauge_pauli,
)


@pytest.fixture(scope="module")
def sphere_model():
    return catalog.toric_sphere_model()


@pytest.fixture(scope="module")
def torus_model():
    return catalog.toric_torus_model(3)


@pytest.fixture(scope="module")
def bs_model():
    return catalog.bacon_shor_model(3)


@pytest.fixture(scope="module")
def gcc_model():
    return catalog.gcc_model(2)


# -- setup construction and validation ----------------------------------------


def test_sphere_setup_single_relation(sphere_model):
    assert rank(sphere_model.setup.d_r) == 1
    assert sphere_model.setup.d_r.row(0).weight == 6    # all vertex stars


def test_bacon_shor_one_relation_per_row(bs_model):
    assert bs_model.setup.d_r.rows == 3
    assert rank(bs_model.setup.d_r) == 3


def test_make_setup_kernel_defaults():
    # Omitting x_gens and relations falls back to canonical kernel bases.
    code = build_toric_sphere()
    s = make_setup(code.n, list(code.stabilizer_z))
    assert s.n_fin == code.n - rank(s.d_z)
    assert dim_check(s)


def test_make_setup_rejects_incomplete_generators():
    code = build_toric_sphere()
    with pytest.raises(CompletenessError, match="deficit"):
        make_setup(code.n, list(code.stabilizer_z),
                   x_gens=list(code.stabilizer_x)[:3])


def test_make_setup_rejects_anticommuting_generators():
    code = build_toric_sphere()
    bad = list(code.stabilizer_x) + [BitVec.from_support(code.n, [0])]
    with pytest.raises(CommutationError):
        make_setup(code.n, list(code.stabilizer_z), x_gens=bad)


def test_make_setup_rejects_bad_relation():
    code = build_toric_sphere()
    with pytest.raises(Exception, match="relation"):
        make_setup(code.n, list(code.stabilizer_z), x_gens=list(code.stabilizer_x),
                   relations=[BitVec.from_support(6, [0])])


def test_make_setup_rejects_nonsymmetric_preserved():
    code = build_toric_sphere()
    with pytest.raises(NotSymmetricError):
        make_setup(code.n, list(code.stabilizer_z), x_gens=list(code.stabilizer_x),
                   preserved=[BitVec.from_support(code.n, [0])])


# -- the map on operators ----------------------------------------------------


def test_toric_z_edge_maps_to_endpoints(sphere_model):
    code = sphere_model.code
    lattice = code.lattice
    for e in range(12):
        img = ungauge_pauli(PauliOp.z_op(code.n, [e]), sphere_model.setup)
        assert img.x.is_zero()
        assert img.z == lattice.boundary[1].column(e)


def test_toric_vertex_star_maps_to_single_x(sphere_model):
    code = sphere_model.code
    for v in range(6):
        star = code.stabilizer_x[v]
        img = ungauge_pauli(PauliOp(code.n, star, BitVec(code.n)), sphere_model.setup,
                            x_combo=BitVec(6, 1 << v))
        assert img == PauliOp.x_op(6, [v])


def test_z_stabilizers_annihilate(sphere_model, torus_model, gcc_model):
    for model in (sphere_model, torus_model, gcc_model):
        assert annihilation_check(model.setup)


def test_fractal_operator_map():
    model = catalog.fractal_model(4, "periodic")
    code = model.code
    L = 4
    verts = code.metadata["vertices"]
    vid = {v: i for i, v in enumerate(verts)}

    def final(v):
        return vid[v]

    v = (1, 2, 3)
    img_a = ungauge_pauli(PauliOp.z_op(code.n, [vid[v]]), model.setup)
    assert img_a.z.support == tuple(sorted([final(v), final((1, 2, 0))]))  # vertical pair
    img_b = ungauge_pauli(PauliOp.z_op(code.n, [64 + vid[v]]), model.setup)
    expected = sorted([final(v), final((2, 2, 3)), final((1, 3, 3))])      # planar triangle
    assert img_b.z.support == tuple(expected)
    img_x = ungauge_pauli(PauliOp(code.n, code.stabilizer_x[vid[v]], BitVec(code.n)),
                          model.setup, x_combo=BitVec(64, 1 << vid[v]))
    assert img_x == PauliOp.x_op(64, [vid[v]])


def test_sign_passes_through(sphere_model):
    code = sphere_model.code
    p = PauliOp.z_op(code.n, [3])
    minus = PauliOp(code.n, p.x, p.z, 2)
    img = ungauge_pauli(minus, sphere_model.setup)
    assert img.hermitian_sign() == -1
    plus = ungauge_pauli(p, sphere_model.setup)
    assert plus.hermitian_sign() == 1
    assert (plus.x, plus.z) == (img.x, img.z)


def test_imaginary_phase_rejected(sphere_model):
    code = sphere_model.code
    bad = PauliOp(code.n, BitVec(code.n), BitVec.from_support(code.n, [0]), 1)
    with pytest.raises(NotSymmetricError, match="sign"):
        ungauge_pauli(bad, sphere_model.setup)


def test_nonsymmetric_x_rejected(sphere_model):
    code = sphere_model.code
    with pytest.raises(NotSymmetricError, match="X support"):
        ungauge_pauli(PauliOp.x_op(code.n, [0]), sphere_model.setup)


def test_wrong_combo_rejected(sphere_model):
    code = sphere_model.code
    star = code.stabilizer_x[0]
    with pytest.raises(Exception, match="x_combo"):
        ungauge_pauli(PauliOp(code.n, star, BitVec(code.n)), sphere_model.setup,
                      x_combo=BitVec(6, 1 << 1))


def test_report_deterministic(sphere_model):
    import json

    a = setup_report(sphere_model.setup, commutation_pairs=50, seed=5)
    b = setup_report(sphere_model.setup, commutation_pairs=50, seed=5)
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


def test_y_content_maps_hermitian(gcc_model):
    code = gcc_model.code
    star = code.gauge_x[0]
    y_term = PauliOp.y_op(code.n, star.support)
    img = ungauge_pauli(y_term, gcc_model.setup, x_combo=BitVec(112, 1))
    assert img.x.support == (0,)
    assert img.phase == 0                 # +X_e Z(link e)
    assert img.is_hermitian()


# -- emergent and preserved symmetries ----------------------------------------


def test_sphere_emergent_is_global_product(sphere_model):
    ems = emergent_symmetries(sphere_model.setup)
    assert len(ems) == 1
    assert ems[0] == PauliOp.x_op(6, range(6))


def test_bacon_shor_symmetries(bs_model):
    ems = emergent_symmetries(bs_model.setup)
    pres = preserved_symmetries(bs_model.setup)
    assert len(ems) == 3 and len(pres) == 3
    for sym in ems + pres:
        assert sym.z.is_zero() and sym.x.weight == 3
    # Rows and columns intersect in exactly one final qubit.
    for e in ems:
        for p in pres:
            assert e.x.overlap(p.x) == 1


def test_gcc_emergent_shapes(gcc_model):
    ems = emergent_symmetries(gcc_model.setup)
    n_vertex = gcc_model.extra["vertex_relation_count"]
    weights = {ems[i].x.weight for i in range(n_vertex)}
    # Pairs of color classes at a vertex: 6+4, 6+4, 4+4 edges.
    assert weights == {8, 10}
    # Every emergent symmetry commutes with every mapped term.
    mapped = ungauge_hamiltonian(gcc_model.hamiltonian, gcc_model.setup)
    for sym in ems[:12]:
        assert all(symplectic_product(sym, t.op) == 0 for t in mapped)


def test_preserved_image_commutes_with_mapped(bs_model):
    mapped = ungauge_hamiltonian(bs_model.hamiltonian, bs_model.setup)
    for sym in preserved_symmetries(bs_model.setup):
        assert all(symplectic_product(sym, t.op) == 0 for t in mapped)


# -- dimension check -----------------------------------------------------------


def test_dim_check_values(torus_model, bs_model, gcc_model):
    r = torus_model.setup.ranks()
    assert (r["n_ini"], r["rank_d_z"], r["n_fin"], r["rank_d_r"]) == (18, 10, 9, 1)
    assert dim_check(torus_model.setup)
    r = bs_model.setup.ranks()
    assert (r["n_ini"] - r["rank_d_z"], r["n_fin"] - r["rank_d_r"]) == (6, 6)
    assert dim_check(bs_model.setup)
    assert dim_check(gcc_model.setup)


# -- inverse map and round trips ----------------------------------------------


def test_gauge_pauli_xu_moore_plaquette(bs_model):
    xm = catalog.builders.build_xu_moore(3)
    plaq = next(t for t in xm.hamiltonian if t.coupling == "J_Z")
    img = gauge_pauli(plaq.op, bs_model.setup, z_combo=plaq.meta["z_combo"])
    assert img.x.is_zero() and img.z.weight == 2
    # The preimage is a vertical vertex pair.
    (a, b) = img.z.support
    assert abs(a - b) in (3, 6)


def test_gauge_pauli_single_x(bs_model):
    img = gauge_pauli(PauliOp.x_op(9, [4]), bs_model.setup)
    assert img.z.is_zero()
    assert img.x == bs_model.setup.d_x.row(4)


def test_gauge_rejects_noncommuting_with_emergent(bs_model):
    with pytest.raises(NotSymmetricError):
        gauge_pauli(PauliOp.z_op(9, [0]), bs_model.setup)


def test_round_trip_on_random_symmetric_paulis(gcc_model):
    # Gauge after ungauge returns the operator up to the initial Z-symmetry
    # group, and exactly on canonical representatives.
    rng = random.Random(99)
    s = gcc_model.setup
    for _ in range(200):
        p, combo = random_symmetric_pauli(s, rng)
        img = ungauge_pauli(p, s, x_combo=combo)
        back = gauge_pauli(img, s)
        assert back.x == p.x
        diff = back.z ^ p.z
        assert solve(s.d_z, diff) is not None     # difference is a Z symmetry
        # Canonical representative: z-part already pivot-supported.
        canonical = gauge_pauli(ungauge_pauli(back, s), s)
        assert canonical == back


def test_round_trip_exact_with_provenance(bs_model):
    mapped = ungauge_hamiltonian(bs_model.hamiltonian, bs_model.setup)
    back = gauge_hamiltonian(mapped, bs_model.setup)
    assert back.same_terms(bs_model.hamiltonian)
    forward_again = ungauge_hamiltonian(back, bs_model.setup)
    assert forward_again.same_terms(mapped)


def test_commutation_preservation_every_model():
    for name, model in catalog.worked_models().items():
        assert commutation_preservation_check(model.setup, pairs=120, seed=7), name


def test_hamiltonian_error_names_term(sphere_model):
    h = Hamiltonian(12)
    h.add(Term("bad-term", "J_X", PauliOp.x_op(12, [0])))
    with pytest.raises(NotSymmetricError, match="bad-term"):
        ungauge_hamiltonian(h, sphere_model.setup)


def test_strip_identity_terms(sphere_model):
    mapped = ungauge_hamiltonian(sphere_model.hamiltonian, sphere_model.setup)
    stripped, dropped = strip_identity_terms(mapped)
    assert dropped == 8                     # the face stabilizer terms
    assert len(stripped) == 6


def test_setup_report_shape(sphere_model):
    report = setup_report(sphere_model.setup, commutation_pairs=25)
    assert report["dim_check"] is True
    assert report["annihilated_generators"]["all_identity"] is True
    assert report["commutation_preserved"] is True
    assert len(report["emergent"]) == 1


# -- full gauging ---------------------------------------------------------------


def test_xu_moore_full_round(bs_model):
    chk = catalog.xu_moore_check(3)
    assert chk["mapped_matches_xu_moore"]
    assert chk["regauged_matches_bacon_shor"]
    rep = chk["full_gauge_report"]
    assert rep["support_multiset_match"]
    assert rep["coupling_map"] == {"J_X": ["J_Z"], "J_Z": ["J_X"]}


def test_full_gauge_lgt_matches_hadamard_twist():
    out = catalog.full_gauge_lgt(2)
    rep = out["report"]
    assert rep["support_multiset_match"]
    assert rep["coupling_map"] == {"J_X": ["J_Z"], "J_Z": ["J_X"]}
    assert rep["topological_x_classes"] == 18
