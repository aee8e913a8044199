"""Ungauging the 2D toric code, step by step.

The toric code's Z plaquettes generate local symmetries; removing them
maps the code to an Ising paramagnet whose single global X symmetry is
the conservation law for vertex excitations.  On a sphere the map works
as is; on a torus the logical Z loops must join the symmetry group
first.
"""

from cssgauge import catalog
from cssgauge.analysis import components
from cssgauge.ungauge import (
    annihilation_check,
    dim_check,
    emergent_symmetries,
    strip_identity_terms,
    ungauge_hamiltonian,
)

# --- the sphere: an exact complex, a unique ground state -------------------

model = catalog.toric_sphere_model()
print("octahedron toric code:", model.code)
print("setup ranks:", model.setup.ranks())

mapped = ungauge_hamiltonian(model.hamiltonian, model.setup)
image, dropped = strip_identity_terms(mapped)
print(f"{dropped} plaquette terms mapped to the identity (the ungauged symmetries)")
print("remaining image terms:")
for t in image:
    print("  ", t.name, "->", t.op.to_label())

# Every vertex star became a single-qubit X: the paramagnet.
assert all(t.op.weight == 1 for t in image)

# The lone relation (the product of all vertex stars) becomes the global
# Z2 symmetry of the paramagnet.
(sym,) = emergent_symmetries(model.setup)
print("emergent symmetry:", sym.to_label())

# --- the torus: augment the Z symmetries with the logical loops ------------

torus = catalog.toric_torus_model(3)
print("\ntorus model ranks:", torus.setup.ranks())
print("dimension bookkeeping holds:", dim_check(torus.setup))
print("all Z symmetries annihilate:", annihilation_check(torus.setup))

image, _ = strip_identity_terms(ungauge_hamiltonian(torus.hamiltonian, torus.setup))
print("image is a paramagnet on", components(image).count, "vertices")

# --- higher form: the 3D toric code ungauges the same way ------------------

t3 = catalog.toric3d_model(2)
image3, _ = strip_identity_terms(ungauge_hamiltonian(t3.hamiltonian, t3.setup))
print("\n3D toric code (type 1) image terms:",
      sorted(t.op.to_label().count("X") for t in image3))
print("relation rank:", t3.setup.ranks()["rank_d_r"], "(one global symmetry)")
