"""A 2D fracton SPT Hamiltonian from a gapped domain wall.

The recipe: take the 3D fractal code, tensor it with its Hadamard dual,
apply the transversal CZ logical gate inside a horizontal slab, then
ungauge all Z symmetries.  The bulk becomes a paramagnet; the terms
straddling the slab boundary become a two-species cluster-like model
whose X terms carry three-site Z triangles of opposite orientations,
protected by Sierpinski-shaped X symmetries.
"""

from cssgauge.analysis import commuting_check
from cssgauge.builders import build_fractal_code
from cssgauge.pauli import conjugate_by_circuit
from cssgauge.sptwall import Region, find_cz_disentangler, spt_pipeline

L = 4
code = build_fractal_code(L, boundary="open_y")
print("3D fractal code:", code)

region = Region.slab(code, 1, 3)
result = spt_pipeline(code, region)
print("pipeline report:", {k: v for k, v in result.report.items() if k != "wall_qubits"})
print("wall terms commute:", commuting_check(result.wall_hamiltonian))

print("\nsample wall terms (X with a Z triangle):")
for t in result.wall_hamiltonian.terms[:2]:
    print("  ", t.name, "->", t.op.to_label())

circuit = find_cz_disentangler(result.wall_hamiltonian)
print(f"\nCZ disentangler with {len(circuit.gates)} gates found")
bare = all(conjugate_by_circuit(t.op, circuit).z.is_zero()
           for t in result.wall_hamiltonian)
print("conjugation yields bare X terms:", bare)

# Draw one restricted symmetry: the Sierpinski pattern on the wall.
verts = code.metadata["vertices"]
sym = max(result.symmetries, key=lambda s: s.x.weight)
marked = {verts[q % len(verts)][:2] for q in sym.x.support}
print("\nlargest restricted wall symmetry, projected to the xy plane:")
for j in range(L - 1, -1, -1):
    print("   " + "".join("X" if (i, j) in marked else "." for i in range(L)))
