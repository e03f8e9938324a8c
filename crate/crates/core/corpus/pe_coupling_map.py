from qiskit import QuantumCircuit, transpile

qc = QuantumCircuit(3)
qc.h(0)
qc.cx(0, 1)
qc.cx(1, 2)

coupling = "0-1,1-2"
mapped = transpile(qc, coupling_map=coupling, basis_gates=['u', 'cx'])
print(mapped.depth())
