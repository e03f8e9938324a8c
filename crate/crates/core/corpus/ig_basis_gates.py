from qiskit import QuantumCircuit, transpile

qc = QuantumCircuit(2)
qc.h(0)
qc.cx(0, 1)
qc.rz(0.25, 1)

basis = ['u1', 'cx']
compiled = transpile(qc, basis_gates=basis, optimization_level=1)
print(compiled.count_ops())
