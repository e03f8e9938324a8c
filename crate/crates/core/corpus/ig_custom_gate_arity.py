from qiskit import QuantumCircuit

oracle = QuantumCircuit(2, name='oracle')
oracle.cz(0, 1)
oracle_gate = oracle.to_gate()

qc = QuantumCircuit(3)
qc.h([0, 1, 2])
qc.append(oracle_gate, [0, 1, 2])
qc.h([0, 1, 2])
print(qc)
