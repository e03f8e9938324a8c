from qiskit import QuantumCircuit, Aer, execute

qc = QuantumCircuit(1, 1)
qc.u3(0.3, 0.2, 0.1, 0)
qc.iden(0)
qc.measure(0, 0)
print(execute(qc, Aer.get_backend('qasm_simulator')).result().get_counts())
