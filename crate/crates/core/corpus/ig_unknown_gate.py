from qiskit import QuantumCircuit, Aer, execute

qc = QuantumCircuit(3, 3)
qc.h(0)
qc.h(1)
qc.hadamard(2)
qc.measure([0, 1, 2], [0, 1, 2])

backend = Aer.get_backend('qasm_simulator')
counts = execute(qc, backend, shots=512).result().get_counts()
print(counts)
