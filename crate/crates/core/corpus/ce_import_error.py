from qiskit import QuantumCircuit, execute, Aer, IBMQProvider

qc = QuantumCircuit(1, 1)
qc.h(0)
qc.measure(0, 0)
result = execute(qc, Aer.get_backend('qasm_simulator')).result()
print(result.get_counts())
