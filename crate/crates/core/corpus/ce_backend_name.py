from qiskit import QuantumCircuit, BasicAer, execute

qc = QuantumCircuit(2, 2)
qc.h(0)
qc.cx(0, 1)
qc.measure([0, 1], [0, 1])

backend = BasicAer.get_backend('aer_simulator')
print(execute(qc, backend).result().get_counts())
