from qiskit import QuantumCircuit, Aer, execute

qc = QuantumCircuit(2)
qc.h(0)
qc.cx(0, 1)

backend = Aer.get_backend('statevector_simulator')
state = execute(qc, backend).result().get_statevector()
print(state)
