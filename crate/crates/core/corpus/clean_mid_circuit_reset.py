from qiskit import QuantumCircuit, QuantumRegister, ClassicalRegister

q = QuantumRegister(2, 'q')
c = ClassicalRegister(2, 'c')
qc = QuantumCircuit(q, c)
qc.h(q[0])
qc.measure(q[0], c[0])
qc.reset(q[0])
qc.cx(q[0], q[1])
qc.measure(q[1], c[1])
