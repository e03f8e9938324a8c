from qiskit import QuantumCircuit

n = 3
qc = QuantumCircuit(n, n)
qc.h(range(n))
for i in range(n):
    qc.measure(i, i)
for i in range(n - 1):
    qc.cx(i, i + 1)
