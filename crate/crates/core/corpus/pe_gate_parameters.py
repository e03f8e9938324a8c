import numpy as np
from qiskit import QuantumCircuit

theta = np.pi / 4
qc = QuantumCircuit(2)
qc.ry(theta, 0)
qc.crz(theta, 0)
qc.measure_all()
print(qc)
