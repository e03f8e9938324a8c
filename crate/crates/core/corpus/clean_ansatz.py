import numpy as np
from qiskit import QuantumCircuit, transpile
from qiskit.circuit import Parameter

theta = Parameter('theta')
phi = Parameter('phi')

ansatz = QuantumCircuit(3)
for q in range(3):
    ansatz.ry(theta, q)
ansatz.cx(0, 1)
ansatz.cx(1, 2)
ansatz.rz(phi, 2)
ansatz.barrier()

bound = ansatz.assign_parameters({theta: np.pi / 3, phi: 0.1})
compiled = transpile(bound, basis_gates=['rz', 'sx', 'cx'], coupling_map=[[0, 1], [1, 2]])
print(compiled.count_ops())
