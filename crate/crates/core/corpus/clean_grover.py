from qiskit import QuantumCircuit, QuantumRegister, ClassicalRegister, Aer, execute


def diffuser(n):
    d = QuantumCircuit(n)
    d.h(range(n))
    d.x(range(n))
    d.h(n - 1)
    d.mcx(list(range(n - 1)), n - 1)
    d.h(n - 1)
    d.x(range(n))
    d.h(range(n))
    return d


qr = QuantumRegister(3, 'q')
cr = ClassicalRegister(3, 'c')
grover = QuantumCircuit(qr, cr)
grover.h(qr)
grover.cz(qr[0], qr[2])
grover.cz(qr[1], qr[2])
grover.append(diffuser(3).to_gate(), [0, 1, 2])
grover.measure(qr, cr)

backend = Aer.get_backend('qasm_simulator')
counts = execute(grover, backend, shots=2048).result().get_counts()
print(max(counts, key=counts.get))
