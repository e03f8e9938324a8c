from qiskit import QuantumCircuit, QuantumRegister, ClassicalRegister, Aer, execute

n = 32
qr = QuantumRegister(n)
cr = ClassicalRegister(n)
ghz = QuantumCircuit(qr, cr)
ghz.h(qr[0])
for i in range(n - 1):
    ghz.cx(qr[i], qr[i + 1])
ghz.measure(qr, cr)

simulator = Aer.get_backend('qasm_simulator')
job = execute(ghz, simulator, shots=100)
print(job.result().get_counts())
