from qiskit import QuantumCircuit

bell = QuantumCircuit(2)
bell.h(0)
bell.cx(0, 1)

main = QuantumCircuit(4)
main.append(bell, [0, 1])
main.append(bell, [2, 3])
main.measure_all()
