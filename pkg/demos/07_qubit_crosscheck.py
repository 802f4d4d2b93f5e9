"""Independent cross-check: three distinguishable qubits, second order.

The same exchange coupling acting on first-quantized spins gives closed
forms one order deeper in kappa than the field model's first-order results.
The decrease of the (2,3) and (3,1) correlations - invisible at first
order - shows up here as exactly 2 kappa^2.
"""

import numpy as np

from dhlab import model, qubits
from dhlab.model import SpinDirection

kappa = 0.1
psi0 = qubits.unentangled_state()
exact = qubits.evolve_qubits(psi0, kappa, "exact")
second = qubits.evolve_qubits(psi0, kappa, "second")

print(f"kappa = {kappa}")
print(f"||exact - second order|| = {np.linalg.norm(exact - second):.3e} "
      f"(kappa^3 = {kappa**3:.1e})")
print("exact state stays a product with qubit 3:",
      qubits.is_product_with_qubit3(exact))

x3 = SpinDirection.x3()
print("\nexpectations along x3 (exact vs closed form):")
for q in (1, 2, 3):
    got = qubits.pauli_expectation(exact, q, x3)
    closed = qubits.expectation_closed_form(q, x3, kappa)
    print(f"  qubit {q}: {got:+.6f} vs {closed:+.6f}")

print("\ncorrelations along x3, showing the second-order decrease:")
for qa, qb in ((1, 2), (2, 3), (3, 1)):
    c0 = qubits.pauli_correlation(psi0, qa, x3, qb, x3)
    ck = qubits.pauli_correlation(exact, qa, x3, qb, x3)
    print(f"  ({qa},{qb}): {c0:+.6f} -> {ck:+.6f}   "
          f"(drop {abs(c0) - abs(ck):.6f}, 2 kappa^2 = {2 * kappa**2:.6f})")

print("\nagreement with the field model's first-order correlations:")
cfg = model.standard_config(kappa=kappa)
first = model.evolve(cfg, model.unentangled_state(cfg), "first")
x1 = SpinDirection.x1()
for label, qa, da, qb, db in (
    ("(1,2) both x1", 1, x1, 2, x1),
    ("(2,3) both x3", 2, x3, 3, x3),
):
    field_val = model.spin_correlation(cfg, first, qa, da, qb, db)
    qubit_val = qubits.pauli_correlation(exact, qa, da, qb, db)
    print(f"  {label}: field {field_val:+.6f} vs qubits {qubit_val:+.6f} "
          f"(difference {abs(field_val - qubit_val):.2e} <= 5 kappa^2 = {5 * kappa**2:.1e})")
