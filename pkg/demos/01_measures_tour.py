#!/usr/bin/env python3
"""Tour of the scalar measures on a few landmark states.

Walks through entropy, relative entropy of coherence, mutual information,
correlated coherence and the classical-quantum distance measures on the Bell
state, a Werner state, a classical-quantum state and a product state.
"""

import numpy as np

from discoh import (
    MeasureReport,
    bell_phi_plus,
    classical_quantum,
    coherence_discord,
    coherence_discord_symmetric,
    entropy,
    relative_entropy,
    werner,
)
from discoh.states import DensityMatrix

PLUS = np.array([[0.5, 0.5], [0.5, 0.5]], dtype=complex)


def show(name, rho):
    rep = MeasureReport.compute(rho)
    print(f"\n--- {name} ---")
    print(f"  S(ab) = {rep.S_ab:.6f}   S(a) = {rep.S_a:.6f}   S(b) = {rep.S_b:.6f}")
    print(f"  mutual information I       = {rep.I:.6f}")
    print(f"  coherence C_r(ab)/C_r(a)/C_r(b) = {rep.C_r_ab:.6f} / {rep.C_r_a:.6f} / {rep.C_r_b:.6f}")
    print(f"  correlated coherence I_co  = {rep.I_co:.6f}")
    print(f"  distance to CQ set C^r     = {rep.C_r_upper:.6f}")
    print(f"  discordlike correlation    = {coherence_discord(rho):.6f}")
    print(f"  symmetric variant          = {coherence_discord_symmetric(rho):.6f}")
    print(f"  l1 correlated coherence    = {rep.l1_cc:.6f}")


bell = bell_phi_plus()
show("Bell state", bell)

# All four coherence-correlation quantities hit 1 bit on the Bell state even
# though its entropy is zero: every bit of its joint coherence is mutual.

show("Werner state, p = 0.5", werner(0.5))

# A classical-quantum state: classical index on A, quantum blocks on B.  Its
# discordlike correlation vanishes in the reference basis by construction.
cq = classical_quantum([0.5, 0.5], [np.diag([1.0, 0.0]), PLUS])
show("classical-quantum state", cq)

# A coherent product state has coherence but no *correlated* coherence.
prod = DensityMatrix(np.kron(PLUS, PLUS), (2, 2))
show("|+><+| x |+><+| product", prod)

# The CQ distance measure is exactly a relative entropy: S(rho || dephased_a rho).
from discoh import cq_coherence, dephase_local

sigma = dephase_local(bell.mat, bell.dims)
print("\nC^r(bell) as a relative entropy:",
      f"{relative_entropy(bell.mat, sigma):.6f}",
      "(closed form:", f"{cq_coherence(bell):.6f})")

print("\nentropy of diag(3/4, 1/4):", f"{entropy(np.diag([0.75, 0.25])):.6f} bits")
