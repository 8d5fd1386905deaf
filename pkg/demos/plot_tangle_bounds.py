"""
Bounds on concurrence and tangle
================================

Lower bounds from PPT/realignment (CAF), from the correlation-matrix trace
norm, and from its Hilbert-Schmidt norm. The last one is exact on pure states
and tends to win close to them.
"""

from blochsep import estimate_all, filter_normal_form, gentiles2_state, random_pure, white_noise_mix
from blochsep.measures import concurrence_lower_caf, concurrence_lower_cm, pure_tangle_bloch, tangle_lower_hs

rho_tilde = filter_normal_form(gentiles2_state(3, 4), eps=1e-10).rho_tilde
for est in estimate_all(rho_tilde):
    print(f"{est.measure_id.value:11s} {est.kind.value:12s} {est.source.value:16s} {est.value:.4f}")

# Noisy 3x3 pure states: which tangle bound is tightest?
for p in (0.8, 0.9, 0.97):
    wins = 0
    for seed in range(200):
        rho = white_noise_mix(random_pure(3, 3, seed=seed).density_matrix(), p).mixed
        others = max(concurrence_lower_caf(rho).value, concurrence_lower_cm(rho).value) ** 2
        wins += tangle_lower_hs(rho).value > others
    print(f"p={p}: HS tangle bound best on {wins}/200")

psi = random_pure(3, 3, seed=1)
exact = pure_tangle_bloch(psi).value
print(f"pure state: tangle {exact:.12f}, HS bound {tangle_lower_hs(psi.density_matrix()).value:.12f}")
