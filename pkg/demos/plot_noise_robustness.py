"""
Robustness against white noise
==============================

Mix the filtered GenTiles2 state with the maximally mixed state and find the
smallest weight ``p`` at which each criterion still fires.
"""

import math

from blochsep import filter_normal_form, gentiles2_state, sweep_noise
from blochsep.matrix import trace_norm
from blochsep.bloch import decompose

rho_tilde = filter_normal_form(gentiles2_state(3, 4), eps=1e-10).rho_tilde
for res in sweep_noise(rho_tilde, bisect_tol=1e-10):
    p = "never" if res.threshold_p is None else f"{res.threshold_p:.4f}"
    print(f"{res.criterion_id:9s} p* = {p}")

# T is linear in p, so the CM threshold has a closed form.
print("closed form CM:", math.sqrt(18) / trace_norm(decompose(rho_tilde).t))
