"""
Separability criteria on a bound entangled state
================================================

A GenTiles2 state is PPT yet entangled. The realignment (CCNR) and
correlation-matrix (CM) criteria can still see it.
"""

from blochsep import full_report, gentiles2_state

rho = gentiles2_state(3, 4)
for rep in full_report(rho):
    print(f"{rep.criterion_id:9s} value={rep.value:.4f} threshold={rep.threshold:.4f} entangled={rep.entangled}")

# Larger members of the family: CCNR keeps detecting, CM stops after 3x4.
for dims in [(3, 4), (3, 5), (3, 6), (4, 5)]:
    verdicts = {r.criterion_id: r.entangled for r in full_report(gentiles2_state(*dims))}
    print(dims, verdicts)
