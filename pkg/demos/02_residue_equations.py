"""The spinor ansatz for nine ends and its residue equations.

The k=4 closed-form parameters kill every residue of s1^2, s1 s2 and s2^2;
the same Newton solver then walks the solution up to k=5 and k=6.
Takes about 20 seconds.
"""

from dataclasses import replace

import mpmath

from planarends.weierstrass import (
    end_residues,
    end_set,
    paper_params_k4,
    residue_system,
    solve_residues,
)

P = 60
params = paper_params_k4(P)
print("k=4 parameters:")
for name, v in zip(("a", "b", "c", "lambda"), params.values):
    print(f"   {name:6s} = {mpmath.nstr(v.real, 25)}")

print("residues at the nine ends (s1^2, s1 s2, s2^2):")
for end, row in zip(end_set(params), end_residues(params, [e.point for e in end_set(params)])):
    print(f"   z = {mpmath.nstr(end.point, 8):>28s}  max |res| = {mpmath.nstr(max(abs(r) for r in row), 3)}")

# Perturb and recover.
start = params.with_values([v * (1 + mpmath.mpf("1e-3")) for v in params.values])
found = solve_residues(4, start, P)
print("recovered from a 1e-3 perturbation:",
      mpmath.nstr(max(abs(x - y) for x, y in zip(found.values, params.values)), 3))

# Continuation to more ends.
current = params
for k in (5, 6):
    current = solve_residues(k, replace(current, k=k), P)
    worst = max(abs(r) for r in residue_system(current, P))
    vals = ", ".join(mpmath.nstr(v.real, 10) for v in current.values)
    print(f"k={k} ({2 * k + 1} ends): a, b, c, lambda = {vals}; max residual {mpmath.nstr(worst, 3)}")
