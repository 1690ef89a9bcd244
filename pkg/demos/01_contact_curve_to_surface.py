"""From a contact curve in CP^3 to a minimal surface with nine planar ends.

Run with ``python demos/01_contact_curve_to_surface.py``.  Every step is
exact arithmetic over Q(i); the printed certificates are identities, not
tolerances.
"""

from planarends.contact import branch_divisor, contact_curve, curve_degree, nondegenerate, verify_contact
from planarends.klein import (
    identify_W_with_C5,
    pole_structure,
    psi_embed,
    psi_invert,
    second_associated,
    verify_null_C3,
)

k = 4
c = contact_curve(k)
print("contact curve lift:")
for p in c.lift:
    print("   ", p)

ok, _ = verify_contact(c)
div = branch_divisor(c)
print(f"contact: {ok}, degree {curve_degree(c)}, nondegenerate: {nondegenerate(c)}")
print("branch points:", ", ".join(f"{e.label} (order {e.order})" for e in div.entries))

# The tangent lines form a curve in the 5-space W of Omega-isotropic bivectors.
eta = second_associated(c)
print(f"tangent-line curve has degree {eta.degree} = 2*{curve_degree(c)} - 2 - {div.total}")

# A fixed Gaussian-rational isometry W -> C^5 turns it into a null curve of the quadric.
w = identify_W_with_C5(eta)
print(f"<w,w> = 0: {w.norm().is_zero()}, <w',w'> = 0: {w.derivative_norm().is_zero()}")

# Inverting the quadric embedding gives the Weierstrass data F with Re F minimal.
F = psi_invert(w)
print("F =")
for f in F.F:
    print("   ", f)
print("null:", verify_null_C3(F)[0])
poles = pole_structure(F)
print(f"{len(poles)} poles, all simple: {all(p.order == 1 for p in poles)}")
print("degree of Psi(F):", psi_embed(F).degree)
