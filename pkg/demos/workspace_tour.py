# %% [markdown]
# # A tour of one cuspidal manipulator
#
# The design d2=1, d3=2, d4=1.5, r2=1 has four cusps on its internal
# boundary.  We look at its singular set in joint space, the image of that
# set in the (rho, z) half plane, and how many IK solutions each region has.

# %%
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np
from pathlib import Path

from cusp3r import (DhParams, JointConfig, classify_boundaries,
                    classify_domain, find_cusps, forward_kinematics, solve_ik,
                    trace_singularity_curves)
from cusp3r.kinematics import quartic_coefficients, wrap_angle
from cusp3r.roots import real_root_count_batch

out = Path(__file__).with_name("output")
out.mkdir(exist_ok=True)
p = DhParams(1.0, 2.0, 1.5, 1.0)
print("domain:", classify_domain(p))

# %% [markdown]
# Forward and inverse kinematics round trip.

# %%
q = JointConfig(0.4, -1.1, 2.3)
target = forward_kinematics(p, q)
for s in solve_ik(p, target):
    print(np.round([s.theta1, s.theta2, s.theta3], 6), round(s.distance(q), 12))

# %% [markdown]
# Singular curves over the (theta2, theta3) torus.  No singular lines here
# since d3 > d4.

# %%
branches = trace_singularity_curves(p)
fig, (ax0, ax1) = plt.subplots(1, 2, figsize=(11, 5))
for b in branches:
    t3 = wrap_angle(b.theta3)
    t3[np.abs(np.diff(t3, prepend=t3[0])) > np.pi] = np.nan
    ax0.plot(b.theta2, t3, label=b.kind.value)
ax0.set_xlabel("theta2")
ax0.set_ylabel("theta3")
ax0.legend()

# %% [markdown]
# Their images split into an external and an internal boundary.  The cusps
# sit on the internal one.

# %%
bset = classify_boundaries(p, branches)
for curve in bset.external:
    ax1.plot(curve[:, 0], curve[:, 1], "k", lw=1.5, label="external")
for curve in bset.internal:
    ax1.plot(curve[:, 0], curve[:, 1], "C0", lw=1.5, label="internal")
cusps = find_cusps(p)
ax1.plot([c.location.rho for c in cusps], [c.location.z for c in cusps], "ro",
         label=f"{len(cusps)} cusps")

# count IK solutions on a coarse grid to shade the regions
rr, zz = np.meshgrid(np.linspace(0.05, p.reach, 200), np.linspace(-p.reach, p.reach, 400))
coeffs = quartic_coefficients(p, rr.ravel() ** 2, zz.ravel(), shift=0.7)
counts = real_root_count_batch(coeffs).reshape(rr.shape)
ax1.contourf(rr, zz, counts, levels=[-0.5, 0.5, 2.5, 4.5], cmap="Greys", alpha=0.35)
ax1.set_aspect("equal")
ax1.set_xlabel("rho")
ax1.set_ylabel("z")
ax1.legend(loc="upper right")
fig.tight_layout()
fig.savefig(out / "workspace_tour.png", dpi=120)
print("wrote", out / "workspace_tour.png")
