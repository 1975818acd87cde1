# %% [markdown]
# # The (d3, d4) plane at r2 = 1
#
# Each cell gets a topology label from the closed-form surfaces.  The
# surfaces themselves are drawn on top.

# %%
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np
from matplotlib.colors import ListedColormap
from pathlib import Path

from cusp3r.cli import DOMAIN_COLOURS, SURFACE_COLOURS, surface_curves, sweep_labels

out = Path(__file__).with_name("output")
out.mkdir(exist_ok=True)

d3s, d4s, labels, cuspidal = sweep_labels(1.0, 160)
names = ["D1", "D2", "D3", "D4", "D5"]
index = np.vectorize(lambda s: names.index(s) if s in names else np.nan)(labels)

# %%
fig, ax = plt.subplots(figsize=(6, 6))
cmap = ListedColormap([DOMAIN_COLOURS[n] for n in names])
ax.pcolormesh(d3s, d4s, index.T, cmap=cmap, vmin=-0.5, vmax=4.5, shading="nearest")
for name, pieces in surface_curves(1.0, (0.0, 4.0), (0.0, 4.0)).items():
    for xs, ys in pieces:
        ax.plot(xs, ys, color=SURFACE_COLOURS[name], lw=1.2)
for n in names:
    ax.plot([], [], "s", color=DOMAIN_COLOURS[n], label=n)
ax.set_xlabel("d3")
ax.set_ylabel("d4")
ax.legend(loc="upper left")
fig.savefig(out / "domain_map.png", dpi=120)

# %% [markdown]
# Fraction of cuspidal designs in the window.

# %%
print("cuspidal fraction:", round(float(cuspidal.mean()), 3))
values, counts = np.unique(labels, return_counts=True)
print({str(v): int(c) for v, c in zip(values, counts)})
