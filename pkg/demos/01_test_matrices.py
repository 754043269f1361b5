"""Gallery of the twelve bundled test matrices.

Builds P1-P8 (power-law) and B1-B4 (block-diagonal) at n=100, r=5,
prints each one's condition number and coherence, and renders a grid of
entry-magnitude heatmaps so the incoherent-to-coherent progression is
visible at a glance.

Run:
    python demos/01_test_matrices.py

Writes demos/output/test_matrices.png
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from levmc import PRESET_NAMES, preset

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

print(f"{'name':>6} {'kappa':>10} {'eta':>8}   character")
matrices = {}
for name in PRESET_NAMES:
    m = preset(name, n=100, r=5, seed=7)
    matrices[name] = m
    coh = "incoherent" if m.eta < 4 else "coherent"
    cond = "well-conditioned" if m.kappa < 10 else "poorly-conditioned"
    print(f"{name:>6} {m.kappa:>10.2f} {m.eta:>8.2f}   {coh}, {cond}")

fig, axes = plt.subplots(3, 4, figsize=(12, 9))
for ax, name in zip(axes.ravel(), PRESET_NAMES):
    m = matrices[name]
    ax.imshow(np.abs(m.values), cmap="viridis")
    ax.set_title(f"{name}  ($\\kappa$={m.kappa:.0f}, $\\eta$={m.eta:.1f})")
    ax.set_xticks([])
    ax.set_yticks([])
fig.suptitle("Entry magnitudes of the twelve test matrices")
fig.tight_layout()
fig.savefig(OUT / "test_matrices.png", dpi=120)
print(f"\nwrote {OUT / 'test_matrices.png'}")
