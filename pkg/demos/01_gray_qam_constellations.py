"""Walk through the three Gray-coded QAM constellations.

Prints each (label, point) table, verifies the unit-energy and Gray
adjacency properties, and (when matplotlib is available) saves a scatter
plot of the three constellations to constellations.png.
"""

import numpy as np

from ofdmsim import build_constellation

for order in (4, 8, 16):
    c = build_constellation(order)
    energy = np.mean(np.abs(c.points) ** 2)
    print(f"\n{order}-point constellation, {c.bits_per_symbol} bits/symbol, "
          f"mean energy {energy:.12f}")
    for label, bits in enumerate(c.bit_strings()):
        p = c.points[label]
        print(f"  {bits}  ->  {p.real:+.4f}{p.imag:+.4f}j")

    # Gray property: nearest neighbors differ in exactly one label bit
    dist = np.abs(c.points[:, None] - c.points[None, :])
    np.fill_diagonal(dist, np.inf)
    neighbors = np.argwhere(dist < dist.min() * 1.000001)
    flips = {bin(int(i) ^ int(j)).count("1") for i, j in neighbors}
    print(f"  nearest-neighbor pairs: {len(neighbors)}, label bit flips per pair: {flips}")

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, axes = plt.subplots(1, 3, figsize=(12, 4))
    for ax, order in zip(axes, (4, 8, 16)):
        c = build_constellation(order)
        ax.scatter(c.points.real, c.points.imag)
        for label, bits in enumerate(c.bit_strings()):
            p = c.points[label]
            ax.annotate(bits, (p.real, p.imag), textcoords="offset points", xytext=(4, 4))
        ax.set_title(f"order {order}")
        ax.set_aspect("equal")
        ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig("constellations.png", dpi=120)
    print("\nsaved constellations.png")
except ImportError:
    print("\nmatplotlib not installed; skipping the plot")
