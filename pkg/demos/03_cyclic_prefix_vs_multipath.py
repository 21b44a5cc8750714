"""Show what the cyclic prefix actually buys.

A two-tap multipath channel is swept over echo delays from well inside the
cyclic prefix to well beyond it. While the echo delay stays within the
prefix, the equalized noiseless link is exact (BER 0); once the delay
crosses cp_len, orthogonality between subcarriers is lost and errors
appear even without any noise.
"""

import math

import numpy as np

from ofdmsim import ChannelModel, OfdmConfig, SweepSpec, run_ber_point

CP_LEN = 32

cfg = OfdmConfig(n_subchannels=256, cp_len=CP_LEN, mod_order=16)
print(f"N={cfg.n_subchannels}, cp_len={CP_LEN}, 16-QAM, noiseless, known-CSI equalizer")
print(f"{'echo delay':>10} {'within CP?':>10} {'bit errors':>11} {'BER':>10}")

for delay in (1, 8, 16, 31, 32, 33, 36, 48, 64):
    channel = ChannelModel(((1.0, 0), (0.5 * np.exp(1j * np.pi / 4), delay)))
    spec = SweepSpec(cfg=cfg, iterations=20, channel=channel)
    pt = run_ber_point(spec, math.inf)
    within = "yes" if delay <= CP_LEN else "no"
    print(f"{delay:>10} {within:>10} {pt.bit_errors:>11} {pt.ber:>10.2e}")

print("\nechoes at delay <= cp_len are absorbed: the linear channel acts as a")
print("circular convolution and per-subcarrier division undoes it exactly.")
print("beyond the prefix the onset is graded: one sample of excess delay leaks")
print("only ~1/N of the echo energy per subcarrier, so at these frame sizes the")
print("first errors show up a few samples past cp_len and then grow quickly.")
