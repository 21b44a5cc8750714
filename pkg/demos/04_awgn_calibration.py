"""Check the AWGN generator against its own dial.

For each commanded SNR the noise power is measured over a million samples
and converted back to dB; the two should agree to within a few millidB.
Also demonstrates that reference power is measured from the actual
transmitted signal, so the calibration holds for any input scale.
"""

import math

import numpy as np

from ofdmsim import add_awgn, seeded_stream, signal_power

N_SAMPLES = 1_000_000

print(f"{'commanded dB':>12} {'measured dB':>12} {'error dB':>10}")
for snr_db in (0.0, 3.0, 9.0, 18.0, 27.0):
    rng = seeded_stream(7, int(snr_db))
    x = np.full(N_SAMPLES, 2.5 - 1.5j)  # arbitrary scale
    y = add_awgn(x, snr_db, signal_power(x), rng)
    measured = 10 * math.log10(signal_power(x) / signal_power(y - x))
    print(f"{snr_db:>12.1f} {measured:>12.4f} {measured - snr_db:>+10.4f}")

print("\nsnr_db=inf is the exact zero-noise flag:")
x = np.ones(8, dtype=complex)
y = add_awgn(x, math.inf, 1.0, seeded_stream(1, 0))
print(f"  output identical to input: {np.array_equal(x, y)}")
