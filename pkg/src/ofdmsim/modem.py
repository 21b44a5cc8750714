"""Gray-coded QAM mapping and hard-decision demapping for orders 4, 8, 16.

Constellations are rectangular grids normalized to unit average energy:

  order 4   (+/-1 +/- 1j) / sqrt(2)
  order 8   4x2 grid, re in {+/-1, +/-3}, im in {+/-1}, / sqrt(6)
  order 16  4x4 grid, re, im in {+/-1, +/-3}, / sqrt(10)

Labels use a per-axis reflected Gray code, in-phase bits first then
quadrature bits, most-significant bit first in stream order. Bit pattern 0
on an axis selects the most positive amplitude, so e.g. bits 00 map to
(+1+1j)/sqrt(2) for order 4. Nearest-neighbor points always differ in
exactly one label bit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import LengthNotDivisible, UnsupportedOrder

# (in-phase bits, quadrature bits) per order
_AXIS_BITS = {4: (1, 1), 8: (2, 1), 16: (2, 2)}

_DEMAP_CHUNK = 1 << 16


def _gray_decode(g: int) -> int:
    b = 0
    while g:
        b ^= g
        g >>= 1
    return b


@dataclass(frozen=True, eq=False)
class Constellation:
    """Immutable unit-energy constellation; points are indexed by label value."""

    order: int
    bits_per_symbol: int
    points: np.ndarray

    @property
    def labels(self) -> np.ndarray:
        return np.arange(self.order)

    def bit_strings(self) -> list[str]:
        """Label bit patterns, MSB first, in label order."""
        return [format(v, f"0{self.bits_per_symbol}b") for v in range(self.order)]


def _axis_amplitudes(n_bits: int) -> np.ndarray:
    # descending odd levels, indexed by Gray-decoded bit value: bit pattern 0
    # lands on the most positive amplitude
    m = 1 << n_bits
    desc = np.arange(m - 1, -m, -2, dtype=float)
    return desc[[_gray_decode(v) for v in range(m)]]


def build_constellation(order: int) -> Constellation:
    """Gray-labeled unit-average-energy constellation for order 4, 8 or 16."""
    if order not in _AXIS_BITS:
        raise UnsupportedOrder(f"modulation order must be one of 4, 8, 16; got {order}")
    i_bits, q_bits = _AXIS_BITS[order]
    i_amp = _axis_amplitudes(i_bits)
    q_amp = _axis_amplitudes(q_bits)
    labels = np.arange(order)
    vi = labels >> q_bits
    vq = labels & ((1 << q_bits) - 1)
    points = i_amp[vi] + 1j * q_amp[vq]
    points /= np.sqrt(np.mean(np.abs(points) ** 2))
    points.setflags(write=False)
    return Constellation(order=order, bits_per_symbol=i_bits + q_bits, points=points)


def map_bits(bits, c: Constellation) -> np.ndarray:
    """Map a {0,1} bit block to constellation points, bits_per_symbol at a time."""
    b = np.asarray(bits, dtype=np.uint8).ravel()
    k = c.bits_per_symbol
    if b.size % k != 0:
        raise LengthNotDivisible(
            f"bit block length {b.size} not divisible by bits_per_symbol {k}"
        )
    groups = b.reshape(-1, k).astype(np.intp)
    vals = np.zeros(groups.shape[0], dtype=np.intp)
    for col in range(k):  # MSB first
        vals = (vals << 1) | groups[:, col]
    return c.points[vals]


def demap_symbols(symbols, c: Constellation) -> np.ndarray:
    """Hard-decision demap: nearest point in Euclidean distance.

    Ties resolve to the lowest label index. Returns the recovered bits as a
    uint8 array, MSB first within each symbol.
    """
    s = np.asarray(symbols, dtype=np.complex128).ravel()
    k = c.bits_per_symbol
    labels = np.empty(s.size, dtype=np.intp)
    # argmin of |s-p|^2 == argmin of |p|^2 - 2*Re(s*conj(p)); the projection
    # term is a matrix product, which keeps large blocks fast
    p_iq = np.stack([c.points.real, c.points.imag])
    p_sq = c.points.real**2 + c.points.imag**2
    for start in range(0, s.size, _DEMAP_CHUNK):
        chunk = s[start : start + _DEMAP_CHUNK]
        s_iq = np.empty((chunk.size, 2))
        s_iq[:, 0] = chunk.real
        s_iq[:, 1] = chunk.imag
        metric = s_iq @ p_iq
        metric *= -2.0
        metric += p_sq
        labels[start : start + _DEMAP_CHUNK] = np.argmin(metric, axis=1)
    shifts = np.arange(k - 1, -1, -1)
    return ((labels[:, np.newaxis] >> shifts) & 1).astype(np.uint8).ravel()


def write_constellation_csv(c: Constellation, sink) -> None:
    """Dump (label, point) rows as CSV to a path or file-like sink."""
    lines = ["label,bits,real,imag"]
    for v, bits in enumerate(c.bit_strings()):
        p = c.points[v]
        lines.append(f"{v},{bits},{float(p.real)!r},{float(p.imag)!r}")
    text = "\n".join(lines) + "\n"
    if hasattr(sink, "write"):
        sink.write(text)
    else:
        with open(sink, "w", newline="") as f:
            f.write(text)
