"""OFDM framing: pilot allocation, IFFT modulation, cyclic prefix, FFT
demodulation and known-CSI equalization.

One OFDM symbol carries N subcarriers; the modulator synthesizes the time
signal with an inverse FFT and prepends the last cp_len samples as the
cyclic prefix. As long as every channel delay fits inside the prefix, the
linear channel acts circularly and each subcarrier is simply scaled by the
channel frequency response, which the equalizer divides back out.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import transform
from .channel import ChannelModel
from .errors import (
    InvalidConfiguration,
    LengthMismatch,
    PilotCountExceedsN,
    SingularChannelGain,
    UnsupportedOrder,
)
from .numerics import RngStream

PILOT_PATTERNS = ("block", "comb", "random")

_SUPPORTED_ORDERS = (4, 8, 16)

# child-stream tags used by the allocator (derived from the caller's stream)
_TAG_INDICES = 101
_TAG_VALUES = 102

_INV_SQRT2 = 1.0 / np.sqrt(2.0)


@dataclass(frozen=True)
class OfdmConfig:
    """Static link parameters; cp_len and pilot_count default to N/8.

    bandwidth_hz is reporting-only metadata: when set, subcarrier spacing,
    guard time and total symbol duration are derived from it. The
    simulation itself is sample-indexed.
    """

    n_subchannels: int
    cp_len: int | None = None
    pilot_pattern: str = "comb"
    pilot_count: int | None = None
    mod_order: int = 4
    bandwidth_hz: float | None = None
    block_period: int = 8

    def __post_init__(self):
        n = self.n_subchannels
        if not transform.is_power_of_two(n):
            raise InvalidConfiguration(f"n_subchannels must be a power of 2, got {n}")
        if self.cp_len is None:
            object.__setattr__(self, "cp_len", n // 8)
        if not 0 <= self.cp_len < n:
            raise InvalidConfiguration(f"cp_len must satisfy 0 <= cp_len < {n}, got {self.cp_len}")
        if self.pilot_pattern not in PILOT_PATTERNS:
            raise InvalidConfiguration(
                f"pilot_pattern must be one of {PILOT_PATTERNS}, got {self.pilot_pattern!r}"
            )
        if self.pilot_count is None:
            object.__setattr__(self, "pilot_count", n // 8)
        if self.pilot_count >= n:
            raise PilotCountExceedsN(f"pilot_count {self.pilot_count} must be < {n}")
        if self.pilot_count < 0:
            raise InvalidConfiguration(f"pilot_count must be >= 0, got {self.pilot_count}")
        if self.mod_order not in _SUPPORTED_ORDERS:
            raise UnsupportedOrder(f"mod_order must be one of {_SUPPORTED_ORDERS}, got {self.mod_order}")
        if self.block_period < 1:
            raise InvalidConfiguration(f"block_period must be >= 1, got {self.block_period}")
        if self.bandwidth_hz is not None and not self.bandwidth_hz > 0:
            raise InvalidConfiguration(f"bandwidth_hz must be > 0, got {self.bandwidth_hz}")

    @property
    def subcarrier_spacing_hz(self) -> float | None:
        if self.bandwidth_hz is None:
            return None
        return self.bandwidth_hz / self.n_subchannels

    @property
    def guard_time_s(self) -> float | None:
        if self.bandwidth_hz is None:
            return None
        return self.cp_len / self.bandwidth_hz

    @property
    def symbol_time_s(self) -> float | None:
        """Total symbol duration: N samples of payload plus the guard time."""
        if self.bandwidth_hz is None:
            return None
        return self.n_subchannels / self.bandwidth_hz + self.guard_time_s

    @property
    def samples_per_symbol(self) -> int:
        return self.n_subchannels + self.cp_len

    @property
    def nominal_data_count(self) -> int:
        """Data subcarriers in a data-bearing symbol (block pilots fill whole symbols)."""
        if self.pilot_pattern == "block":
            return self.n_subchannels
        return self.n_subchannels - self.pilot_count


@dataclass(frozen=True, eq=False)
class SubcarrierMap:
    """Disjoint pilot/data index sets covering 0..N-1, plus known pilot values."""

    pilot_indices: np.ndarray
    data_indices: np.ndarray
    pilot_values: np.ndarray


def _qpsk_pilot_values(rng: RngStream, count: int) -> np.ndarray:
    u = rng.uniforms(2 * count)
    re = np.where(u[0::2] < 0.5, 1.0, -1.0)
    im = np.where(u[1::2] < 0.5, 1.0, -1.0)
    return (re + 1j * im) * _INV_SQRT2


def allocate_subcarriers(cfg: OfdmConfig, symbol_index: int, rng: RngStream) -> SubcarrierMap:
    """Pick pilot and data subcarriers for one OFDM symbol.

    block:  every block_period-th symbol is all pilots, the rest all data.
    comb:   fixed evenly spaced pilot indices round(i*N/pilot_count).
    random: pilot_count distinct indices, re-drawn per symbol_index but
            deterministic in (rng, symbol_index).

    Pilot values are known unit-energy QPSK points from a dedicated
    substream; the caller's stream state is never consumed.
    """
    n = cfg.n_subchannels
    count = cfg.pilot_count
    if count > n:
        raise PilotCountExceedsN(f"pilot_count {count} exceeds {n} subchannels")
    if cfg.pilot_pattern == "block":
        if symbol_index % cfg.block_period == 0:
            pilots = np.arange(n, dtype=np.intp)
        else:
            pilots = np.empty(0, dtype=np.intp)
    elif cfg.pilot_pattern == "comb":
        pilots = np.array([round(i * n / count) for i in range(count)], dtype=np.intp)
    else:  # random
        draw = rng.child(_TAG_INDICES, symbol_index)
        order = np.argsort(draw.uniforms(n), kind="stable")
        pilots = np.sort(order[:count])
    mask = np.ones(n, dtype=bool)
    mask[pilots] = False
    data = np.flatnonzero(mask)
    if pilots.size:
        values = _qpsk_pilot_values(rng.child(_TAG_VALUES, symbol_index), pilots.size)
    else:
        values = np.empty(0, dtype=np.complex128)
    return SubcarrierMap(pilot_indices=pilots, data_indices=data, pilot_values=values)


def build_frequency_symbol(data, smap: SubcarrierMap, cfg: OfdmConfig) -> np.ndarray:
    """Place data symbols (ascending subcarrier order) and pilots on the N bins."""
    d = np.asarray(data, dtype=np.complex128).ravel()
    if d.size != smap.data_indices.size:
        raise LengthMismatch(
            f"got {d.size} data symbols for {smap.data_indices.size} data subcarriers"
        )
    out = np.zeros(cfg.n_subchannels, dtype=np.complex128)
    out[smap.data_indices] = d
    out[smap.pilot_indices] = smap.pilot_values
    return out


def ofdm_modulate(freq, cfg: OfdmConfig) -> np.ndarray:
    """IFFT plus cyclic prefix: output length N + cp_len.

    Accepts a length-N vector or an (S, N) array of S symbols.
    """
    f = np.asarray(freq, dtype=np.complex128)
    n = cfg.n_subchannels
    if f.shape[-1] != n:
        raise LengthMismatch(f"frequency symbol length {f.shape[-1]} != N {n}")
    time = transform.ifft(f)
    if cfg.cp_len == 0:
        return time
    return np.concatenate([time[..., n - cfg.cp_len :], time], axis=-1)


def ofdm_demodulate(rx, cfg: OfdmConfig) -> np.ndarray:
    """Drop the cyclic prefix and FFT back to the N subcarrier values."""
    r = np.asarray(rx, dtype=np.complex128)
    expected = cfg.n_subchannels + cfg.cp_len
    if r.shape[-1] != expected:
        raise LengthMismatch(f"received symbol length {r.shape[-1]} != N + cp_len {expected}")
    return transform.fft(r[..., cfg.cp_len : cfg.cp_len + cfg.n_subchannels])


def channel_frequency_response(ch: ChannelModel, n: int) -> np.ndarray:
    """Per-subcarrier gain H[k] = sum_i gain_i * exp(-2j*pi*k*delay_i/n)."""
    k = np.arange(n)
    h = np.zeros(n, dtype=np.complex128)
    for gain, delay in ch.taps:
        h += gain * np.exp(-2j * np.pi * k * delay / n)
    return h


def equalize(freq, h, used: Sequence[int] | np.ndarray | None = None) -> np.ndarray:
    """Divide out the known channel response on the used subcarriers.

    used=None treats every subcarrier as used. Unused bins pass through
    untouched, and only used bins are checked for singular gains.
    """
    f = np.asarray(freq, dtype=np.complex128)
    hv = np.asarray(h, dtype=np.complex128).ravel()
    if f.shape[-1] != hv.size:
        raise LengthMismatch(f"vector length {f.shape[-1]} != response length {hv.size}")
    if used is None:
        if np.any(np.abs(hv) < 1e-12):
            raise SingularChannelGain("channel response is zero on a used subcarrier")
        return f / hv
    idx = np.asarray(used, dtype=np.intp)
    if np.any(np.abs(hv[idx]) < 1e-12):
        raise SingularChannelGain("channel response is zero on a used subcarrier")
    out = f.copy()
    out[..., idx] = f[..., idx] / hv[idx]
    return out


def extract_data(freq, smap: SubcarrierMap) -> np.ndarray:
    """Read the data symbols back out in ascending subcarrier order."""
    f = np.asarray(freq, dtype=np.complex128)
    return f[..., smap.data_indices]
