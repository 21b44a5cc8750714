"""Multipath FIR channel and calibrated AWGN injection.

The channel is a sparse FIR filter y[n] = sum_i gain_i * x[n - delay_i].
A DelayLine carries the input tail across calls so consecutive symbol
blocks of a frame see physically correct inter-symbol leakage.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import EmptyInput, InvalidConfiguration, NonPositiveRefPower
from .numerics import RngStream


@dataclass(frozen=True)
class ChannelModel:
    """Static multipath channel: taps are (complex gain, integer sample delay)."""

    taps: tuple[tuple[complex, int], ...]

    def __post_init__(self):
        if len(self.taps) == 0:
            raise InvalidConfiguration("channel needs at least one tap")
        norm = []
        for gain, delay in self.taps:
            d = int(delay)
            if d != delay or d < 0:
                raise InvalidConfiguration(f"tap delay must be a non-negative integer, got {delay}")
            norm.append((complex(gain), d))
        delays = [d for _, d in norm]
        if len(set(delays)) != len(delays):
            raise InvalidConfiguration("tap delays must be distinct")
        norm.sort(key=lambda t: t[1])
        object.__setattr__(self, "taps", tuple(norm))

    @classmethod
    def identity(cls) -> "ChannelModel":
        return cls(((1.0 + 0.0j, 0),))

    @property
    def gains(self) -> np.ndarray:
        return np.array([g for g, _ in self.taps], dtype=np.complex128)

    @property
    def delays(self) -> np.ndarray:
        return np.array([d for _, d in self.taps], dtype=np.intp)

    @property
    def max_delay(self) -> int:
        return self.taps[-1][1]


class DelayLine:
    """Input history for streaming FIR filtering; single-owner per pipeline."""

    def __init__(self, size: int):
        self.buffer = np.zeros(int(size), dtype=np.complex128)

    @classmethod
    def for_channel(cls, ch: ChannelModel) -> "DelayLine":
        return cls(ch.max_delay)

    def reset(self) -> None:
        self.buffer[:] = 0


def apply_multipath(x, ch: ChannelModel, state: DelayLine) -> np.ndarray:
    """Streaming FIR filter; past samples come from (and update) the delay line.

    Splitting an input into chunks and streaming them through produces
    bitwise the same output as one whole-vector call.
    """
    xv = np.asarray(x, dtype=np.complex128).ravel()
    d_max = state.buffer.size
    if d_max < ch.max_delay:
        raise InvalidConfiguration(
            f"delay line holds {d_max} samples but channel needs {ch.max_delay}"
        )
    ext = np.concatenate([state.buffer, xv])
    y = np.zeros(xv.size, dtype=np.complex128)
    for gain, delay in ch.taps:
        y += gain * ext[d_max - delay : d_max - delay + xv.size]
    if d_max:
        state.buffer = ext[ext.size - d_max :].copy()
    return y


def signal_power(x) -> float:
    """Mean of |x[n]|^2."""
    xv = np.asarray(x)
    if xv.size == 0:
        raise EmptyInput("signal_power of an empty vector")
    return float(np.mean(np.abs(xv) ** 2))


def add_awgn(x, snr_db: float, ref_power: float, rng: RngStream) -> np.ndarray:
    """Add complex white Gaussian noise at the commanded SNR.

    Per-sample noise variance is ref_power / 10^(snr_db/10), split equally
    between real and imaginary parts. snr_db = +inf is the zero-noise flag.
    """
    if not ref_power > 0:
        raise NonPositiveRefPower(f"reference power must be > 0, got {ref_power}")
    xv = np.asarray(x, dtype=np.complex128)
    if math.isinf(snr_db) and snr_db > 0:
        return xv.copy()
    noise_power = ref_power * 10.0 ** (-snr_db / 10.0)
    sigma = math.sqrt(noise_power / 2.0)
    re, im = rng.gaussian_pairs(xv.size)
    return xv + sigma * (re + 1j * im).reshape(xv.shape)


def load_channel_profile(path) -> ChannelModel:
    """Read a channel profile file: one "delay gain_real gain_imag" per line.

    Blank lines and '#' comments are ignored.
    """
    taps = []
    with open(path) as f:
        for lineno, raw in enumerate(f, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 3:
                raise InvalidConfiguration(
                    f"{path}:{lineno}: expected 'delay gain_real gain_imag', got {raw!r}"
                )
            try:
                delay = int(parts[0])
                gain = complex(float(parts[1]), float(parts[2]))
            except ValueError as exc:
                raise InvalidConfiguration(f"{path}:{lineno}: {exc}") from exc
            taps.append((gain, delay))
    if not taps:
        raise InvalidConfiguration(f"{path}: no channel taps found")
    return ChannelModel(tuple(taps))
