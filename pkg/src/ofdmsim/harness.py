"""Monte Carlo BER sweep engine with analytic references and CSV output.

Each Monte Carlo iteration transmits a frame of consecutive OFDM symbols
through multipath + AWGN and counts data-bit errors (pilot bits never enter
the accounting). Iteration i always uses random stream_id = i, and error
counts reduce by integer addition, so results are identical no matter how
iterations are scheduled across workers.

SNR here is average transmitted time-domain signal power over per-sample
complex noise power; the companion Eb/N0 reported in results is
snr_db - 10*log10(bits_per_symbol * n_data/N).
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .channel import ChannelModel, DelayLine, add_awgn, apply_multipath, signal_power
from .errors import InvalidConfiguration, UnsupportedOrder
from .modem import Constellation, build_constellation, demap_symbols, map_bits
from .numerics import RngStream, q_function, seeded_stream
from .ofdm import (
    OfdmConfig,
    allocate_subcarriers,
    channel_frequency_response,
    equalize,
    extract_data,
    ofdm_demodulate,
    ofdm_modulate,
)

# per-iteration child stream tags
_TAG_BITS = 1
_TAG_NOISE = 2
_TAG_ALLOC = 3


@dataclass(frozen=True)
class SweepSpec:
    """Everything one BER sweep needs; defaults follow the standard setup
    (SNR 0..27 dB, 100 iterations, pure-AWGN single-tap channel)."""

    cfg: OfdmConfig
    snr_start_db: float = 0.0
    snr_stop_db: float = 27.0
    snr_step_db: float = 3.0
    iterations: int = 100
    symbols_per_iteration: int = 10
    seed: int = 1
    channel: ChannelModel = field(default_factory=ChannelModel.identity)

    def __post_init__(self):
        if self.snr_start_db > self.snr_stop_db:
            raise InvalidConfiguration("snr_start_db must be <= snr_stop_db")
        if not self.snr_step_db > 0:
            raise InvalidConfiguration("snr_step_db must be > 0")
        if self.iterations < 1:
            raise InvalidConfiguration("iterations must be >= 1")
        if self.symbols_per_iteration < 1:
            raise InvalidConfiguration("symbols_per_iteration must be >= 1")


@dataclass(frozen=True)
class BerPoint:
    snr_db: float
    eb_n0_db: float
    bit_errors: int
    bits_total: int
    ber: float
    analytic_ber: float | None
    stderr_est: float


@dataclass(frozen=True)
class SweepResult:
    spec: SweepSpec
    points: tuple[BerPoint, ...]
    metadata: dict


def bits_per_symbol(order: int) -> int:
    if order not in (4, 8, 16):
        raise UnsupportedOrder(f"modulation order must be one of 4, 8, 16; got {order}")
    return order.bit_length() - 1


def eb_n0_offset_db(cfg: OfdmConfig) -> float:
    """snr_db - eb_n0_db for this configuration."""
    k = bits_per_symbol(cfg.mod_order)
    return 10.0 * math.log10(k * cfg.nominal_data_count / cfg.n_subchannels)


def eb_n0_db_for_snr(snr_db: float, cfg: OfdmConfig) -> float:
    return snr_db - eb_n0_offset_db(cfg)


def snr_db_for_eb_n0(eb_n0_db: float, cfg: OfdmConfig) -> float:
    return eb_n0_db + eb_n0_offset_db(cfg)


def analytic_ber(order: int, eb_n0_db: float) -> float | None:
    """Closed-form Gray-coded BER over AWGN, or None where none is adopted.

    order 4 is exact; order 16 is the nearest-neighbor approximation
    0.75*Q(sqrt(0.8*gamma_b)), good to a few percent above ~6 dB; order 8
    has no closed form here (its oracle is single-carrier Monte Carlo).
    """
    k = bits_per_symbol(order)  # validates order
    if order == 8:
        return None
    gamma_b = 10.0 ** (eb_n0_db / 10.0)
    if order == 4:
        return q_function(math.sqrt(2.0 * gamma_b))
    return 0.75 * q_function(math.sqrt(0.8 * gamma_b))


def snr_grid(spec: SweepSpec) -> list[float]:
    count = int(math.floor((spec.snr_stop_db - spec.snr_start_db) / spec.snr_step_db + 1e-9)) + 1
    return [spec.snr_start_db + i * spec.snr_step_db for i in range(count)]


def _iteration_counts(
    spec: SweepSpec, snr_db: float, iteration: int, const: Constellation, h: np.ndarray
) -> tuple[int, int]:
    """Transmit and receive one frame; return (bit_errors, data_bits)."""
    cfg = spec.cfg
    n = cfg.n_subchannels
    n_sym = spec.symbols_per_iteration
    rng = seeded_stream(spec.seed, iteration)
    bits_rng = rng.child(_TAG_BITS)
    noise_rng = rng.child(_TAG_NOISE)
    alloc_rng = rng.child(_TAG_ALLOC)

    maps = [allocate_subcarriers(cfg, j, alloc_rng) for j in range(n_sym)]
    counts = [m.data_indices.size for m in maps]
    total_data = sum(counts)
    total_bits = const.bits_per_symbol * total_data
    tx_bits = bits_rng.bits(total_bits)
    data_syms = map_bits(tx_bits, const)

    grid = np.zeros((n_sym, n), dtype=np.complex128)
    offset = 0
    for j, smap in enumerate(maps):
        grid[j, smap.data_indices] = data_syms[offset : offset + counts[j]]
        grid[j, smap.pilot_indices] = smap.pilot_values
        offset += counts[j]

    tx = ofdm_modulate(grid, cfg).ravel()
    state = DelayLine.for_channel(spec.channel)
    faded = apply_multipath(tx, spec.channel, state)
    rx = add_awgn(faded, snr_db, signal_power(tx), noise_rng)

    fgrid = ofdm_demodulate(rx.reshape(n_sym, cfg.samples_per_symbol), cfg)
    rx_syms = np.empty(total_data, dtype=np.complex128)
    offset = 0
    for j, smap in enumerate(maps):
        eq = equalize(fgrid[j], h, used=smap.data_indices)
        rx_syms[offset : offset + counts[j]] = extract_data(eq, smap)
        offset += counts[j]

    rx_bits = demap_symbols(rx_syms, const)
    return int(np.count_nonzero(rx_bits != tx_bits)), total_bits


def _point_chunk(args) -> tuple[int, int]:
    spec, snr_db, lo, hi = args
    const = build_constellation(spec.cfg.mod_order)
    h = channel_frequency_response(spec.channel, spec.cfg.n_subchannels)
    errors = 0
    bits = 0
    for i in range(lo, hi):
        e, b = _iteration_counts(spec, snr_db, i, const, h)
        errors += e
        bits += b
    return errors, bits


def _chunk_bounds(total: int, chunks: int) -> list[tuple[int, int]]:
    chunks = max(1, min(chunks, total))
    base, extra = divmod(total, chunks)
    bounds = []
    lo = 0
    for c in range(chunks):
        hi = lo + base + (1 if c < extra else 0)
        bounds.append((lo, hi))
        lo = hi
    return bounds


def run_ber_point(spec: SweepSpec, snr_db: float, workers: int = 1) -> BerPoint:
    """Monte Carlo BER at one SNR: iterations x symbols_per_iteration frames.

    Only data bits are counted. Results are deterministic in (spec, seed)
    for any worker count.
    """
    if workers <= 1:
        errors, bits = _point_chunk((spec, snr_db, 0, spec.iterations))
    else:
        tasks = [(spec, snr_db, lo, hi) for lo, hi in _chunk_bounds(spec.iterations, workers)]
        with ProcessPoolExecutor(max_workers=len(tasks)) as pool:
            partials = list(pool.map(_point_chunk, tasks))
        errors = sum(e for e, _ in partials)
        bits = sum(b for _, b in partials)
    ber = errors / bits if bits else 0.0
    stderr = math.sqrt(ber * (1.0 - ber) / bits) if bits else 0.0
    eb_n0 = eb_n0_db_for_snr(snr_db, spec.cfg)
    return BerPoint(
        snr_db=snr_db,
        eb_n0_db=eb_n0,
        bit_errors=errors,
        bits_total=bits,
        ber=ber,
        analytic_ber=analytic_ber(spec.cfg.mod_order, eb_n0),
        stderr_est=stderr,
    )


def run_sweep(spec: SweepSpec, workers: int = 1) -> SweepResult:
    """One BerPoint per grid SNR from snr_start to snr_stop in snr_step steps."""
    from . import __version__

    points = tuple(run_ber_point(spec, snr, workers) for snr in snr_grid(spec))
    metadata = {
        "seed": spec.seed,
        "version": __version__,
        "eb_n0_offset_db": eb_n0_offset_db(spec.cfg),
    }
    return SweepResult(spec=spec, points=points, metadata=metadata)


def write_csv(result: SweepResult, sink) -> None:
    """Write one row per BER point; byte output is deterministic."""
    lines = ["snr_db,eb_n0_db,ber,bit_errors,bits_total,analytic_ber"]
    for p in result.points:
        analytic = "" if p.analytic_ber is None else repr(float(p.analytic_ber))
        lines.append(
            f"{float(p.snr_db)!r},{float(p.eb_n0_db)!r},{float(p.ber)!r},"
            f"{p.bit_errors},{p.bits_total},{analytic}"
        )
    text = "\n".join(lines) + "\n"
    if hasattr(sink, "write"):
        sink.write(text)
    else:
        with open(sink, "w", newline="") as f:
            f.write(text)


def single_carrier_ber_counts(
    order: int, eb_n0_db: float, n_bits: int, rng: RngStream
) -> tuple[int, int]:
    """Monte Carlo BER of the bare constellation over AWGN (no OFDM).

    Gray-mapped symbols of unit energy receive complex Gaussian noise with
    variance 1/(bits_per_symbol * gamma_b); returns (bit_errors, bits_sent).
    """
    const = build_constellation(order)
    k = const.bits_per_symbol
    n_sym = -(-n_bits // k)
    bits = rng.bits(n_sym * k)
    syms = map_bits(bits, const)
    gamma_s = k * 10.0 ** (eb_n0_db / 10.0)
    sigma = math.sqrt(1.0 / (2.0 * gamma_s))
    re, im = rng.gaussian_pairs(n_sym)
    rx_bits = demap_symbols(syms + sigma * (re + 1j * im), const)
    return int(np.count_nonzero(rx_bits != bits)), n_sym * k
