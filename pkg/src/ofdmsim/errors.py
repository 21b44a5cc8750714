"""Exception types raised by the simulator."""


class OfdmSimError(Exception):
    """Base class for all simulator errors."""


class InvalidConfiguration(OfdmSimError):
    """A configuration value violates its documented constraints."""


class PilotCountExceedsN(InvalidConfiguration):
    """More pilot subcarriers requested than subchannels available."""


class NonPowerOfTwoLength(OfdmSimError):
    """Transform input length is not a power of two."""


class UnsupportedOrder(InvalidConfiguration):
    """Modulation order outside the supported set {4, 8, 16}."""


class LengthNotDivisible(OfdmSimError):
    """Bit block length is not a multiple of bits-per-symbol."""


class LengthMismatch(OfdmSimError):
    """Vector length disagrees with the configured dimension."""


class SingularChannelGain(OfdmSimError):
    """Channel frequency response is (numerically) zero on a used subcarrier."""


class EmptyInput(OfdmSimError):
    """Operation requires a non-empty sample vector."""


class NonPositiveRefPower(OfdmSimError):
    """Reference power for noise calibration must be > 0."""
