"""Exception types shared across the package."""


class ConfigError(ValueError):
    """Invalid or inconsistent configuration values."""


class DimensionError(ValueError):
    """Array arguments with incompatible shapes or lengths."""


class FramingError(ValueError):
    """Sample streams too short or misaligned for the requested framing."""
