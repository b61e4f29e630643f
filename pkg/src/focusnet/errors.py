"""Exception types shared across the package."""


class ShapeError(ValueError):
    """Array shapes incompatible with the requested operation."""


class DataFormatError(ValueError):
    """Malformed input file (IDX, CSV, config).

    Carries enough location information (byte offset or line number)
    to point at the defect.
    """

    def __init__(self, message, *, path=None, offset=None, line=None):
        loc = []
        if path is not None:
            loc.append(str(path))
        if line is not None:
            loc.append(f"line {line}")
        if offset is not None:
            loc.append(f"byte {offset}")
        prefix = ":".join(loc)
        super().__init__(f"{prefix}: {message}" if prefix else message)
        self.path = path
        self.offset = offset
        self.line = line


class CheckpointError(RuntimeError):
    """Checkpoint file is the wrong version, truncated, or corrupted."""


class ConfigError(ValueError):
    """Experiment config file is missing keys or holds invalid values."""
