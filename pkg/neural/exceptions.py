class NetworkError(Exception):
    """Base class for neural network errors."""


class DimensionMismatch(NetworkError):
    pass


class NetworkFormatError(NetworkError):
    pass
