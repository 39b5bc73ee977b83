"""Single source of the package version, recorded in emitted audit trailers."""

__version__ = "0.1.0"
