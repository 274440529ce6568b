"""catdiff: executable models for differential storage categories."""
__version__ = "0.1.0"
