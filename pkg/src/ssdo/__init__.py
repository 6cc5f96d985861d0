"""SSDO - single-source edge-fault-tolerant distance oracles."""

__version__ = "0.1.0"
