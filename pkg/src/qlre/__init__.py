"""qlre: logical/physical resource estimation and desk-scale verification for
fault-tolerant open-system quantum simulation."""

__version__ = "0.1.0"
