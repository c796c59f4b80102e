"""Exact topology of configuration spaces of unit disks in an infinite strip."""

__version__ = "0.1.0"
