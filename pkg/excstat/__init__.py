"""Exact excedance and descent statistics with log-concavity verification."""

from excstat.common import VERSION as __version__
