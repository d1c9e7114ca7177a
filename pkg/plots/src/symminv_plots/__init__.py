"""Rendering of symminv datasets.

These scripts do no mathematics: every plotted number comes straight out
of the CSV columns, with only axis mapping applied.
"""

__version__ = "0.1.0"
