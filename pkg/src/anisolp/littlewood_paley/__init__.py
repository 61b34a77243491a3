"""Horizontal dyadic blocks, sharp band splits and the horizontal Bony split."""

from anisolp.littlewood_paley.partition import DyadicPartition, make_partition
from anisolp.littlewood_paley.blocks import BandTriple, band_range, band_split, delta_h, s_h
from anisolp.littlewood_paley.paraproduct import BonySplit, bony_split

__all__ = [
    "BandTriple",
    "BonySplit",
    "DyadicPartition",
    "band_range",
    "band_split",
    "bony_split",
    "delta_h",
    "make_partition",
    "s_h",
]
