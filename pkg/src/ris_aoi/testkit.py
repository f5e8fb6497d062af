"""Helpers for generating random problem instances in tests and oracles."""

from __future__ import annotations

import numpy as np

from .channel import ChannelSlot


def random_slot(
    rng: np.random.Generator,
    l_elements: int,
    n_weak: int,
    scale: float = 1.0,
    slot_index: int = 0,
) -> ChannelSlot:
    """Unstructured random channel slot (CN(0, scale^2) entries)."""

    def cn(*shape):
        return scale * (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)

    return ChannelSlot(
        h_sb=cn(n_weak),
        h_wb=cn(n_weak),
        h_wr=cn(n_weak, l_elements),
        h_rb=cn(l_elements),
        slot_index=slot_index,
    )
