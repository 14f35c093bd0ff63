"""Firing-regime resolution: layered spike cascades and the post-firing reset.

When at least one potential reaches the threshold, the spikers are absorbed
layer by layer: layer 0 holds the neurons at or above threshold on their own,
layer p+1 holds the neurons dragged over threshold by the accumulated kicks of
all earlier layers.  The construction stops at the first empty layer, so a
neuron spikes at most once per firing time.  The full spiking set is the
least fixpoint of this monotone absorption map.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import NetworkParams

__all__ = ["FiringOutcome", "resolve_firing"]


@dataclass(frozen=True)
class FiringOutcome:
    """Result of one firing regime.

    layers           disjoint index arrays, one per absorption layer
    spikers          sorted union of the layers
    post_potentials  potentials at the end of the firing regime:
                     reset for spikers, pre + received kicks for the rest
    """

    layers: tuple
    spikers: np.ndarray
    post_potentials: np.ndarray

    @property
    def is_full_sync(self) -> bool:
        """True when every neuron spiked (the synchronization event)."""
        return self.spikers.size == self.post_potentials.size


def resolve_firing(pre_potentials: np.ndarray, params: NetworkParams) -> FiringOutcome:
    """Compute the spiking layers and post-firing potentials.

    Requires at least one potential >= threshold (potentials exactly at the
    threshold spike; the comparison is a plain >= with no epsilon).
    """
    pre = np.asarray(pre_potentials, dtype=float)
    theta = params.threshold
    n = pre.size

    fired = pre >= theta
    if not fired.any():
        raise ValueError("resolve_firing called with no potential at threshold")

    layers = [np.flatnonzero(fired)]
    kick = np.zeros(n)
    while True:
        kick = params.weights.entries[np.flatnonzero(fired)].sum(axis=0)
        newly = ~fired & (pre + kick >= theta)
        if not newly.any():
            break
        layers.append(np.flatnonzero(newly))
        fired |= newly

    post = pre + kick
    post[fired] = params.reset

    return FiringOutcome(
        layers=tuple(layers),
        spikers=np.flatnonzero(fired),
        post_potentials=post,
    )
