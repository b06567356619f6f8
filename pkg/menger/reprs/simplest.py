"""The simplest representation attached to a determining pair."""

from __future__ import annotations

import numpy as np

from menger.errors import ImageSplitsClasses
from menger.kernel import SubtractionMengerAlgebra
from menger.kernel.algebra import IntTable
from menger.order import DeterminingPairData
from menger.pfunc import UNDEFINED
from menger.reprs.representation import (
    BasePoint,
    Representation,
    RepresentationBlock,
    pair_name,
)


def simplest_graphs(S: SubtractionMengerAlgebra, D: DeterminingPairData) -> IntTable:
    """Local graphs over ``filter classes + n selectors``.

    On a tuple of classes ``g`` is evaluated over all representatives; the
    image lies in one class, which is the value unless it is W. On the
    all-selector tuple the value is the class of ``g`` itself. Mixed tuples
    stay undefined.

    Raises:
        ImageSplitsClasses: some image meets two classes.
    """
    m, n = S.size, S.rank
    class_of = D.class_of
    k = len(D.filter_classes)
    width = k + n
    graphs = np.full((m,) + (width,) * n, UNDEFINED, dtype=np.intp)

    if k:
        # W gets the sentinel class k
        image_class = np.where(class_of >= 0, class_of, k)
        members = np.flatnonzero(class_of >= 0)
        order = members[np.argsort(class_of[members], kind="stable")]
        starts = np.searchsorted(class_of[order], np.arange(k))
        images = image_class[S.op[np.ix_(np.arange(m), *([order] * n))]]
        low = high = images
        for axis in range(1, n + 1):
            low = np.minimum.reduceat(low, starts, axis=axis)
            high = np.maximum.reduceat(high, starts, axis=axis)
        split = np.argwhere(low != high)
        if len(split):
            g, *classes = (int(v) for v in split[0])
            raise ImageSplitsClasses(g, tuple(classes))
        graphs[(slice(None),) + (slice(0, k),) * n] = np.where(low == k, UNDEFINED, low)

    selectors = (slice(None),) + tuple(k + i for i in range(n))
    graphs[selectors] = class_of
    graphs.setflags(write=False)
    return graphs


def simplest_block(
    S: SubtractionMengerAlgebra,
    D: DeterminingPairData,
    graphs: IntTable | None = None,
) -> RepresentationBlock:
    if graphs is None:
        graphs = simplest_graphs(S, D)
    name = pair_name(S.labels, D.pair)
    points = [BasePoint.for_class(name, D.pair, k) for k in range(len(D.filter_classes))]
    points += [BasePoint.for_selector(name, D.pair, i) for i in range(1, S.rank + 1)]
    return RepresentationBlock(points=tuple(points), graphs=graphs)


def simplest_representation(S: SubtractionMengerAlgebra, D: DeterminingPairData) -> Representation:
    """The representation of ``S`` on the ε-classes of ``D`` outside W plus selectors."""
    return Representation(algebra=S, blocks=(simplest_block(S, D),), provenance=(D.pair,))
