"""Bundled example data."""

from importlib import resources

import numpy as np


def seabirds():
    """Seabird abundance versus fish stock index at 12 monitoring sites.

    Yearly counts of breeding seabirds paired with a fish abundance index;
    the bird counts span four orders of magnitude, so rank-based analysis
    is the natural choice. Returns a (12, 2) array with seabirds in the
    first column.
    """
    ref = resources.files("hellcorr.data").joinpath("seabirds.csv")
    with ref.open("rb") as fh:
        return np.loadtxt(fh, delimiter=",", skiprows=1)
