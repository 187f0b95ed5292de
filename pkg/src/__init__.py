"""engage-rank: survey engagement analysis with boosted trees, feature importance and AHP weighting."""

__version__ = "0.1.0"
