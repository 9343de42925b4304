"""Rule-based sentiment analysis toolkit for tweet corpora."""

__version__ = "0.1.0"
