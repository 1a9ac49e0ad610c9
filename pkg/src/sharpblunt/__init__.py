"""Sharp/blunt classification for dual pairs of affine Weyl groups."""

__version__ = "0.1.0"
