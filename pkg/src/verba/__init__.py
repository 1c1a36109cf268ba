"""Chirality of word-map images in finite groups."""

__version__ = "0.1.0"
