"""Finite categories with nullhomotopies, their arrow-category completion, and the
additive normalization/denormalization equivalence, checked exhaustively at small sizes."""

__version__ = "0.1.0"
