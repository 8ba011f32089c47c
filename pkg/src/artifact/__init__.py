"""Bumpless pipe dreams and positivity certificates for double Edelman-Greene coefficients."""

from .perm import Partition, Permutation, parse_partition, parse_permutation
from .poly import Polynomial

__all__ = ["Partition", "Permutation", "Polynomial", "parse_partition", "parse_permutation"]
__version__ = "0.1.0"
