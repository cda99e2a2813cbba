"""Over-Mahonian numbers: counting overlined permutations by inversions,
their lattice-path, overpartition and tiling models, and the injection
behind log-concavity of each row."""

from .core_numbers import (OverMahonianTriangle, double_factorial, row_by_alt_recurrence,
                           row_by_genfun, row_by_recurrence, row_sum, triangle)
from .lattice_paths import LatticePath, path_to_perm, perm_to_path, sagan_switch
from .logconcavity import apply_injection, apply_inverse, find_pivot, verify_injectivity
from .overpartitions import Overpartition
from .permutations import OverlinedPermutation, inversions, m_stats, parse_perm
from .tilings import Tiling

__version__ = "0.1.0"

__all__ = [
    "OverMahonianTriangle", "double_factorial", "row_by_alt_recurrence", "row_by_genfun",
    "row_by_recurrence", "row_sum", "triangle", "LatticePath", "path_to_perm",
    "perm_to_path", "sagan_switch", "apply_injection", "apply_inverse", "find_pivot",
    "verify_injectivity", "Overpartition", "OverlinedPermutation", "inversions",
    "m_stats", "parse_perm", "Tiling",
]
