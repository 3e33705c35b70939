"""Workbench for zero-dimensional locally compact extensions of pierced
Cantor worlds: clopen calculus, ZLB-algebra duality, the extension catalog,
local proximities, and the map-extension criteria."""

from .cantor import Clopen, Point, Region, World, clopen, cylinder, point, world
from .duality import Zlba, check_admissible, check_zlba, dual_space, leq0, zlba
from .extensions import Extension, alpha0, banaschewski, beta0, enumerate_catalog, extension_leq
from .maps import PresentedMap, check_zeq, extend, presented_map, verify_main_theorem
from .proximity import LocalProximity, proximity_of_extension, proximity_of_zlba

__all__ = [
    "Clopen", "Point", "Region", "World", "clopen", "cylinder", "point", "world",
    "Zlba", "check_admissible", "check_zlba", "dual_space", "leq0", "zlba",
    "Extension", "alpha0", "banaschewski", "beta0", "enumerate_catalog", "extension_leq",
    "PresentedMap", "check_zeq", "extend", "presented_map", "verify_main_theorem",
    "LocalProximity", "proximity_of_extension", "proximity_of_zlba",
]
