"""Volumes of punctured-torus bundles and explicit Weil-Petersson bounds."""

from .bounds import SurfaceType, area, diameter_lower, inradius_interval, km_check, systole_bounds, wp_translation_lower
from .farey import FareySlope, farey_depth, pants_distance, wp_distance_interval
from .mapping_class import MappingClass, from_matrix, from_word, lr_decomposition, psi_n
from .solver import solve_shapes, volume, volume_of_word
from .special_functions import V3, V8, bloch_wigner, lobachevsky, weeks_volume
from .triangulation import build_layered, gluing_equations

__version__ = "0.1.0"
