"""Normal and almost normal surfaces in triangulated 3-manifolds."""
from .curves import NormalCurve, classify_curve, enumerate_curves, hemispheres, are_parallel
from .diskcomplex import Certificate, build_disk_complex, certify_almost_normal, classify_tet
from .sequences import WidthSequence, compare_size, plateaus, size
from .surface import (
    SurfaceConfig,
    TetCoords,
    TubeDescriptor,
    Width,
    compare_width,
    components,
    euler_characteristic,
    total_weight,
    validate,
    width,
)
from .triangulation import Triangulation, build_triangulation, load_triangulation

__all__ = [
    "Certificate", "NormalCurve", "SurfaceConfig", "TetCoords", "Triangulation", "TubeDescriptor", "Width",
    "WidthSequence", "are_parallel", "build_disk_complex", "build_triangulation", "certify_almost_normal",
    "classify_curve", "classify_tet", "compare_size", "compare_width", "components", "enumerate_curves",
    "euler_characteristic", "hemispheres", "load_triangulation", "plateaus", "size", "total_weight",
    "validate", "width",
]
