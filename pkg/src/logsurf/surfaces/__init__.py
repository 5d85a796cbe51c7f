"""Intersection theory on blown-up catalog surfaces."""

from logsurf.surfaces.config import (
    BaseSurface,
    BlowUp,
    ConfigBuilder,
    ConfigError,
    Curve,
    SurfaceConfig,
    base_surface,
    canonical_square,
    make_base,
)
from logsurf.surfaces.pairs import (
    LcVerdict,
    LogPair,
    NoZariskiDecomposition,
    NotBig,
    VolumeCertificate,
    ZariskiResult,
    find_accessible_nklt,
    lc_check,
    volume,
    zariski,
)
from logsurf.surfaces.scene import SceneError, dump_scene, load_scene, read_scene

__all__ = [
    "BaseSurface", "BlowUp", "ConfigBuilder", "ConfigError", "Curve", "SurfaceConfig",
    "base_surface", "canonical_square", "make_base",
    "LcVerdict", "LogPair", "NoZariskiDecomposition", "NotBig", "VolumeCertificate",
    "ZariskiResult", "find_accessible_nklt", "lc_check", "volume", "zariski",
    "SceneError", "dump_scene", "load_scene", "read_scene",
]
