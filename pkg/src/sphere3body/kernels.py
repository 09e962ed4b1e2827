"""Kernel selection: compiled extension when built, numpy fallback
otherwise. Import g_array / g_scalar from here."""

try:
    from ._gscan import BACKEND, g_array, g_scalar  # noqa: F401
except ImportError:  # pragma: no cover - depends on the build
    from ._gscan_py import BACKEND, g_array, g_scalar  # noqa: F401
