"""Sklyanin algebras from elliptic-curve data: construction, certification
and birational transforms.  Thin JSON wrapper over the C++ core."""

import json as _json

from skly._core import __version__, run_command as _run_command

__all__ = [
    "__version__",
    "construct",
    "hilbert",
    "quadric_to_plane",
    "cremona",
    "witness",
    "sweep",
]


def _run(command, config):
    return _json.loads(_run_command(command, _json.dumps(config)))


def construct(config):
    """Build the algebra and report Hilbert values, relations and the
    central element."""
    return _run("construct", config)


def hilbert(config):
    """Hilbert function of the algebra defined by the config."""
    return _run("hilbert", config)


def quadric_to_plane(config):
    """Cubic data + one point -> quadratic data, with the AS-regularity
    certificate and the cube-root translation check."""
    return _run("transform quadric-to-plane", config)


def cremona(config):
    """Quadratic data + three non-collinear points -> quadratic data."""
    return _run("transform cremona", config)


def witness(config):
    """Function-field embedding witness search."""
    return _run("witness", config)


def sweep(config):
    """Seeded randomized certification sweep."""
    return _run("sweep", config)
