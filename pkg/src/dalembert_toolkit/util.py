"""General utility functions."""
import io
import os
import tempfile
from contextlib import contextmanager
from functools import lru_cache
from typing import Dict, Iterable, Tuple, Union

import numpy as np

# Nodes per Gauss-Legendre panel
PANEL_NODES = 16


def open_or_pass(
    file: Union[str, os.PathLike, io.IOBase], *args, **kwargs
):  # pragma: no cover
    """Open a file if `file` is a path.

    If `file` is an instance subclassing `io.IOBase` the function
    returns the `file` unchanged.

    Parameters
    ----------
    file
        File or path to the file to be opened.
    args
        Positional arguments passed to open() if used.
    kwargs
        Keyword arguments passed to open() if used.
    Returns
    -------
    io.IOBase
        The open file.
    """
    if isinstance(file, io.IOBase):
        return file
    return open(file, *args, **kwargs)


@contextmanager
def atomic_write(path: Union[str, os.PathLike], mode: str = "w", **kwargs):
    """Open a temporary file that replaces `path` once closed.

    The temporary file lives in the directory of `path`, so the final
    `os.replace` is atomic. If the block raises, `path` is untouched.

    Examples
    --------
    >>> with atomic_write("report.json") as file:
    ...     file.write("{}")
    """
    path = os.fspath(path)
    directory = os.path.dirname(os.path.abspath(path))
    fd, temporary = tempfile.mkstemp(dir=directory, prefix=".tmp-")
    try:
        with os.fdopen(fd, mode, **kwargs) as file:
            yield file
        os.replace(temporary, path)
    except BaseException:
        if os.path.exists(temporary):
            os.remove(temporary)
        raise


def parse_key_value(items: Iterable[str], cast=float) -> Dict[str, float]:
    """Parse ``key=value`` strings into a dictionary.

    Parameters
    ----------
    items
        Strings of the form ``key=value``.
    cast
        Callable applied to each value.

    Raises
    ------
    ValueError
        If an item has no ``=`` or the value can't be cast.

    Examples
    --------
    >>> parse_key_value(["residual=1e-8", "projection=1e-12"])
    {"residual": 1e-08, "projection": 1e-12}
    """
    result = {}
    for item in items:
        key, sep, value = item.partition("=")
        key = key.strip()
        if not sep or not key:
            raise ValueError(f"Expected key=value, got '{item}'.")
        try:
            result[key] = cast(value.strip())
        except (TypeError, ValueError):
            raise ValueError(f"Invalid value for '{key}': '{value}'.") from None
    return result


@lru_cache(maxsize=None)
def _legendre(count: int) -> Tuple[np.ndarray, np.ndarray]:
    return np.polynomial.legendre.leggauss(count)


def gauss_legendre_panels(
    a: float, b: float, points: int, panel_nodes: int = PANEL_NODES
) -> Tuple[np.ndarray, np.ndarray]:
    """Nodes and weights of a composite Gauss-Legendre rule on [a, b].

    The interval is split into equal panels of `panel_nodes` nodes each;
    the number of panels is ``ceil(points / panel_nodes)``, so at least
    `points` nodes are returned.

    Returns
    -------
    tuple of numpy.ndarray
        Nodes and weights; ``weights @ f(nodes)`` approximates the
        integral of f.
    """
    if points < 1:
        raise ValueError("At least one quadrature point is needed.")
    panels = -(-points // panel_nodes)
    reference_nodes, reference_weights = _legendre(panel_nodes)
    edges = np.linspace(a, b, panels + 1)
    half = (edges[1:] - edges[:-1]) / 2
    middle = (edges[1:] + edges[:-1]) / 2
    nodes = (middle[:, None] + half[:, None] * reference_nodes[None, :]).ravel()
    weights = (half[:, None] * reference_weights[None, :]).ravel()
    return nodes, weights
