"""Backend selection for the chain-classification kernels.

Prefers the compiled extension, falling back to the pure-Python
implementation when it is unavailable.  Set ``DIAMONDFREE_PURE=1`` to
force the fallback (the benchmark and the backend-agreement tests use
this).  Both backends return exact integer counts.
"""

import os

from . import _kernels_py
from .errors import CapacityError

_MAX_N = 20  # membership tables are 2^n entries

if os.environ.get("DIAMONDFREE_PURE"):
    _speedups = None
else:
    try:
        from . import _speedups
    except ImportError:
        _speedups = None

BACKEND = "compiled" if _speedups is not None else "pure"


def get_backend():
    return BACKEND


def _check_n(n):
    if not 0 <= n <= _MAX_N:
        raise CapacityError(f"chain kernels support 0 <= n <= {_MAX_N}, got {n}")


def _tables(n, members):
    import numpy as np

    lookup = np.zeros(1 << n, dtype=np.int32)
    for i, m in enumerate(members):
        lookup[m] = i + 1
    return lookup


def chain_scan(n, members, maximal, minimal):
    """See ``_kernels_py.chain_scan``."""
    _check_n(n)
    if _speedups is None:
        return _kernels_py.chain_scan(n, members, maximal, minimal)
    import numpy as np

    members = list(members)
    smax = max((m.bit_count() for m in members), default=0)
    maxf = np.fromiter((1 if b else 0 for b in maximal), dtype=np.uint8,
                       count=len(members))
    minf = np.fromiter((1 if b else 0 for b in minimal), dtype=np.uint8,
                       count=len(members))
    if len(members) == 0:
        maxf = np.zeros(1, dtype=np.uint8)
        minf = np.zeros(1, dtype=np.uint8)
    return _speedups.chain_scan_table(n, smax, len(members),
                                      _tables(n, members), maxf, minf)


def count_chains(n, members, first_mask, second_mask, require_hit):
    """See ``_kernels_py.count_chains``."""
    _check_n(n)
    if _speedups is None:
        return _kernels_py.count_chains(n, members, first_mask, second_mask,
                                        require_hit)
    import numpy as np

    members = list(members)
    smax = max((m.bit_count() for m in members), default=0)
    member = np.zeros(1 << n, dtype=np.uint8)
    for m in members:
        member[m] = 1
    return _speedups.count_chains_table(n, smax, member, first_mask,
                                        second_mask, bool(require_hit))
