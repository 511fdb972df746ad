"""Kernel backend selection.

The compiled ``_ckernels`` extension is used when it was built; otherwise
the pure-Python ``_pykernels`` module.  Setting ``YK_PURE_PYTHON=1`` forces
the fallback (used by the benchmark and the backend-parity tests).
"""

import os

from . import _pykernels as py

if os.environ.get("YK_PURE_PYTHON", "") not in ("", "0"):
    impl = py
else:
    try:
        from . import _ckernels as impl
    except ImportError:  # extension not built
        impl = py

BACKEND = impl.BACKEND

FIELD = py.FIELD
MASK = py.MASK
pack = py.pack
unpack = py.unpack
divides = impl.divides
padd = impl.padd
psub = impl.psub
paddmul = impl.paddmul
pscale = impl.pscale
pdivint = impl.pdivint
pmul = impl.pmul
ppow = impl.ppow
pdivexact = impl.pdivexact
pcontent = impl.pcontent
peval_mod = impl.peval_mod
ptotal_degree = impl.ptotal_degree
