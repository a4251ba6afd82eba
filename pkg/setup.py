"""Build script.

The package is pure Python.  When Cython is available we additionally compile
src/kcdag/_engine.py into an extension module kcdag._engine_accel built from a
*copy* of the source placed outside the package tree, so a failed or skipped
build can never shadow the interpreted module.  kcdag.engine picks the backend
at import time.
"""

import os
import shutil
from pathlib import Path

from setuptools import setup

ext_modules = []
if os.environ.get("KCDAG_SKIP_ACCEL") != "1":
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        build_dir = Path("build") / "_accel_src"
        build_dir.mkdir(parents=True, exist_ok=True)
        dst = build_dir / "_engine_accel.py"
        shutil.copyfile(Path("src") / "kcdag" / "_engine.py", dst)
        ext_modules = cythonize(
            [Extension("kcdag._engine_accel", [str(dst)])],
            # annotation_typing off: the engine's int annotations mean Python
            # bigints (model counts overflow C longs), not C ints.
            compiler_directives={"language_level": "3", "annotation_typing": False},
            quiet=True,
        )
    except Exception:
        ext_modules = []

setup(ext_modules=ext_modules)
