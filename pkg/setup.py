# Builds the optional compiled kernels. The package works without them
# (pure-Python fallback selected at import); install with
#   pip install -e . --no-build-isolation
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

ext_modules = []
if cythonize is not None:
    ext_modules = cythonize(
        [Extension("ncroots._ckernels", ["src/ncroots/_ckernels.pyx"])],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
