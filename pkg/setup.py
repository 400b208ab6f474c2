from setuptools import Extension, setup
from Cython.Build import cythonize

setup(
    ext_modules=cythonize(
        [
            Extension(
                "pursuitsim._fastloop",
                ["src/pursuitsim/_fastloop.pyx"],
                # The parity tests hold this kernel to bit-equal
                # trajectories against the pure-Python reference, so the
                # compiler must not fuse multiply-adds (-ffp-contract) or
                # pair sin/cos into glibc sincos (-fbuiltin-sincos), both of
                # which round differently in the last ulp.
                extra_compile_args=["-O3", "-ffp-contract=off", "-fno-builtin-sin", "-fno-builtin-cos", "-fno-builtin-sincos"],
            )
        ],
        language_level=3,
    )
)
