# coding: utf-8

import sys
from setuptools import setup, find_packages

NAME = "formal_path_integral"
VERSION = "1.0.0"

# To install the library, run the following
#
# python setup.py install
#
# prerequisite: setuptools
# http://pypi.python.org/pypi/setuptools

REQUIRES = [
    "numpy>=1.22",
    "scipy>=1.8",
    "marshmallow>=3.13",
    "jsonschema>=3.2",
    "coloredlogs>=15.0",
    "python-json-logger>=2.0",
]

setup(
    name=NAME,
    version=VERSION,
    description="Formal path integrals",
    url="",
    keywords=["path integral", "Feynman diagrams", "stationary phase", "semiclassical"],
    install_requires=REQUIRES,
    python_requires=">=3.9",
    packages=find_packages(),
    package_data={'formal_path_integral': ['schemas/*.json']},
    include_package_data=True,
    entry_points={
        'console_scripts': ['spi=formal_path_integral.__main__:main']},
    long_description="""\
    Loop expansion of the quantum propagator of a finite-dimensional mechanical system about a
    classical trajectory, written as polynomials in the divergent constant D0 = delta(0), with the
    checks that make the expansion trustworthy: stationary phase against quadrature, the
    composition law and invariance under volume-preserving changes of coordinates.
    """
)
