#!/usr/bin/env python
import os
import sys

# require python 3.8 or newer
if sys.version_info < (3, 8):
    print("Error: sqfree does not support this version of Python.")
    print("Please upgrade to Python 3.8 or higher.")
    sys.exit(1)


# require version of setuptools that supports find_namespace_packages
from setuptools import setup

try:
    from setuptools import find_namespace_packages
except ImportError:
    # the user has a downlevel version of setuptools.
    print("Error: sqfree requires setuptools v40.1.0 or higher.")
    print(
        'Please upgrade setuptools with "pip install --upgrade setuptools" '
        "and try again"
    )
    sys.exit(1)


# pull long description from README
this_directory = os.path.abspath(os.path.dirname(__file__))
with open(os.path.join(this_directory, "README.md")) as f:
    long_description = f.read()


def _get_version():
    path = os.path.join(this_directory, "sqfree", "__version__.py")
    namespace = {}
    with open(path) as f:
        exec(f.read(), namespace)
    return namespace["version"]


package_name = "sqfree"
package_version = _get_version()
description = """Exact toolkit for square-free monomial ideals, simplicial forests and their duals"""

setup(
    name=package_name,
    version=package_version,
    description=description,
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=find_namespace_packages(include=["sqfree", "sqfree.*"]),
    include_package_data=True,
    install_requires=[
        "agate>=1.6,<1.7",
        "Logbook>=1.5,<1.6",
        "mashumaro>=2.9,<3.0",
        "networkx>=2.3,<3",
        "sympy>=1.9",
    ],
    entry_points={
        "console_scripts": ["sqfree = sqfree.cli:main"],
    },
    zip_safe=False,
    classifiers=[
        "Development Status :: 4 - Beta",
        "License :: OSI Approved :: Apache Software License",
        "Operating System :: Microsoft :: Windows",
        "Operating System :: MacOS :: MacOS X",
        "Operating System :: POSIX :: Linux",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    python_requires=">=3.8",
)
