# Copyright cgnf developers.  See LICENSE file for details.

"""
Generate a cgnf package.
"""

from setuptools import setup, find_packages

from cgnf import __version__


with open("README.rst") as readme:
    description = readme.read()

setup(
    # This is the human-targetted name of the software being packaged.
    name="cgnf",
    # This is a string giving the version of the software being packaged.  For
    # simplicity it should be something boring like X.Y.Z.
    version=__version__,
    # This identifies the creators of this software.  This is left symbolic for
    # ease of maintenance.
    author="cgnf developers",

    # A short identifier for the license under which the project is released.
    license="Apache License, Version 2.0",

    # Some details about what cgnf is.  Synchronized with the README.rst to
    # keep it up to date more easily.
    long_description=description,

    packages=find_packages(),

    package_data={
        'cgnf.synth': ['fixtures/*.yml'],
    },

    entry_points={
        # Command-line programs we want setuptools to install:
        'console_scripts': [
            'cgnf = cgnf.cli.script:cgnf_main',
        ],
    },

    install_requires=[
        "setuptools >= 1.4",

        "eliot >= 0.4.0",
        "zope.interface >= 4.0.5",
        "characteristic >= 14.1.0",
        "Twisted >= 14.0.0",

        "PyYAML >= 3.10",

        "numpy >= 1.17",
        "networkx >= 2.0",
        "pandas >= 0.25",
        ],

    extras_require={
        # This extra allows you to build and check the documentation for
        # cgnf.
        "doc": [
            "Sphinx",
            "sphinx-rtd-theme",
            "pyenchant",
            "sphinxcontrib-spelling",
            ],
        # This extra is for developers who need to work on cgnf itself.
        "dev": [
            # flake8 is pretty critical to have around to help point out
            # obvious mistakes. It depends on PEP8, pyflakes and mccabe.
            "flake8",

            # Run the test suite:
            "tox",
            ],
        },

    # Some "trove classifiers" which are relevant.
    classifiers=[
        "License :: OSI Approved :: Apache Software License",
        "Programming Language :: Python :: 3",
        "Topic :: Scientific/Engineering :: Artificial Intelligence",
        ],
    )
