#!/usr/bin/env python
# -*- coding: utf-8 -*-
#
# Copyright 2026 WPCN-lib contributors
# SPDX-License-Identifier: Apache-2.0
#

"""The setup script."""

from setuptools import find_namespace_packages, setup

with open("README.md", encoding="utf8") as readme_file:
    readme = readme_file.read()

# Installed by pip install wpcn-lib
# or pip install -e .
install_requirements = [
    "numpy>=1.22",
    "scipy",
    "coloredlogs",
    "PyYAML==6.0.1",
    "tqdm",
    "enforce-typing==1.0.0.post1",
]
# Required to run setup.py:
setup_requirements = ["pytest-runner"]

test_requirements = [
    "coverage",
    "mccabe",
    "pylint",
    "pytest",
    "pytest-env",
    "pytest-sugar",
]

# Possibly required by developers of wpcn-lib:
dev_requirements = [
    "bumpversion",
    "pkginfo",
    "twine",
    "isort==5.12.0",
    "flake8==6.0.0",
    "black",
    "pre-commit",
    "licenseheaders==0.8.8",
]

packages = find_namespace_packages(include=["wpcn_lib*"], exclude=["*test*"])

setup(
    author="WPCN-lib contributors",
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: Apache Software License",
        "Natural Language :: English",
        "Programming Language :: Python :: 3.8",
        "Topic :: Scientific/Engineering",
    ],
    description="Energy-efficient control and simulation of wirelessly-powered multi-hop networks.",
    entry_points={"console_scripts": ["wpcn-sim=wpcn_lib.cli.main:main"]},
    extras_require={
        "test": test_requirements,
        "dev": dev_requirements + test_requirements,
    },
    install_requires=install_requirements,
    license="Apache Software License 2.0",
    long_description=readme,
    long_description_content_type="text/markdown",
    include_package_data=True,
    keywords="wpcn wireless-power lyapunov beamforming simulation",
    name="wpcn-lib",
    packages=packages,
    python_requires=">=3.8",
    setup_requires=setup_requirements,
    test_suite="tests",
    tests_require=test_requirements,
    # fmt: off
    # bumpversion.sh needs single-quotes
    version='0.3.1',
    # fmt: on
    zip_safe=False,
)
