#!/usr/bin/env python
from setuptools import find_packages, setup


with open("README.md", "r", encoding='utf-8') as fh:
    long_description = fh.read()

setup(
    name="centralshadow",
    description="Lipschitz central shadowing for partially hyperbolic "
                "torus maps",
    long_description=long_description,
    long_description_content_type="text/markdown",
    version="0.1.0",
    license="MIT",
    packages=find_packages(exclude=["test", "test.*"]),
    tests_require=["pytest", "hypothesis"],
    include_package_data=True,
    install_requires=["numpy", "pandas"],
    entry_points={
        "console_scripts": [
            "centralshadow=centralshadow.experiment.cli:run",
        ],
    },
)
