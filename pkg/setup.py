"""
Setup script for the verification toolkit.
This is mainly for compatibility with older package managers.
Modern Python packaging should use pyproject.toml instead.
"""

from setuptools import find_packages, setup

setup(
    name="pleijel_verify",
    version="1.0.0",
    author="Pleijel Verify Team",
    description="Monte Carlo verification of Pleijel-type integral-geometric identities",
    long_description=open("README.md").read(),
    long_description_content_type="text/markdown",
    packages=find_packages(include=["geometry*", "measures*", "functionals*", "utils*", "cases*"]),
    py_modules=["cli"],
    python_requires=">=3.9",
    install_requires=[
        "numpy>=1.22.0",
        "scipy>=1.8.0",
        "python-dotenv>=1.0.0",
        "pydantic>=2.0.0",
    ],
    extras_require={
        "dev": [
            "pytest>=7.0.0",
            "pytest-asyncio>=0.20.0",
            "black>=22.1.0",
            "ruff>=0.0.65",
            "pyright>=1.1.300",
        ],
    },
    entry_points={"console_scripts": ["pleijel-verify=cli:main"]},
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
)
