# setup.py
from setuptools import setup, find_packages

setup(
    name="kvpoisson",
    version="0.1.0",
    packages=find_packages(exclude=["tests", "tests.*", "examples", "examples.*"]),
    python_requires=">=3.9",
    install_requires=[
        "numpy",
        "sympy",
        "tqdm",
    ],
    extras_require={
        "test": ["pytest", "hypothesis"],
        "all": ["pytest", "hypothesis"]
    },
    entry_points={
        "console_scripts": [
            "kvpoisson=kvpoisson.cli:main",
        ],
    },
)
