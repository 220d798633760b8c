from setuptools import setup, find_packages

setup(
    name="chainring",
    packages=find_packages(exclude=["tests", "tests.*", "examples", "examples.*"]),
    install_requires=[
        "numpy",
        "pandas",
        "tqdm",
        "tabulate",
        "safetensors",
        "sympy",
    ],
    entry_points={
        "console_scripts": ["chainring=chainring.cli:cli"],
    },
)
