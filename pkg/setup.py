from setuptools import setup, find_packages

setup(
    name="excedance-logconcavity",
    version="0.1.0",
    packages=find_packages(exclude=["tests", "examples", "examples.*"]),
    install_requires=[
        "numpy",
        "pandas>=1.5",
        "sqlalchemy>=1.4",
        "sympy",
    ],
    extras_require={
        "test": ["pytest", "hypothesis"],
    },
    entry_points={
        "console_scripts": [
            "excstat=excstat.cli:main",
        ],
    },
)
