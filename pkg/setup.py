from setuptools import setup, find_packages

setup(
    name="kahlerbound",
    version="0.1.0",
    description="Sharp Sobolev/Beckner constants and diameter bounds for positively curved Kahler manifolds",
    packages=find_packages(exclude=["tests", "tests.*", "examples", "examples.*"]),
    install_requires=["numpy", "scipy", "sympy"],
    extras_require={"test": ["pytest", "hypothesis"]},
    entry_points={"console_scripts": ["kahlerbound=kahlerbound.cli:main"]},
    author="Generated",
    license="MIT",
)
