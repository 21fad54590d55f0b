from setuptools import setup, find_packages
setup(
    name="congruence_lab",
    version="0.1.0",
    packages=find_packages(exclude=["tests"]),
    install_requires=["sympy>=1.12"],
    python_requires=">=3.10",
    entry_points={"console_scripts": ["congruence-lab = congruence_lab.cli_reporter:main"]},
)
