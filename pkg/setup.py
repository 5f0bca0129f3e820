from setuptools import setup, find_packages

setup(
    name="idealforge",
    version="0.1.0",
    packages=find_packages(exclude=["tests", "tests.*", "examples", "examples.*"]),
    install_requires=[
        "numpy>=1.26",
        "sympy>=1.13",
        "tabulate>=0.9",
        "toml>=0.10",
        "orjson>=3.9",
    ],
    include_package_data=True,
    description="Exact ideal algebra and mechanical verification for the K(n, d) ideal family.",
    python_requires=">=3.10",
    entry_points={
        "console_scripts": [
            "idealforge=idealforge.cli:main",
        ],
    },
)
