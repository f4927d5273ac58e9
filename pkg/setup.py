from setuptools import setup, find_packages

setup(
    name="fractal_helper",
    version="1.0.0",
    packages=find_packages(exclude=["tests"]),
    install_requires=[
        "python-dotenv",
        "tqdm",
        "numpy",
        "pandas",
        "scipy",
    ],
    entry_points={
        "console_scripts": ["fractal-helper=fractal_helper.cli:main"],
    },
    python_requires=">=3.8",
    description="Fractal geometry, coherent-state and dissipative-oscillator numerics with verification suites",
)
