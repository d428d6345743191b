"""Setup script for the usv_agent package."""
from setuptools import setup, find_packages

setup(
    name="usv_agent",
    version="0.1.0",
    description="Autonomy stack and 2.5-D marine simulator for small unmanned surface vessels",
    packages=find_packages(exclude=["examples", "examples.*", "*.tests", "*.tests.*"]),
    python_requires=">=3.10",
    install_requires=[
        "numpy>=1.26",
        "pandas>=2.1.4",
        "scikit-learn>=1.3",
        "scipy>=1.11",
        "shapely>=2.0",
        "gymnasium>=0.29",
        "matplotlib>=3.8",
        "pydantic>=2.5.2",
        "pydantic-settings>=2.1",
        "python-dotenv>=1.0.0",
        "python-json-logger==2.0.7",
        "rich==13.7.0",
    ],
    extras_require={
        "test": ["pytest==7.4.3"],
    },
    entry_points={
        "console_scripts": [
            "usv-agent=usv_agent.main:main",
        ],
    },
)
