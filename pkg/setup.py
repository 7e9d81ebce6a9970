"""
ModSampling 安装配置
"""
from setuptools import setup, find_packages

setup(
    name="modulo_sampling_py",
    version="0.1.0",
    packages=find_packages(exclude=["tests", "tests.*"]),
    install_requires=[
        'numpy>=1.21',
        'mpmath>=1.2',
        'pyyaml>=5.4',
        'jsonschema>=4.0',
    ],
    entry_points={
        'console_scripts': [
            'modsampling=modulo_sampling_py.harness.cli:main',
        ],
    },
    python_requires='>=3.8',
)
