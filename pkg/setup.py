#!/usr/bin/env python
"""
mlp -- setup script
"""

from setuptools import setup, find_packages

version = "0.1"

setup(
    name = 'mlp',
    description = 'Discover the definitions of the identifiers in wiki articles',
    author = 'The mlp developers',
    url = 'https://github.com/mlp-project/mlp/',
    license = 'BSD',
    packages = find_packages(exclude=['tests']),
    package_data = {'mlplib': ['data/*']},
    install_requires = [
        'reportlab>=3.0',
        'mwparserfromhell>=0.6',
        'lxml>=4.0',
        'nltk>=3.5',
        'tqdm>=4.0',
    ],
    extras_require = {'test': ['pytest']},
    entry_points = {'console_scripts': [
        'mlp = mlplib.script:script', ]},
    classifiers = [],
    python_requires = '>=3.7',
    zip_safe = False,
    version = version,
)
