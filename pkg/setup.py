#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
    Setup file for stripid.

    The layout follows PyScaffold 2.5; metadata that does not change between
    releases lives in setup.cfg.
"""

import re
import sys
from setuptools import setup, find_packages

with open('README.rst', 'r') as file:
    README_TEXT = file.read()

# Read the version without importing the package and its dependencies
with open('stripid/__init__.py', 'r') as file:
    VERSION = re.search(r"__version__ = '([^']+)'", file.read()).group(1)

with open('requirements.txt', 'r') as file:
    REQUIREMENTS = [line.strip() for line in file
                    if line.strip() and not line.startswith('#')]


def setup_package():
    needs_sphinx = {'build_sphinx', 'upload_docs'}.intersection(sys.argv)
    sphinx = ['sphinx'] if needs_sphinx else []
    setup(setup_requires=sphinx,
          name = 'stripid',
          description="Medicine strip identification from 2-D cepstral and color-gradient features.",
          long_description = README_TEXT,
          version=VERSION,
          packages=find_packages(exclude=['tests', 'tests.*']),
          install_requires=REQUIREMENTS,
          python_requires='>=3.8',
          entry_points={'console_scripts': ['stripid = stripid.cli:run']})


if __name__ == "__main__":
    setup_package()
