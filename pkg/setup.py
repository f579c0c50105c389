#!/usr/bin/env python

from __future__ import print_function

import os
import subprocess
import warnings

from setuptools import setup, find_packages

entry_points = """
[console_scripts]
exptauber=exptauber.cli:_main
"""

with open('README.rst') as infile:
    LONG_DESCRIPTION = infile.read()


def get_git_devstr(path=None):
    """
    Number of commits in the git repository at ``path`` (default: the
    current directory), or an empty string outside a repository.
    """
    path = os.getcwd() if path is None else path
    if not os.path.exists(os.path.join(path, '.git')):
        return ''
    try:
        p = subprocess.Popen(['git', 'rev-list', '--count', 'HEAD'], cwd=path,
                             stdout=subprocess.PIPE, stderr=subprocess.PIPE)
        stdout, stderr = p.communicate()
    except OSError as e:
        warnings.warn('Error running git: ' + str(e))
        return ''
    if p.returncode != 0:
        warnings.warn('git failed while determining revision count: '
                      '{0}'.format(stderr.decode('utf-8', 'replace')))
        return ''
    return stdout.decode('utf-8', 'replace').strip()


# This sets __version__
with open('exptauber/version.py') as infile:
    exec(infile.read())

# VERSION should be PEP440 compatible (http://www.python.org/dev/peps/pep-0440)
VERSION = __version__  # noqa

# Indicates if this version is a release version
RELEASE = 'dev' not in VERSION

if not RELEASE:
    VERSION += get_git_devstr()

setup(name='exptauber',
      version=VERSION,
      description='Exponential Tauberian theorems: Laplace transforms, '
                  'small-ball rates and the squared-L2 norm of Brownian motion',
      long_description=LONG_DESCRIPTION,
      packages=find_packages(),
      package_data={},
      entry_points=entry_points,
      python_requires='>=3.7',
      install_requires=['numpy>=1.17',
                        'scipy>=1.4',
                        'astropy>=4.0',
                        'ginga>=3.0'],
      extras_require={'test': ['pytest']}
      )
