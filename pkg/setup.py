import json
import os

import setuptools


loc = os.path.dirname(os.path.abspath(__file__))


def get_description():
    with open(loc + '/docs/README.rst') as readme:
        info = readme.read()
    with open(loc + '/docs/changelog.rst') as changelog:
        return info + '\n\n' + changelog.read()


def read_requirements(name):
    with open(loc + '/' + name) as f:
        lines = [line.split('#', 1)[0].strip() for line in f.read().splitlines()]
    return [line for line in lines if line and not line.startswith('-r')]


with open('dxpp/constants.json', 'r') as f:
    constants = json.load(f)

setuptools.setup(
    name="dxpp",
    version=constants['version'],
    packages=setuptools.find_packages(exclude=['tests', 'tests.*']),
    include_package_data=True,
    package_data={'dxpp': ['constants.json']},
    platforms='Any',
    zip_safe=False,
    author=constants['author'],
    author_email=constants['email'],
    description="Differentiable quadratic programs through a smoothed exact penalty.",
    long_description=get_description(),
    install_requires=read_requirements('requirements.txt'),
    extras_require={'cholmod': ['scikit-sparse']},
    python_requires='>=3.9',
    entry_points={'console_scripts': ['dxpp=dxpp.cli:dxpp']},
    classifiers=[
        'Intended Audience :: Science/Research',
        'Operating System :: OS Independent',
        'License :: OSI Approved :: MIT License',
        'Programming Language :: Python',
        'Programming Language :: Python :: 3',
        'Topic :: Scientific/Engineering :: Mathematics',
    ],
)
