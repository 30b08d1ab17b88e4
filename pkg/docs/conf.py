# -*- coding: utf-8 -*-
#
# Configuration file for the Sphinx documentation builder.
#
# This file does only contain a selection of the most common options. For a
# full list see the documentation:
# http://www.sphinx-doc.org/en/stable/config
import datetime

# -- Path setup --------------------------------------------------------------

import os
import sys
import json

sys.path.insert(0, os.path.abspath('..'))

with open('../dxpp/constants.json', 'r') as f:
    constants = json.load(f)

# -- Project information -----------------------------------------------------

project = 'dxpp'
author = constants['author']
version = constants['version']

release = version
copyright = '{}, {}. Version {}'.format(datetime.datetime.utcnow().year, author, version)

# -- General configuration ---------------------------------------------------

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.doctest',
    'sphinx.ext.coverage',
    'sphinx.ext.mathjax',
    'sphinx.ext.viewcode',
]

source_suffix = '.rst'
master_doc = 'index'
language = 'en'
exclude_patterns = ['_build', 'README.md']

# -- Options for HTML output -------------------------------------------------

html_theme = 'alabaster'
html_sidebars = {'**': ['globaltoc.html', 'searchbox.html', 'sourcelink.html']}
htmlhelp_basename = 'dxppdoc'

# -- Options for manual page output ------------------------------------------

man_pages = [(master_doc, 'dxpp', 'dxpp Documentation', [author], 1)]
