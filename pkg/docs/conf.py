# -*- coding: utf-8 -*-
# pylint: skip-file
#
# Sphinx configuration for the ricci-rot documentation.

import os
import sys

from importlib_metadata import metadata

# Insert the source tree into the system path
sys.path.insert(0, os.path.abspath("../src"))

# Configure attributes based on metadata
_METADATA = metadata("ricci-rot")
PROJECT = _METADATA["Name"]
SUMMARY = _METADATA["Summary"]
AUTHOR = _METADATA["Author"]
VERSION = _METADATA["Version"]

# Dump metadata so it's obvious in the build log
print("Project....: %s" % PROJECT)
print("Summary....: %s" % SUMMARY)
print("Author.....: %s" % AUTHOR)
print("Version....: %s" % VERSION)

extensions = [
    "sphinx.ext.intersphinx",
    "sphinx.ext.mathjax",
    "sphinx.ext.napoleon",
    "autoapi.extension",
]

# Napoleon settings for docstrings, which are Google style throughout
napoleon_google_docstring = True
napoleon_numpy_docstring = False
napoleon_include_init_with_doc = True
napoleon_use_param = True
napoleon_use_rtype = True
autodoc_member_order = "bysource"

# Auto-api settings
autoapi_type = "python"
autoapi_dirs = ["../src"]
autoapi_add_toctree_entry = True
autoapi_options = ["members", "undoc-members", "show-inheritance"]

source_suffix = ".rst"
master_doc = "index"
exclude_patterns = ["_build"]

project = PROJECT
copyright = "(c) %s" % AUTHOR
author = AUTHOR
version = VERSION
release = VERSION
language = "en"

add_function_parentheses = False
add_module_names = True
pygments_style = "sphinx"

html_theme = "alabaster"
html_theme_options = {"show_powered_by": False, "show_related": False}
html_show_sourcelink = False
html_show_sphinx = False
htmlhelp_basename = PROJECT

man_pages = [(master_doc, PROJECT, "%s Documentation" % PROJECT, [author], 1)]

intersphinx_mapping = {
    "python": ("https://docs.python.org/3/", None),
    "numpy": ("https://numpy.org/doc/stable/", None),
    "scipy": ("https://docs.scipy.org/doc/scipy/", None),
}
