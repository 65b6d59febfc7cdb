# Configuration file for the Sphinx documentation builder.
#
# https://www.sphinx-doc.org/en/master/usage/configuration.html

# -- Path setup --------------------------------------------------------------

import os
import sys

sys.path.insert(0, os.path.abspath("../.."))


# -- Project information -----------------------------------------------------

project = "innercalc"
copyright = "2026, innercalc developers"
author = "innercalc developers"

release = "v0.1.0"


# -- General configuration ---------------------------------------------------

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.napoleon",
    "sphinx.ext.mathjax",
    "sphinx_autodoc_typehints",
    "sphinx.ext.autosummary",
    "sphinx.ext.todo",
]

# Autodoc Settings
autodoc_class_signature = "mixed"
autodoc_member_order = "bysource"

# Autodoc Typehint Settings
autodoc_typehints_format = "short"
typehints_defaults = "braces"
typehints_fully_qualified = False

# Autosummary settings
autosummary_generate = True

# Napoleon Settings
napoleon_preprocess_types = True

templates_path = ["../_templates"]

exclude_patterns = ["_build", "Thumbs.db", ".DS_Store"]


# -- Options for HTML output -------------------------------------------------

html_theme = "pydata_sphinx_theme"

pygments_style = "monokai"


def setup(app):
    from pygments.lexers.python import PythonConsoleLexer

    app.add_lexer("pycon", PythonConsoleLexer)
