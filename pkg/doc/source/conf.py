# Sphinx configuration for the qhowe documentation.

import os
import sys

sys.path.insert(0, os.path.abspath('../..'))

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.doctest',
    'sphinx.ext.intersphinx',
    'sphinx.ext.mathjax',
    'sphinx.ext.viewcode',
]

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = u'qhowe'
copyright = u'2026, qhowe developers'
author = u'qhowe developers'
version = '0.1'
release = '0.1.0'
language = 'en'

exclude_patterns = []
pygments_style = 'sphinx'

# autodoc pulls docstrings straight from the modules, keep source order
autodoc_member_order = 'bysource'

html_theme = 'alabaster'
html_static_path = []
htmlhelp_basename = 'qhowedoc'

latex_documents = [
    (master_doc, 'qhowe.tex', u'qhowe Documentation', author, 'manual'),
]

man_pages = [(master_doc, 'qhowe', u'qhowe Documentation', [author], 1)]

intersphinx_mapping = {'python': ('https://docs.python.org/3', None)}
