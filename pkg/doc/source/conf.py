# -*- coding: utf-8 -*-
# Sphinx configuration of the bessel-zeros documentation.

import importlib.metadata

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.napoleon',
    'sphinx_click',
]

templates_path = []
source_suffix = '.rst'
master_doc = 'index'

project = 'bessel-zeros'
version = importlib.metadata.version(project)
release = version

exclude_patterns = []
pygments_style = 'sphinx'

html_theme = 'alabaster'
html_title = u'bessel-zeros'
html_static_path = []

latex_elements = {}
latex_documents = [
    ('index', 'bessel-zeros.tex', u'bessel-zeros Documentation',
     u'bessel-zeros developers', 'manual'),
]
