# -*- coding: utf-8 -*-
#
# cgnf documentation build configuration file.
#
# This file is execfile()d with the current directory set to its containing
# dir.

from twisted.python.filepath import FilePath

import sys
import os

on_rtd = os.environ.get('READTHEDOCS', None) == 'True'

# -- General configuration ----------------------------------------------------

extensions = ['sphinx.ext.intersphinx']

if not on_rtd:
    # readthedocs doesn't install dependencies
    extensions.append('sphinxcontrib.spelling')

templates_path = ['_templates']

source_suffix = '.rst'

master_doc = 'index'

project = u'cgnf'
copyright = u'cgnf developers'

# The short X.Y version and the full version come from the package.
sys.path.insert(0, FilePath(__file__).parent().parent().path)
from cgnf import __version__ as version  # noqa: E402
del sys.path[0]
release = version

language = 'en'

spelling_word_list_filename = 'spelling_wordlist.txt'

exclude_patterns = ['_build']

pygments_style = 'sphinx'

# -- Options for HTML output --------------------------------------------------

html_theme = 'sphinx_rtd_theme'

html_use_index = False

htmlhelp_basename = 'cgnfdoc'

# -- Options for manual page output -------------------------------------------

man_pages = [
    ('usage', 'cgnf', u'cgnf command line', [u'cgnf developers'], 1)
]

intersphinx_mapping = {'python': ('https://docs.python.org/3', None)}

linkcheck_anchors = False
