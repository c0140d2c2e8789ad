# -*- coding: utf-8 -*-

"""
Dynamical Green functions, balanced measures, weighted potentials and
homogeneous resultants of rational maps, with numerical checks of the
identities relating them.
"""


from ._version import __version__

__short_description__ = "Potential theory of rational maps: Green functions, balanced measures, resultants and identity checks."
__license__ = "MIT"
__author__ = "Sanhe Hu"
__author_email__ = "husanhe@gmail.com"
__github_username__ = "MacHu-GWU"
