"""
Some const definitions.

This file is part of mlp.
"""

author = "The mlp developers"
license = """Distributed under the BSD license. See the project page for
details."""
version = '0.1'
progurl = 'https://github.com/mlp-project/mlp/'

# Marker left in prose where a <math> block was cut out.
MATH_PLACEHOLDER = u'⟨MATH:%d⟩'
MATH_PLACEHOLDER_RE = u'⟨MATH:(\\d+)⟩'
