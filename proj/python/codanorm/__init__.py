"""Dialectal Arabic orthography normalization and evaluation toolkit."""

try:
    from ._codanorm import *  # noqa: F401,F403
    from ._codanorm import __doc__  # noqa: F401
except ImportError:  # in-tree test runs put the extension on sys.path directly
    from _codanorm import *  # noqa: F401,F403
