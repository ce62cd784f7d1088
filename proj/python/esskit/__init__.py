"""Generalized effective-sample-size metrics and diversity indices."""

from ._esskit import *  # noqa: F401,F403
from ._esskit import __version__  # noqa: F401
