from ._ginv import *  # noqa: F401,F403
from ._ginv import __doc__  # noqa: F401

ROUTES = ("DEF", "R1", "R2", "R3", "R4", "R5", "R6", "R7", "R8", "R9")
