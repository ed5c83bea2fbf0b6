from ._ermakov import *  # noqa
