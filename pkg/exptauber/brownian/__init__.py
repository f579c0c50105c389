from .grid import *  # noqa
from .kernel import *  # noqa
from .rates import *  # noqa
from .paths import *  # noqa
