from __future__ import absolute_import, division, print_function

import json
import os
import sys

import numpy as np
from astropy.table import Table
from ginga.misc import log
from ginga.misc.Settings import SettingGroup

from .exceptions import DomainError

__all__ = ['get_logger', 'null_logger', 'settings_home', 'get_settings',
           'parse_float_list', 'dumps', 'write_table']

SETTINGS_NAME = 'exptauber'

# built-in defaults; the settings file and CLI flags override these
DEFAULTS = dict(seed=0,
                threads=1,
                batch_size=2000,
                window_fraction=0.5,
                quad_abs_tol=1e-300,
                quad_rel_tol=1e-10,
                quad_max_depth=50,
                quad_initial_panels=4,
                truncation_log_tol=-40.0,
                lattice_n_max=400,
                min_hits=30)


def null_logger():
    return log.get_logger(name=SETTINGS_NAME, level=20,
                          null=True, log_stderr=False)


def get_logger(options=None, logger=None):
    """Return ``logger`` if given, else a logger built from parsed options.

    :param options: namespace produced by a parser that went through
        ``ginga.misc.log.addlogopts``, or None for a null logger
    :param logger: an existing logger, returned unchanged
    """
    if logger is not None:
        return logger
    if options is None:
        return null_logger()
    return log.get_logger(SETTINGS_NAME, options=options)


def settings_home():
    home = os.environ.get('EXPTAUBER_HOME', None)
    if home is None:
        home = os.path.join(os.path.expanduser('~'), '.' + SETTINGS_NAME)
    return home


def get_settings(logger=None, preffile=None):
    """Load the package settings.

    Missing or unreadable files are ignored and the built-in defaults
    are used.
    """
    logger = get_logger(logger=logger)
    if preffile is None:
        preffile = os.path.join(settings_home(), SETTINGS_NAME + '.cfg')
    settings = SettingGroup(name=SETTINGS_NAME, logger=logger,
                            preffile=preffile)
    settings.set_defaults(**DEFAULTS)
    settings.load(onError='silent')
    return settings


def parse_float_list(text):
    """Parse ``'0.5,1'`` into ``[0.5, 1.0]``."""
    if text is None or text.strip() == '':
        return []
    try:
        return [float(item) for item in text.split(',')]
    except ValueError:
        raise DomainError("cannot parse %r as comma-separated numbers" % (
            text,))


def _plain(obj):
    if isinstance(obj, dict):
        return dict((str(k), _plain(v)) for k, v in obj.items())
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_plain(v) for v in obj.tolist()]
    if isinstance(obj, (np.floating, float)):
        return float(obj)
    if isinstance(obj, (np.integer, int)) and not isinstance(obj, bool):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def dumps(obj):
    """Serialize a record to JSON.

    Floats use Python's shortest round-trip repr, which never needs more
    than 17 significant digits.
    """
    return json.dumps(_plain(obj), sort_keys=True, allow_nan=True)


def write_table(columns, names, stream=None, fmt='csv'):
    """Write columns as CSV (through an astropy table) or as JSON rows."""
    stream = sys.stdout if stream is None else stream
    if fmt == 'json':
        rows = [dict(zip(names, row)) for row in zip(*columns)]
        stream.write(dumps(rows) + '\n')
        return

    tab = Table(list(columns), names=list(names))
    for name in names:
        if tab[name].dtype.kind == 'f':
            tab[name].format = '.17g'
    tab.write(stream, format='ascii.csv')
