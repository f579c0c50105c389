from .version import __version__  # noqa


def setup(logger=None):
    """Return the package settings, loaded from the user's settings file."""

    try:
        import scipy  # noqa
    except ImportError:
        raise ImportError("scipy is required")

    from .utils import get_settings
    return get_settings(logger=logger)
