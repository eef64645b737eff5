"""CayleyPro package"""

from .src import *  # pylint: disable=wildcard-import

__version__ = "1.0.0"
