"""Miscellaneous utility functions"""

from .general_utils import *
from .file_utils import *
from .plot_utils import *
from .table_utils import *
