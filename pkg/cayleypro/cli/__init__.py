"""Command-line front end"""

from .cli import RunConfig, build_parser, run, main
