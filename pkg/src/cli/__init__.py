#!/usr/bin/env python3
"""
CLI Module - Command-line front end and the runner behind it
"""

from .runner import EngineRunner, describe_map
from .commands import cli, run_command, CliState

__all__ = ['EngineRunner', 'describe_map', 'cli', 'run_command', 'CliState']
