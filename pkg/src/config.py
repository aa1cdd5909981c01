#!/usr/bin/env python3
"""Tunable settings shared by the searches and the minimisers"""
import dataclasses


@dataclasses.dataclass(frozen=True)
class Settings(object):
    """Settings of an hdmin run

    :param search_budget: Largest candidate-space estimate an exhaustive
        search may explore
    :param verify_postconditions: Check the postconditions of the
        minimisers after construction
    :param sample_lassos: Random lassos used as a cheap filter
    :param seed: Seed of every internal random choice
    :param log_level: Level name of the command line logging when -v is not given
    """
    search_budget: int = 2_000_000
    verify_postconditions: bool = True
    sample_lassos: int = 64
    seed: int = 0
    log_level: str = 'WARNING'

    def replace(self, **changes) -> 'Settings':
        """Copy of these settings with some fields changed"""
        return dataclasses.replace(self, **changes)


DEFAULT_SETTINGS = Settings()
