#!/usr/bin/env python3
"""Exceptions raised by hdmin"""


class Error(Exception):
    """Exception base class"""
    def __init__(self, message: str) -> None:
        super().__init__(message)
        self.__message = message

    @property
    def message(self) -> str:
        """Error message"""
        return self.__message


class ContractError(Error):
    """Raised when a precondition of an operation does not hold.

    For example dualising a nondeterministic automaton, mixing acceptance
    families, or passing a non canonical automaton to a construction that
    needs one.
    """
    pass


class InputError(Error):
    """Raised when user data is not part of the model, such as a letter
    missing from the alphabet or a lasso with an empty cycle.
    """
    def __init__(self, message: str, value: object = None) -> None:
        super().__init__(message)
        self.__value = value

    @property
    def value(self) -> object:
        """The offending value"""
        return self.__value


class ParseError(Error):
    """Raised by the readers when a text is not well formed."""
    def __init__(self, message: str, line_number: int) -> None:
        super().__init__(f'line {line_number}: {message}')
        self.__line_number = line_number

    @property
    def line_number(self) -> int:
        """Line (1-based) where the error was found"""
        return self.__line_number


class UnsupportedFeatureError(Error):
    """Raised when a HOA file uses a feature outside the supported subset.
    """
    def __init__(self, message: str, feature: str) -> None:
        super().__init__(message)
        self.__feature = feature

    @property
    def feature(self) -> str:
        """Name of the unsupported feature"""
        return self.__feature


class BudgetExceededError(Error):
    """Raised when an exhaustive search would exceed the configured budget.
    """
    def __init__(self, message: str, estimate: int, budget: int) -> None:
        super().__init__(message)
        self.__estimate = estimate
        self.__budget = budget

    @property
    def estimate(self) -> int:
        """Estimated size of the search space"""
        return self.__estimate

    @property
    def budget(self) -> int:
        """The configured budget"""
        return self.__budget


class PostconditionError(Error):
    """Raised when a machine-checked postcondition of a construction fails.
    """
    def __init__(self, message: str, failed_checks: list) -> None:
        super().__init__(message)
        self.__failed_checks = list(failed_checks)

    @property
    def failed_checks(self) -> list:
        """Names of the checks that failed"""
        return list(self.__failed_checks)
