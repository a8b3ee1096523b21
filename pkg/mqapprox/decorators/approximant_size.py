"""Function decorators for functions that build an approximant."""

import functools
import inspect
import logging
from typing import Any, Callable, cast

from sigfig import round as sround

from mqapprox.approximation.approximant import Approximant
from mqapprox.constants import ApproximantBuilder

__all__ = ["log_approximant_size"]


def _builder_name(builder: ApproximantBuilder, *args, **kwargs) -> str:
    """Name the builder in log messages by its ``__name__``, ignoring the call arguments."""
    del args, kwargs
    return builder.__name__


def _calling_module(depth: int) -> str:
    """Return the ``__name__`` of the module whose frame sits ``depth`` levels above this one.

    With depth 2, called from the wrapper, that is the module that called the approximant builder, so
    ``recover_expansion_polynomial`` logs under ``mqapprox.demo`` when the demo calls it. A shorter stack yields
    the outermost frame's module.
    """
    frame = inspect.currentframe()
    name = "<unknown>"
    try:
        for _ in range(depth + 1):
            if frame is None:
                break
            name = frame.f_globals.get("__name__", "<unknown>")
            frame = frame.f_back
    finally:
        del frame
    return name


def log_approximant_size(
    func: ApproximantBuilder | None = None,
    *,
    logger: logging.Logger | None = None,
    level: int = logging.INFO,
    stacklevel: int = 2,
    allow_empty_output: bool = True,
    describe_func: Callable[..., str] = _builder_name,
) -> Any:
    """Log the number of terms, largest center and working precision of the approximant returned by func.

    This decorator can be used with or without arguments:

        .. code-block:: python

            @log_approximant_size
            def build(...) -> Approximant: ...

            @log_approximant_size(level=logging.DEBUG)
            def build(...) -> Approximant: ...

    Args:
        func: The function to decorate (when used without parentheses).
        logger: The logger to use. If None, the logger for the module calling the decorated function is used.
        level: The logging level to use, defaulting to INFO. This sets the level of the decorator's messages, not
            the level of the logger.
        stacklevel: Passed into the logger.log call:
            1: The log message shows the line number of the logging call inside the decorator itself.
            2 (default): the log message shows the line number of the call to the decorated function.
        allow_empty_output: If False, raise an exception if the returned approximant has no terms.
        describe_func: A function that takes the decorated function and its arguments and returns a string description
            of the function. The default implementation returns the function's name.

    Raises:
        RuntimeError: If the approximant has no terms and allow_empty_output is False.
    """

    def create_decorator(func: ApproximantBuilder) -> ApproximantBuilder:
        @functools.wraps(func)
        def wrapper(*args, **kwargs) -> Approximant:
            _logger = logger or logging.getLogger(_calling_module(stacklevel))

            appr = func(*args, **kwargs)
            func_name = describe_func(func, *args, **kwargs)
            if not appr.terms:
                if not allow_empty_output:
                    raise RuntimeError(f"{func_name} produced an empty approximant but allow_empty_output is False.")
                if _logger.isEnabledFor(level):
                    _logger.log(level, f"{func_name} returned an empty approximant.", stacklevel=stacklevel)
                return appr

            if not _logger.isEnabledFor(level):
                return appr
            center = appr.largest_center
            largest = float(sround(float(center), sigfigs=3, warning=False))
            _logger.log(
                level,
                f"{func_name} returned {len(appr.terms)} terms, largest center {largest:g}, {appr.precision} bits.",
                stacklevel=stacklevel,
            )
            return appr

        return cast(ApproximantBuilder, wrapper)

    # Check if called directly with a function
    if func is not None:
        return create_decorator(func)

    # Otherwise, return a decorator
    return create_decorator
