import functools
import inspect
from typing import Callable, Dict

from entangledparity.core.errors import DimensionError


def cutoff_guard(minimum: int = 1):
    """Decorator that validates the `cutoff` argument of a constructor.

    Args:
        minimum: smallest admissible cutoff

    Returns: a decorator
    """

    def _decorator(func: Callable):
        signature = inspect.signature(func)
        if "cutoff" not in signature.parameters:
            raise TypeError(f"{func.__name__} has no `cutoff` argument.")

        @functools.wraps(func)
        def _guarded(*args, **kwargs):
            cutoff = signature.bind(*args, **kwargs).arguments["cutoff"]
            if isinstance(cutoff, bool) or int(cutoff) != cutoff or cutoff < minimum:
                raise DimensionError(
                    f"{func.__name__} needs an integer cutoff >= {minimum}, "
                    f"got {cutoff!r}."
                )
            return func(*args, **kwargs)

        return _guarded

    return _decorator


def function_register():
    """Create a registrar that records checks in definition order.

    Each registered function gets a `tolerance` attribute naming the
    tolerance it is judged against, and a `decorator` attribute pointing
    back at the registrar.
    """
    registry: Dict[str, Callable] = {}

    def registrar(tolerance: str, name: str = None):
        def _register(func):
            key = name or func.__name__.replace("check_", "", 1)
            if key in registry:
                raise ValueError(f"Check `{key}` is already registered.")
            func.tolerance = tolerance
            func.check_name = key
            func.decorator = registrar
            registry[key] = func
            return func

        return _register

    registrar.all = registry
    return registrar
