import logging
import os

import dill

logger = logging.getLogger(__name__)


class StorageMixin:
    """Mixin class for serialization."""

    def __init__(self, *args, **kwargs):
        super(StorageMixin, self).__init__(*args, **kwargs)

    def save(self, path: str) -> None:
        """Save the object, creating parent directories as needed."""
        directory = os.path.dirname(path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        with open(path, "wb") as f:
            dill.dump(self, f)
        logger.debug("Saved %s to %s.", type(self).__name__, path)

    @classmethod
    def load(cls, path: str) -> object:
        """Load the object from the path."""
        with open(path, "rb") as f:
            obj = dill.load(f)
        if not isinstance(obj, cls):
            raise TypeError(
                f"{path} holds a {type(obj).__name__}, expected {cls.__name__}."
            )
        return obj
