import logging
import threading
from collections import OrderedDict


class Singleton(type):
    _instances = {}
    _lock = threading.Lock()

    def __call__(cls, *args, **kwargs):
        with cls._lock:
            if cls not in cls._instances:
                cls._instances[cls] = super(Singleton, cls).__call__(*args, **kwargs)
        return cls._instances[cls]


class RegionBuffer(metaclass=Singleton):
    """Keeps the best-response decompositions of recently analysed games.

    Games are immutable, so the decomposition of a game is keyed by the
    game's fingerprint and may be shared between callers and threads.
    """
    capacity = 64

    def __init__(self) -> None:
        logging.debug("Init RegionBuffer!")
        super().__init__()
        self._buffer = OrderedDict()
        self._lock = threading.Lock()

    def put(self, key, regions):
        logging.debug(f"RegionBuffer: add regions for game {key[0]}!")
        with self._lock:
            self._buffer[key] = tuple(regions)
            self._buffer.move_to_end(key)
            while len(self._buffer) > self.capacity:
                self._buffer.popitem(last=False)

    def has(self, key):
        with self._lock:
            found = key in self._buffer
        logging.debug(f"RegionBuffer: regions for game {key[0]} in buffer: {found}!")
        return found

    def get(self, key):
        with self._lock:
            regions = self._buffer.get(key, None)
        if regions is None:
            logging.debug(f"RegionBuffer: did not find regions for game {key[0]}!")
            return None
        logging.debug(f"RegionBuffer: found regions for game {key[0]}!")
        return regions

    def clear(self, show_log=True):
        with self._lock:
            self._buffer.clear()
        if show_log:
            logging.debug("RegionBuffer cleared!")
