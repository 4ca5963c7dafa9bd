import os
import logging
import json
from enum import Enum, auto

from .buffers import Singleton


class Configuration(Enum):
    Default = auto()
    Local = auto()
    Automatic = auto()


class Config(metaclass=Singleton):
    """Package configuration.

    The default configuration ships with the package (``utils/default_config.json``),
    a local ``config.json`` in the current working directory overrides single keys.
    """
    log_level_name = "log_level"
    threads_name = "threads"
    decimal_digits_name = "decimal_digits"
    vertex_subset_limit_name = "vertex_subset_limit"
    support_pair_limit_name = "support_pair_limit"
    threads_env = "SIMGAME_THREADS"

    def __init__(self) -> None:
        super().__init__()
        logging.debug("Init Config!")
        self._default_config = {}
        self._local_config = {}
        self._read_default_config()
        self._read_local_config()

    def _read_default_config(self):
        logging.debug("Config: default configurations")
        here = os.path.dirname(__file__)
        config_file_name = os.path.join(here, "default_config.json")
        if not os.path.exists(config_file_name):
            logging.warning(f"simgame.Config: no default configuration found! {config_file_name}")
            return

        with open(config_file_name) as config_file:
            infodict = json.load(config_file)
        self._default_config = infodict

    def _read_local_config(self):
        logging.debug("Config: Read local configurations!")
        local = os.getcwd()
        config_file_name = os.path.join(local, "config.json")
        if os.path.exists(config_file_name):
            with open(config_file_name) as config_file:
                local_config = json.load(config_file)
            self._local_config = local_config
        else:
            logging.info(f"simgame.Config: no local configuration found! {config_file_name}")

    def _lookup(self, key, config_type=Configuration.Automatic):
        value = None
        if config_type == Configuration.Local or config_type == Configuration.Automatic:
            value = self._local_config.get(key, None)
        if value is None and (config_type == Configuration.Automatic or config_type == Configuration.Default):
            value = self._default_config.get(key, None)
        return value

    def log_level(self, config_type=Configuration.Automatic):
        return self._lookup(self.log_level_name, config_type)

    def threads(self, config_type=Configuration.Automatic):
        """Number of workers used for independent work items, e.g. sweep points.

        The environment variable ``SIMGAME_THREADS`` takes precedence over both
        configuration files. Without any setting the available parallelism is used.

        Returns
        -------
        int
            The worker count, at least 1.
        """
        env_value = os.environ.get(self.threads_env, None)
        if env_value is not None and config_type == Configuration.Automatic:
            try:
                count = int(env_value)
                if count > 0:
                    return count
            except ValueError:
                pass
            logging.warning(f"simgame.Config: ignoring invalid {self.threads_env} value {env_value!r}")
        count = self._lookup(self.threads_name, config_type)
        if count is None:
            count = os.cpu_count() or 1
        return max(1, int(count))

    def decimal_digits(self, config_type=Configuration.Automatic):
        digits = self._lookup(self.decimal_digits_name, config_type)
        return 6 if digits is None else int(digits)

    def vertex_subset_limit(self, config_type=Configuration.Automatic):
        limit = self._lookup(self.vertex_subset_limit_name, config_type)
        return 20000 if limit is None else int(limit)

    def support_pair_limit(self, config_type=Configuration.Automatic):
        limit = self._lookup(self.support_pair_limit_name, config_type)
        return 255 if limit is None else int(limit)
