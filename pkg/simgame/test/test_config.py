import os
import logging

import simgame as sg
from ..utils.config import Configuration


def test_config_singleton():
    cfg = sg.Config()
    assert id(cfg) == id(sg._config)


def test_default_config():
    assert sg._config._default_config is not None
    assert sg._config.log_level(Configuration.Default) == logging.getLevelName(logging.WARN)
    assert sg._config.decimal_digits(Configuration.Default) == 6
    assert sg._config.vertex_subset_limit(Configuration.Default) == 20000
    assert sg._config.support_pair_limit(Configuration.Default) == 255


def test_log_level():
    # the local config.json only exists when the tests run from the test folder
    local = sg._config.log_level(Configuration.Local)
    assert local in (None, logging.getLevelName(logging.DEBUG))
    expected = local if local is not None else logging.getLevelName(logging.WARN)
    assert sg._config.log_level(Configuration.Automatic) == expected


def test_set_log_level():
    levels = ["CRITICAL", "ERROR", "WARNING", "INFO", "DEBUG"]
    for l in levels:
        sg.set_log_level(l)
        logger = logging.getLogger()
        assert logging.getLevelName(logger.level) == l
    sg.set_log_level("WARNING")


def test_threads(monkeypatch):
    monkeypatch.setenv("SIMGAME_THREADS", "3")
    assert sg._config.threads() == 3
    assert sg._config.threads(Configuration.Default) == (os.cpu_count() or 1)
    monkeypatch.setenv("SIMGAME_THREADS", "many")
    assert sg._config.threads() >= 1
    monkeypatch.delenv("SIMGAME_THREADS")
    assert sg._config.threads() == (os.cpu_count() or 1)


def test_package_info():
    from .. import info
    assert info.NAME == "simgame"
    assert sg.__version__ == info.VERSION
    assert info.RELEASE.startswith(info.VERSION)
    assert info.HOMEPAGE == ""
