import pytest


def pytest_collection_modifyitems(config, items):
    # acceptance runs last so its PASS/FAIL summary ends the log
    items.sort(key=lambda it: "test_acceptance" in it.nodeid)
