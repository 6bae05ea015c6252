"""Bundled example systems."""

import json
from importlib import resources

from ..descriptors import parse

NAMES = ("S_id", "S_const3", "S_shift3", "S_merge")


def path(name):
    return resources.files(__name__) / (name + ".json")


def load(name):
    if name not in NAMES:
        raise KeyError(name)
    return parse(json.loads(path(name).read_text()), default_name=name)


def load_all():
    return {name: load(name) for name in NAMES}
