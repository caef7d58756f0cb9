"""Turn a dataclass of defaults into command-line overrides."""
from __future__ import annotations

import argparse
import json
from dataclasses import MISSING, asdict, fields


def parse_config(cls, description: str, argv=None):
    parser = argparse.ArgumentParser(description=description)
    for f in fields(cls):
        default = f.default if f.default is not MISSING else f.default_factory()
        flag = "--" + f.name.replace("_", "-")
        if isinstance(default, bool):
            parser.add_argument(flag, action="store_true", default=default)
        elif isinstance(default, (list, tuple)):
            parser.add_argument(flag, type=json.loads, default=default,
                                help=f"JSON list (default {list(default)})")
        else:
            parser.add_argument(flag, type=type(default), default=default)
    args = parser.parse_args(argv)
    cfg = cls(**{f.name: getattr(args, f.name) for f in fields(cls)})
    print("# config " + json.dumps(asdict(cfg)))
    return cfg
