"""Plain-text configuration files.

One point per line, ``LABEL = x y z``, labels A-F, X*, Y* required and G
optional.  ``#`` starts a comment; a comment of the form ``# name: ...`` sets
the configuration name.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional

from .errors import ConfigParseError
from .genericity import ANCHOR_LABELS, Configuration
from .geom import Point3

REQUIRED_LABELS = ANCHOR_LABELS + ("X*", "Y*")
OPTIONAL_LABELS = ("G",)

_NUMBER = r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?"
_LINE = re.compile(rf"^(?P<label>[A-Za-z*]+)\s*=\s*(?P<x>{_NUMBER})\s+(?P<y>{_NUMBER})\s+(?P<z>{_NUMBER})$")
_NAME = re.compile(r"^name:\s*(?P<name>.*\S)\s*$")


@dataclass
class ConfigFile:
    config: Configuration
    name: Optional[str] = None
    comments: list[str] = field(default_factory=list)

    def to_text(self) -> str:
        lines = []
        if self.name is not None:
            lines.append(f"# name: {self.name}")
        lines.extend(f"# {c}" if c else "#" for c in self.comments)
        for label, p in self.config.named_points().items():
            lines.append(f"{label} = " + " ".join(format(c, ".17g") for c in p))
        return "\n".join(lines) + "\n"


def parse_config(text: str) -> ConfigFile:
    points: dict[str, Point3] = {}
    name = None
    comments = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body, sep, comment = raw.partition("#")
        body = body.strip()
        if sep and not body:
            # whole-line comment; trailing comments on data lines are dropped
            comment = comment.strip()
            m = _NAME.match(comment)
            if m and name is None:
                name = m.group("name")
            else:
                comments.append(comment)
        if not body:
            continue
        m = _LINE.match(body)
        if m is None:
            raise ConfigParseError(f"expected 'LABEL = x y z', got {body!r}", lineno)
        label = m.group("label")
        if label not in REQUIRED_LABELS + OPTIONAL_LABELS:
            raise ConfigParseError(f"unknown label {label!r}", lineno)
        if label in points:
            raise ConfigParseError(f"duplicate label {label!r}", lineno)
        try:
            points[label] = Point3(float(m.group("x")), float(m.group("y")), float(m.group("z")))
        except ValueError as exc:
            raise ConfigParseError(str(exc), lineno) from exc
    missing = [label for label in REQUIRED_LABELS if label not in points]
    if missing:
        raise ConfigParseError(f"missing label(s): {', '.join(missing)}")
    cfg = Configuration(
        tuple(points[label] for label in ANCHOR_LABELS),
        points["X*"],
        points["Y*"],
        points.get("G"),
    )
    return ConfigFile(cfg, name, comments)


def read_config(path: str) -> ConfigFile:
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())
