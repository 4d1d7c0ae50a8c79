import os
from pathlib import Path

DEFAULTS = {
    "host": "localhost",
    "port": 8080,
    "debug": False,
}


def parse_line(line):
    line = line.split("#", 1)[0].strip()
    if not line:
        return None
    key, sep, value = line.partition("=")
    if not sep:
        raise SyntaxError(f"bad config line: {line!r}")
    return key.strip(), value.strip()


def coerce(value):
    lowered = value.lower()
    if lowered in ("true", "yes", "on"):
        return True
    if lowered in ("false", "no", "off"):
        return False
    try:
        return int(value)
    except ValueError:
        return value


def load(path=None):
    config = dict(DEFAULTS)
    path = Path(path or os.environ.get("APP_CONFIG", "app.conf"))
    if path.exists():
        for raw in path.read_text().splitlines():
            parsed = parse_line(raw)
            if parsed is not None:
                key, value = parsed
                config[key] = coerce(value)
    return config
