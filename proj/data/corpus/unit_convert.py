FACTORS = {
    "length": {"m": 1.0, "km": 1000.0, "cm": 0.01, "mi": 1609.344, "ft": 0.3048},
    "mass": {"kg": 1.0, "g": 0.001, "lb": 0.45359237, "oz": 0.028349523125},
}


def find_kind(unit):
    for kind, table in FACTORS.items():
        if unit in table:
            return kind
    raise KeyError(unit)


def convert(value, src, dst):
    kind = find_kind(src)
    if find_kind(dst) != kind:
        raise ValueError(f"cannot convert {src} to {dst}")
    return value * FACTORS[kind][src] / FACTORS[kind][dst]


cases = [(5, "km", "mi"), (12, "oz", "g"), (6, "ft", "cm")]
for v, s, d in cases:
    print(f"{v} {s} = {convert(v, s, d):.3f} {d}")
try:
    convert(1, "kg", "m")
except ValueError as e:
    print(e)
