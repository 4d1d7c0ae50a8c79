import json


def flatten(obj, prefix="", sep="."):
    out = {}
    if isinstance(obj, dict):
        for key, value in obj.items():
            out.update(flatten(value, f"{prefix}{sep}{key}" if prefix else str(key), sep))
    elif isinstance(obj, (list, tuple)):
        for i, value in enumerate(obj):
            out.update(flatten(value, f"{prefix}[{i}]", sep))
    else:
        out[prefix] = obj
    return out


def unflatten_keys(flat):
    return sorted({k.split(".")[0].split("[")[0] for k in flat})


doc = json.loads('{"a": {"b": 1, "c": [2, 3]}, "d": null, "e": "x"}')
flat = flatten(doc)
for key in sorted(flat):
    print(key, "=", flat[key])
print(unflatten_keys(flat))
