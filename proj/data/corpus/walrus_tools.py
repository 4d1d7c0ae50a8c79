import re

LOG = """GET /index 200
POST /login 302
GET /missing 404
GET /index 200
"""


def summarize(text):
    counts = {}
    for line in text.splitlines():
        if (m := re.match(r"(\w+) (\S+) (\d+)", line)) is not None:
            method, path, status = m.groups()
            counts[status] = counts.get(status, 0) + 1
    return counts


def chunks(seq, n, /, *, pad=None):
    it = iter(seq)
    while chunk := [x for _, x in zip(range(n), it)]:
        if len(chunk) < n and pad is not None:
            chunk += [pad] * (n - len(chunk))
        yield chunk


print(summarize(LOG))
print(list(chunks(range(7), 3, pad=0)))
first, *middle, last = range(6)
print(first, middle, last, [*middle, *"ab"], {**{"a": 1}, "b": 2})
