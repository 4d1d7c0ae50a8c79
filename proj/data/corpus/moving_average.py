from collections import deque


def moving_average(values, window):
    if window < 1:
        raise ValueError("window must be >= 1")
    buf = deque(maxlen=window)
    total = 0.0
    for v in values:
        if len(buf) == window:
            total -= buf[0]
        buf.append(v)
        total += v
        yield total / len(buf)


def ewma(values, alpha=0.3):
    avg = None
    for v in values:
        avg = v if avg is None else alpha * v + (1 - alpha) * avg
        yield avg


series = [3, 5, 7, 6, 8, 12, 11, 9, 10]
print([round(x, 2) for x in moving_average(series, 3)])
print([round(x, 2) for x in ewma(series)])
