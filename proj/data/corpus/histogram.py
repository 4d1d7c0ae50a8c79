import random


def histogram(values, bins=10, lo=None, hi=None):
    lo = min(values) if lo is None else lo
    hi = max(values) if hi is None else hi
    width = (hi - lo) / bins or 1
    counts = [0] * bins
    for v in values:
        idx = min(int((v - lo) / width), bins - 1)
        counts[idx] += 1
    edges = [lo + i * width for i in range(bins + 1)]
    return counts, edges


def render(counts, edges, scale=50):
    peak = max(counts) or 1
    for count, left in zip(counts, edges):
        bar = "#" * round(count / peak * scale)
        print(f"{left:8.2f} | {bar} {count}")


rng = random.Random(42)
data = [rng.gauss(0, 1) for _ in range(500)]
render(*histogram(data, bins=12), scale=30)
