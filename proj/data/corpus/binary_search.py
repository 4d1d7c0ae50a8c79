def bisect_left(seq, target, lo=0, hi=None):
    if hi is None:
        hi = len(seq)
    while lo < hi:
        mid = (lo + hi) // 2
        if seq[mid] < target:
            lo = mid + 1
        else:
            hi = mid
    return lo


def search(seq, target):
    i = bisect_left(seq, target)
    return i if i < len(seq) and seq[i] == target else -1


def first_true(lo, hi, pred):
    """Smallest x in [lo, hi) with pred(x), or hi."""
    while lo < hi:
        mid = lo + (hi - lo) // 2
        if pred(mid):
            hi = mid
        else:
            lo = mid + 1
    return lo


data = sorted([9, 1, 7, 3, 5, 11])
assert search(data, 7) == 3
assert search(data, 4) == -1
print(first_true(0, 100, lambda x: x * x >= 50))
