import time
from contextlib import contextmanager


class Timer:
    def __init__(self, label="block"):
        self.label = label
        self.elapsed = None

    def __enter__(self):
        self._start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        self.elapsed = time.perf_counter() - self._start
        print(f"{self.label}: {self.elapsed:.4f}s")
        return False


@contextmanager
def suppressed(*kinds):
    try:
        yield
    except kinds as err:
        print("suppressed", type(err).__name__)


with Timer("sum") as t, suppressed(ZeroDivisionError):
    total = sum(i * i for i in range(10000))
    ratio = total / 0

print(t.elapsed is not None)
