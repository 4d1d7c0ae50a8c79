import random
import time


def retry(times=3, delay=0.0, exceptions=(Exception,)):
    def decorate(fn):
        def wrapper(*args, **kwargs):
            last = None
            for attempt in range(1, times + 1):
                try:
                    return fn(*args, **kwargs)
                except exceptions as exc:
                    last = exc
                    print(f"attempt {attempt} failed: {exc}")
                    if delay:
                        time.sleep(delay * attempt)
            raise RuntimeError("gave up") from last
        return wrapper
    return decorate


rng = random.Random(4)


@retry(times=5, exceptions=(ConnectionError,))
def flaky():
    if rng.random() < 0.6:
        raise ConnectionError("network down")
    return "payload"


print(flaky())
