from collections import defaultdict
from functools import wraps


class EventBus:
    def __init__(self):
        self._handlers = defaultdict(list)

    def on(self, event):
        def register(fn):
            self._handlers[event].append(fn)
            return fn
        return register

    def emit(self, event, *args, **kwargs):
        results = []
        for handler in list(self._handlers.get(event, ())):
            results.append(handler(*args, **kwargs))
        return results


def logged(fn):
    @wraps(fn)
    def inner(*args, **kwargs):
        print("calling", fn.__name__, args, kwargs)
        return fn(*args, **kwargs)
    return inner


bus = EventBus()


@bus.on("greet")
@logged
def hello(name, punctuation="!"):
    return "hello " + name + punctuation


print(bus.emit("greet", "world", punctuation="?"))
