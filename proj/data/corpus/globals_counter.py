CALLS = 0
REGISTRY = []


def track(fn):
    REGISTRY.append(fn.__name__)
    return fn


@track
def increment(by=1):
    global CALLS
    CALLS += by
    return CALLS


@track
def reset():
    global CALLS
    previous, CALLS = CALLS, 0
    return previous


class Config:
    verbose = False
    levels = ("low", "mid", "high")

    @classmethod
    def toggle(cls):
        cls.verbose = not cls.verbose
        return cls.verbose

    @staticmethod
    def level(i):
        return Config.levels[max(0, min(i, len(Config.levels) - 1))]


increment(); increment(4)
print(CALLS, reset(), CALLS, REGISTRY)
print(Config.toggle(), Config.level(7), Config.level(-2))
del REGISTRY[:]
