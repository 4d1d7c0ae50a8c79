class Registry(type):
    plugins = {}

    def __new__(mcs, name, bases, namespace, **kwargs):
        cls = super().__new__(mcs, name, bases, namespace)
        if bases:
            key = kwargs.get("key", name.lower())
            mcs.plugins[key] = cls
        return cls

    def __init__(cls, name, bases, namespace, **kwargs):
        super().__init__(name, bases, namespace)


class Plugin(metaclass=Registry):
    def run(self, data):
        raise NotImplementedError


class Upper(Plugin, key="up"):
    def run(self, data):
        return data.upper()


class Reverse(Plugin):
    def run(self, data):
        return data[::-1]


for key, cls in sorted(Registry.plugins.items()):
    print(key, "->", cls().run("Plugin"))
