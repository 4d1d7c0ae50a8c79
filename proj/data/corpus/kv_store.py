import json
import os
import tempfile


class KVStore:
    def __init__(self, path):
        self.path = path
        self.data = {}
        if os.path.exists(path):
            with open(path) as fh:
                self.data = json.load(fh)

    def __getitem__(self, key):
        return self.data[key]

    def __setitem__(self, key, value):
        self.data[key] = value
        self._flush()

    def __delitem__(self, key):
        del self.data[key]
        self._flush()

    def _flush(self):
        directory = os.path.dirname(os.path.abspath(self.path))
        fd, tmp = tempfile.mkstemp(dir=directory)
        with os.fdopen(fd, "w") as fh:
            json.dump(self.data, fh, sort_keys=True)
        os.replace(tmp, self.path)


store_path = os.path.join(tempfile.gettempdir(), "kv_demo.json")
store = KVStore(store_path)
store["counter"] = store.data.get("counter", 0) + 1
print("counter is", store["counter"])
