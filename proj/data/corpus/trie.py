class Trie:
    def __init__(self):
        self.children = {}
        self.terminal = False

    def insert(self, word):
        node = self
        for ch in word:
            node = node.children.setdefault(ch, Trie())
        node.terminal = True

    def _find(self, prefix):
        node = self
        for ch in prefix:
            node = node.children.get(ch)
            if node is None:
                return None
        return node

    def __contains__(self, word):
        node = self._find(word)
        return bool(node and node.terminal)

    def complete(self, prefix):
        node = self._find(prefix)
        if node is None:
            return []
        out, stack = [], [(node, prefix)]
        while stack:
            cur, text = stack.pop()
            if cur.terminal:
                out.append(text)
            for ch, child in cur.children.items():
                stack.append((child, text + ch))
        return sorted(out)


t = Trie()
for w in "car cart carbon cat dog door".split():
    t.insert(w)
print("cart" in t, "ca" in t, t.complete("car"), t.complete("do"))
