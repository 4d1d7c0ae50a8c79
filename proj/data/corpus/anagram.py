from collections import defaultdict
from itertools import permutations

WORDS = """listen silent enlist inlets google banana
tinsel stone tones notes onset""".split()


def signature(word):
    return "".join(sorted(word))


def groups(words):
    table = defaultdict(list)
    for w in words:
        table[signature(w)].append(w)
    return [sorted(g) for g in table.values() if len(g) > 1]


def brute(word, vocab):
    vocab = set(vocab)
    return sorted({"".join(p) for p in permutations(word)} & vocab - {word})


for g in sorted(groups(WORDS)):
    print(", ".join(g))
print(brute("stone", WORDS))
