import re
import sys
from collections import Counter

WORD = re.compile(r"[a-z']+")
STOP = {"the", "a", "an", "and", "or", "of", "to", "in"}


def tokens(text):
    for match in WORD.finditer(text.lower()):
        word = match.group(0).strip("'")
        if word and word not in STOP:
            yield word


def top_words(text, n=10):
    counts = Counter(tokens(text))
    return counts.most_common(n)


def main(argv):
    if len(argv) < 2:
        print("usage: wordfreq FILE", file=sys.stderr)
        return 2
    with open(argv[1], encoding="utf-8") as fh:
        text = fh.read()
    for word, count in top_words(text):
        print(f"{count:6d} {word}")
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
