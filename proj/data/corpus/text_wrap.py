def wrap(text, width=40):
    words = text.split()
    lines, current = [], []
    length = 0
    for word in words:
        extra = len(word) + (1 if current else 0)
        if length + extra > width and current:
            lines.append(" ".join(current))
            current, length = [word], len(word)
        else:
            current.append(word)
            length += extra
    if current:
        lines.append(" ".join(current))
    return lines


def justify(line, width):
    gaps = line.count(" ")
    if gaps == 0:
        return line.ljust(width)
    words = line.split(" ")
    spaces = width - sum(map(len, words))
    base, extra = divmod(spaces, gaps)
    out = ""
    for i, word in enumerate(words[:-1]):
        out += word + " " * (base + (1 if i < extra else 0))
    return out + words[-1]


sample = ("The quick brown fox jumps over the lazy dog and then "
          "keeps running far beyond the hills.")
for line in wrap(sample, 24):
    print("|" + justify(line, 24) + "|")
