def neighbours(cell):
    r, c = cell
    for dr in (-1, 0, 1):
        for dc in (-1, 0, 1):
            if dr or dc:
                yield r + dr, c + dc


def step(live):
    counts = {}
    for cell in live:
        for n in neighbours(cell):
            counts[n] = counts.get(n, 0) + 1
    return {cell for cell, k in counts.items() if k == 3 or (k == 2 and cell in live)}


def render(live, rows, cols):
    return "\n".join(
        "".join("#" if (r, c) in live else "." for c in range(cols)) for r in range(rows)
    )


glider = {(0, 1), (1, 2), (2, 0), (2, 1), (2, 2)}
state = glider
for generation in range(4):
    state = step(state)
print(render(state, 6, 6))
