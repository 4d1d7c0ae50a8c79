total = 1 + \
    2 + \
        3


def long_condition(a, b, c):
    if a > 0 and \
            b > 0:
        return a + \
            b
    elif (c > 0 and
          a < 0):
        return c
    return 0


values = [
    1, 2,
        3,
  4,
]
print(total, long_condition(1, 2, 3), long_condition(-1, 0, 4), values)
