def c_to_f(c):
    return c * 9 / 5 + 32


def f_to_c(f):
    return (f - 32) * 5 / 9


def classify(temp_c):
    if temp_c < 0:
        return "freezing"
    elif temp_c < 10:
        return "cold"
    elif temp_c < 20:
        return "mild"
    elif temp_c < 30:
        return "warm"
    else:
        return "hot"


readings = [-5.5, 3, 12.25, 21, 35]
table = [(r, round(c_to_f(r), 1), classify(r)) for r in readings]
for celsius, fahrenheit, label in table:
    print("%6.1f C = %6.1f F (%s)" % (celsius, fahrenheit, label))

assert abs(f_to_c(c_to_f(37.0)) - 37.0) < 1e-9
