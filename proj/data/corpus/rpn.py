import operator

OPS = {
    "+": operator.add,
    "-": operator.sub,
    "*": operator.mul,
    "/": operator.truediv,
    "^": operator.pow,
}


def evaluate(expression):
    stack = []
    for tok in expression.split():
        if tok in OPS:
            try:
                b, a = stack.pop(), stack.pop()
            except IndexError:
                raise ValueError("not enough operands for " + tok) from None
            stack.append(OPS[tok](a, b))
        else:
            stack.append(float(tok))
    if len(stack) != 1:
        raise ValueError("malformed expression")
    return stack[0]


tests = {
    "3 4 +": 7,
    "5 1 2 + 4 * + 3 -": 14,
    "2 3 ^": 8,
}
for expr, want in tests.items():
    got = evaluate(expr)
    print(expr, "=>", got, "ok" if got == want else "FAIL")
