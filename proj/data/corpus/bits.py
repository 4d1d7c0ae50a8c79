def popcount(n):
    count = 0
    while n:
        n &= n - 1
        count += 1
    return count


def reverse_bits(n, width=8):
    out = 0
    for _ in range(width):
        out = (out << 1) | (n & 1)
        n >>= 1
    return out


def gray(n):
    return n ^ (n >> 1)


MASK = 0xFF
FLAGS = 0b1010_0101
PERMS = 0o755

print(popcount(FLAGS), bin(reverse_bits(0b0000_0111)), [gray(i) for i in range(8)])
print(hex(~FLAGS & MASK), PERMS, 1 << 10, -17 >> 2)
