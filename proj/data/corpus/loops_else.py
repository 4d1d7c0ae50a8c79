def find_pair(nums, target):
    seen = set()
    for n in nums:
        if target - n in seen:
            break
        seen.add(n)
    else:
        return None
    return target - n, n


def collatz_steps(n):
    steps = 0
    while n != 1:
        n = n // 2 if n % 2 == 0 else 3 * n + 1
        steps += 1
        if steps > 10_000:
            break
    else:
        return steps
    raise RuntimeError("did not converge")


def counter():
    count = 0

    def bump(by=1):
        nonlocal count
        count += by
        return count
    return bump


print(find_pair([2, 7, 11, 15], 9), find_pair([1, 2], 10))
print(max(range(1, 30), key=collatz_steps))
c = counter(); c(); c(5)
print(c())
