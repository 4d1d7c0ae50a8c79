import asyncio


async def fetch(name, delay):
    await asyncio.sleep(delay)
    return {"name": name, "delay": delay}


async def gather_all(jobs):
    tasks = [asyncio.create_task(fetch(n, d)) for n, d in jobs]
    results = []
    for coro in asyncio.as_completed(tasks):
        results.append(await coro)
    return results


async def ticker(limit):
    for i in range(limit):
        yield i
        await asyncio.sleep(0)


async def main():
    jobs = [("a", 0.02), ("b", 0.01), ("c", 0.0)]
    done = await gather_all(jobs)
    print([r["name"] for r in done])
    async for tick in ticker(3):
        print("tick", tick)


if __name__ == "__main__":
    asyncio.run(main())
