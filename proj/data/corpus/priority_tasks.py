import heapq
import itertools


class TaskQueue:
    REMOVED = "<removed>"

    def __init__(self):
        self._heap = []
        self._entries = {}
        self._counter = itertools.count()

    def add(self, task, priority=0):
        if task in self._entries:
            self.remove(task)
        entry = [priority, next(self._counter), task]
        self._entries[task] = entry
        heapq.heappush(self._heap, entry)

    def remove(self, task):
        entry = self._entries.pop(task)
        entry[-1] = self.REMOVED

    def pop(self):
        while self._heap:
            priority, _, task = heapq.heappop(self._heap)
            if task is not self.REMOVED:
                del self._entries[task]
                return task, priority
        raise KeyError("pop from an empty queue")

    def __bool__(self):
        return bool(self._entries)


tq = TaskQueue()
tq.add("write", 5)
tq.add("test", 1)
tq.add("ship", 9)
tq.add("write", 0)
while tq:
    print(*tq.pop())
