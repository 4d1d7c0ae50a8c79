class Stack:
    """LIFO container."""

    def __init__(self):
        self._data = []

    def push(self, value):
        self._data.append(value)

    def pop(self):
        if not self._data:
            raise IndexError("pop from empty stack")
        return self._data.pop()

    def peek(self):
        return self._data[-1] if self._data else None

    def __len__(self):
        return len(self._data)


class Queue:
    def __init__(self):
        self._inbox = Stack()
        self._outbox = Stack()

    def enqueue(self, value):
        self._inbox.push(value)

    def dequeue(self):
        if not len(self._outbox):
            while len(self._inbox):
                self._outbox.push(self._inbox.pop())
        return self._outbox.pop()


q = Queue()
for i in range(5):
    q.enqueue(i * i)
print(q.dequeue(), q.dequeue())
