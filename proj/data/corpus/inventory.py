"""Small inventory tracker with restock rules."""

from collections import defaultdict
import json


class Item:
    def __init__(self, name, price, quantity=0):
        self.name = name
        self.price = float(price)
        self.quantity = quantity

    def total_value(self):
        return self.price * self.quantity

    def __repr__(self):
        return f"Item({self.name!r}, {self.price}, {self.quantity})"


class Inventory:
    def __init__(self):
        self.items = {}
        self.history = defaultdict(list)

    def add(self, item):
        if item.name in self.items:
            raise ValueError("duplicate item: " + item.name)
        self.items[item.name] = item

    def restock(self, name, amount, *, reason=None):
        item = self.items[name]
        item.quantity += amount
        self.history[name].append((amount, reason))
        return item.quantity

    def low_stock(self, threshold=5):
        return sorted(
            (i for i in self.items.values() if i.quantity < threshold),
            key=lambda i: i.quantity,
        )

    def to_json(self):
        data = {n: {"price": i.price, "qty": i.quantity} for n, i in self.items.items()}
        return json.dumps(data, indent=2)


if __name__ == "__main__":
    inv = Inventory()
    inv.add(Item("bolt", 0.25, 100))
    inv.add(Item("nut", "0.1", 3))
    inv.restock("nut", 50, reason="weekly")
    for item in inv.low_stock(threshold=10):
        print(item)
    print(inv.to_json())
